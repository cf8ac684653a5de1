#pragma once

// Ghost components and the universal Witt addition, multiplication and
// negation polynomials for p-typical Witt vectors, with a text cache format.
//
// Variables are X_0..X_{n-1}, Y_0..Y_{n-1} (index v < n is X_v, otherwise
// Y_{v-n}).

#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "finite_field.hpp"
#include "multipoly.hpp"

namespace wittcd {

/// Raised when an exact division by p^i fails while solving the ghost
/// equations. This would contradict integrality of the Witt polynomials.
class IntegralityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline std::vector<std::string> witt_variable_names(unsigned n) {
  std::vector<std::string> names;
  for (unsigned i = 0; i < n; ++i) names.push_back("X" + std::to_string(i));
  for (unsigned i = 0; i < n; ++i) names.push_back("Y" + std::to_string(i));
  return names;
}

/// w_m = Σ_{i<=m} p^i V_i^{p^{m-i}} in the variables starting at `offset`.
inline MultiPoly ghost_component(std::uint32_t p, unsigned m, std::size_t nvars, std::size_t offset) {
  MultiPoly w(nvars);
  BigInt pi = 1;
  for (unsigned i = 0; i <= m; ++i) {
    std::uint64_t e = detail::upow(p, m - i);
    w = w + MultiPoly::variable(nvars, offset + i, static_cast<std::uint32_t>(e)).scaled(pi);
    pi *= p;
  }
  return w;
}

/// Ghost polynomials w_0..w_{n-1} in X (the first n of 2n variables).
inline std::vector<MultiPoly> ghost_polys(std::uint32_t p, unsigned n) {
  if (n < 1) throw std::invalid_argument("ghost_polys: n must be >= 1");
  std::vector<MultiPoly> w;
  for (unsigned m = 0; m < n; ++m) w.push_back(ghost_component(p, m, 2 * n, 0));
  return w;
}

struct WittPolyCache {
  std::uint32_t p = 0;
  unsigned n = 0;
  std::vector<MultiPoly> ghost, sum, product, neg;

  bool operator==(const WittPolyCache&) const = default;
};

namespace detail {

// Solve w_i(Z) = target_i for Z recursively:
//   Z_i = (target_i - Σ_{j<i} p^j Z_j^{p^{i-j}}) / p^i.
inline std::vector<MultiPoly> solve_ghost_equations(std::uint32_t p, const std::vector<MultiPoly>& targets,
                                                    const char* kind) {
  std::vector<MultiPoly> z, powered;  // powered[j] = Z_j^{p^{i-j}} at stage i
  BigInt pi = 1;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (auto& q : powered) q = q.pow(p);
    MultiPoly rhs = targets[i];
    BigInt pj = 1;
    for (std::size_t j = 0; j < i; ++j) {
      rhs = rhs - powered[j].scaled(pj);
      pj *= p;
    }
    try {
      z.push_back(rhs.divided_exactly(pi));
    } catch (const std::domain_error&) {
      throw IntegralityError(std::string("Witt polynomial ") + kind + "_" + std::to_string(i) +
                             " is not integral (p = " + std::to_string(p) + ")");
    }
    powered.push_back(z.back());
    pi *= p;
  }
  return z;
}

}  // namespace detail

/// Universal sum, product and negation polynomials S_i, P_i, N_i for i < n.
inline WittPolyCache universal_polys(std::uint32_t p, unsigned n) {
  if (n < 1) throw std::invalid_argument("universal_polys: n must be >= 1");
  if (!detail::is_prime(p)) throw std::invalid_argument("universal_polys: p must be prime");
  WittPolyCache c;
  c.p = p;
  c.n = n;
  c.ghost = ghost_polys(p, n);
  std::vector<MultiPoly> wy, sums, prods, negs;
  for (unsigned m = 0; m < n; ++m) {
    wy.push_back(ghost_component(p, m, 2 * n, n));
    sums.push_back(c.ghost[m] + wy[m]);
    prods.push_back(c.ghost[m] * wy[m]);
    negs.push_back(-c.ghost[m]);
  }
  c.sum = detail::solve_ghost_equations(p, sums, "S");
  c.product = detail::solve_ghost_equations(p, prods, "P");
  c.neg = detail::solve_ghost_equations(p, negs, "N");
  return c;
}

/// Checks w_i(S) = w_i(X) + w_i(Y), w_i(P) = w_i(X)·w_i(Y) and
/// w_i(N) = -w_i(X) as polynomial identities, by substitution into the
/// ghost polynomials (binary powering, independent of the solver's
/// iterated p-th powers). Returns the indices that fail (empty on success).
inline std::vector<std::string> ghost_identity_failures(const WittPolyCache& c) {
  std::vector<std::string> failures;
  const std::size_t nv = 2 * c.n;
  auto pad = [&](const std::vector<MultiPoly>& z) {
    std::vector<MultiPoly> v = z;
    for (unsigned i = 0; i < c.n; ++i) v.push_back(MultiPoly(nv));
    return v;
  };
  const auto zs = pad(c.sum), zp = pad(c.product), zn = pad(c.neg);
  for (unsigned m = 0; m < c.n; ++m) {
    const MultiPoly wy = ghost_component(c.p, m, nv, c.n);
    if (!(c.ghost[m].substitute(zs) - c.ghost[m] - wy).is_zero()) failures.push_back("S" + std::to_string(m));
    if (!(c.ghost[m].substitute(zp) - c.ghost[m] * wy).is_zero()) failures.push_back("P" + std::to_string(m));
    if (!(c.ghost[m].substitute(zn) + c.ghost[m]).is_zero()) failures.push_back("N" + std::to_string(m));
  }
  return failures;
}

// ---------------------------------------------------------------------------
// Cache file: one polynomial per line,
//   p n kind index : exponent-vector coefficient ; ...
// kinds in order W (ghost), S, P, N.
// ---------------------------------------------------------------------------

inline std::string serialize_cache(const WittPolyCache& c) {
  std::ostringstream os;
  auto emit = [&](const char* kind, const std::vector<MultiPoly>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      os << c.p << ' ' << c.n << ' ' << kind << ' ' << i << " :";
      std::string body = v[i].serialize();
      if (!body.empty()) os << ' ' << body;
      os << '\n';
    }
  };
  emit("W", c.ghost);
  emit("S", c.sum);
  emit("P", c.product);
  emit("N", c.neg);
  return os.str();
}

inline WittPolyCache parse_cache(const std::string& text) {
  WittPolyCache c;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      return std::invalid_argument("cache line " + std::to_string(lineno) + ": " + why);
    };
    auto colon = line.find(" :");
    if (colon == std::string::npos) throw fail("missing ':'");
    std::istringstream head(line.substr(0, colon));
    std::uint32_t p;
    unsigned n;
    std::string kind;
    std::size_t index;
    if (!(head >> p >> n >> kind >> index)) throw fail("malformed header");
    if (c.n == 0) {
      c.p = p;
      c.n = n;
    } else if (c.p != p || c.n != n) {
      throw fail("inconsistent p or n");
    }
    std::vector<MultiPoly>* target = nullptr;
    if (kind == "W") target = &c.ghost;
    else if (kind == "S") target = &c.sum;
    else if (kind == "P") target = &c.product;
    else if (kind == "N") target = &c.neg;
    else throw fail("unknown kind '" + kind + "'");
    if (index != target->size()) throw fail("out-of-order index");
    std::vector<MultiPoly::Term> terms;
    std::string body = line.substr(colon + 2);
    std::istringstream bs(body);
    std::string chunk;
    while (std::getline(bs, chunk, ';')) {
      std::istringstream ts(chunk);
      std::string expv, coef;
      if (!(ts >> expv >> coef)) {
        if (chunk.find_first_not_of(' ') == std::string::npos) continue;
        throw fail("malformed term");
      }
      Monomial m;
      std::istringstream es(expv);
      std::string e;
      while (std::getline(es, e, ',')) m.push_back(static_cast<std::uint32_t>(std::stoul(e)));
      if (m.size() != 2 * n) throw fail("exponent vector has wrong length");
      terms.push_back({std::move(m), BigInt(coef)});
    }
    target->push_back(MultiPoly::from_terms(2 * n, std::move(terms)));
  }
  return c;
}

inline std::filesystem::path cache_file_path(const std::filesystem::path& dir, std::uint32_t p, unsigned n) {
  return dir / ("witt_p" + std::to_string(p) + "_n" + std::to_string(n) + ".txt");
}

// ---------------------------------------------------------------------------
// Evaluation of reduced polynomials in a finite field
// ---------------------------------------------------------------------------

/// A polynomial with coefficients reduced mod p, ready for evaluation in
/// F_{p^k}. Monomials are lists of (variable, exponent) pairs.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  CompiledPoly(const MultiPoly& f, std::uint32_t p, unsigned n) : n_(n) {
    for (const auto& t : f.terms()) {
      BigInt c = mod_floor(t.coefficient, p);
      if (c == 0) continue;
      Term term{static_cast<std::uint32_t>(c), {}};
      for (std::size_t v = 0; v < t.exponents.size(); ++v)
        if (t.exponents[v]) term.factors.push_back({static_cast<std::uint32_t>(v), t.exponents[v]});
      terms_.push_back(std::move(term));
    }
  }

  std::size_t size() const { return terms_.size(); }

  /// x, y hold field elements for X_0.., Y_0.. (only the needed prefix).
  FiniteField::Element evaluate(const FiniteField& F, const std::vector<FiniteField::Element>& x,
                                const std::vector<FiniteField::Element>& y) const {
    const std::uint64_t order = F.order() - 1;
    FiniteField::Element acc = 0;
    for (const auto& t : terms_) {
      std::uint64_t e = 0;
      bool vanishes = false;
      for (const auto& [v, k] : t.factors) {
        FiniteField::Element val = v < n_ ? x[v] : y[v - n_];
        if (val == 0) {
          vanishes = true;
          break;
        }
        e = (e + std::uint64_t(F.log(val)) * k) % order;
      }
      if (vanishes) continue;
      acc = F.add(acc, F.mul(t.coefficient, F.exp(e)));
    }
    return acc;
  }

 private:
  struct Term {
    std::uint32_t coefficient;  // in [1, p)
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;
  };
  unsigned n_ = 0;
  std::vector<Term> terms_;
};

/// Process-wide memo of universal polynomials; a cache for (p, n) also
/// serves every shorter length.
inline std::shared_ptr<const WittPolyCache> witt_polys(std::uint32_t p, unsigned n) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<const WittPolyCache>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(p);
  if (it != memo.end() && it->second->n >= n) return it->second;
  auto c = std::make_shared<const WittPolyCache>(universal_polys(p, n));
  memo[p] = c;
  return c;
}

}  // namespace wittcd
