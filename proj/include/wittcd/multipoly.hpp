#pragma once

// Sparse multivariate polynomials over Z with exact big-integer
// coefficients. Terms are kept in graded-lexicographic order, leading term
// first, with no zero coefficients stored.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace wittcd {

using Monomial = std::vector<std::uint32_t>;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : m) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Graded-lex comparison: true if a precedes b (higher total degree first,
/// then lexicographically larger exponent vector first).
inline bool grlex_before(const Monomial& a, const Monomial& b) {
  const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da > db;
  return a > b;
}

class MultiPoly {
 public:
  struct Term {
    Monomial exponents;
    BigInt coefficient;
    bool operator==(const Term&) const = default;
  };

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const BigInt& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_.push_back({Monomial(nvars, 0), c});
    return p;
  }
  static MultiPoly variable(std::size_t nvars, std::size_t v, std::uint32_t power = 1) {
    if (v >= nvars) throw std::invalid_argument("MultiPoly: variable index out of range");
    MultiPoly p(nvars);
    Monomial m(nvars, 0);
    m[v] = power;
    p.terms_.push_back({std::move(m), 1});
    return p;
  }
  /// Build from arbitrary (possibly repeated, possibly zero) terms.
  static MultiPoly from_terms(std::size_t nvars, std::vector<Term> terms) {
    std::unordered_map<Monomial, BigInt, MonomialHash> acc;
    for (auto& t : terms) {
      if (t.exponents.size() != nvars) throw std::invalid_argument("MultiPoly: exponent vector length mismatch");
      acc[std::move(t.exponents)] += t.coefficient;
    }
    return collect(nvars, std::move(acc));
  }

  std::size_t variable_count() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  MultiPoly operator+(const MultiPoly& o) const { return merge(o, 1); }
  MultiPoly operator-(const MultiPoly& o) const { return merge(o, -1); }
  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coefficient = -t.coefficient;
    return r;
  }

  MultiPoly operator*(const MultiPoly& o) const {
    check_compatible(o);
    std::unordered_map<Monomial, BigInt, MonomialHash> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    Monomial m(nvars_);
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) {
        for (std::size_t v = 0; v < nvars_; ++v) m[v] = a.exponents[v] + b.exponents[v];
        auto [it, inserted] = acc.try_emplace(m);
        if (inserted)
          it->second = a.coefficient * b.coefficient;
        else
          it->second += a.coefficient * b.coefficient;
      }
    return collect(nvars_, std::move(acc));
  }

  MultiPoly scaled(const BigInt& s) const {
    MultiPoly r(nvars_);
    if (s == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coefficient *= s;
    return r;
  }

  /// Exact division of every coefficient; throws if any remainder is nonzero.
  MultiPoly divided_exactly(const BigInt& d) const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) {
      BigInt q, rem;
      boost::multiprecision::divide_qr(t.coefficient, d, q, rem);
      if (rem != 0) throw std::domain_error("MultiPoly: inexact division");
      t.coefficient = std::move(q);
    }
    return r;
  }

  MultiPoly pow(std::uint64_t e) const {
    MultiPoly result = constant(nvars_, 1), base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// Substitute values[v] for variable v (all values share a variable set).
  MultiPoly substitute(const std::vector<MultiPoly>& values) const {
    if (values.size() != nvars_) throw std::invalid_argument("MultiPoly: substitution arity mismatch");
    if (values.empty()) return *this;
    const std::size_t nv = values.front().variable_count();
    MultiPoly out(nv);
    for (const auto& t : terms_) {
      MultiPoly term = constant(nv, t.coefficient);
      for (std::size_t v = 0; v < nvars_; ++v)
        if (t.exponents[v]) term = term * values[v].pow(t.exponents[v]);
      out = out + term;
    }
    return out;
  }

  bool coefficients_divisible_by(const BigInt& d) const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.coefficient % d == 0; });
  }

  bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  /// `e0,e1,... c ; e0,e1,... c ; ...` in term order.
  std::string serialize() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) os << " ; ";
      const auto& t = terms_[i];
      for (std::size_t v = 0; v < nvars_; ++v) os << (v ? "," : "") << t.exponents[v];
      os << ' ' << t.coefficient;
    }
    return os.str();
  }

  /// Human-readable form with the given variable names.
  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      BigInt c = t.coefficient;
      if (i) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      c = abs(c);
      bool constant_term = std::all_of(t.exponents.begin(), t.exponents.end(), [](auto e) { return e == 0; });
      if (c != 1 || constant_term) os << c;
      bool first = c == 1;
      for (std::size_t v = 0; v < nvars_; ++v) {
        if (!t.exponents[v]) continue;
        if (!first) os << '*';
        first = false;
        os << names[v];
        if (t.exponents[v] > 1) os << '^' << t.exponents[v];
      }
    }
    return os.str();
  }

 private:
  static MultiPoly collect(std::size_t nvars, std::unordered_map<Monomial, BigInt, MonomialHash> acc) {
    MultiPoly r(nvars);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) r.terms_.push_back({m, std::move(c)});
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return grlex_before(a.exponents, b.exponents); });
    return r;
  }

  void check_compatible(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("MultiPoly: variable sets differ");
  }

  MultiPoly merge(const MultiPoly& o, int sign) const {
    check_compatible(o);
    MultiPoly r(nvars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && grlex_before(terms_[i].exponents, o.terms_[j].exponents))) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || grlex_before(o.terms_[j].exponents, terms_[i].exponents)) {
        Term t = o.terms_[j++];
        if (sign < 0) t.coefficient = -t.coefficient;
        r.terms_.push_back(std::move(t));
      } else {
        BigInt c = sign > 0 ? terms_[i].coefficient + o.terms_[j].coefficient
                            : terms_[i].coefficient - o.terms_[j].coefficient;
        if (c != 0) r.terms_.push_back({terms_[i].exponents, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

}  // namespace wittcd
