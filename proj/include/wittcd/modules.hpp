#pragma once

// Finite abelian p-groups with an action of the multiplicative monoid of a
// perfect ring R, and the four completeness conditions: I-completeness,
// p-divisibility of the additivity defect, additivity mod p, and extension
// of the action to W_k(R).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "comparison.hpp"
#include "linalg.hpp"
#include "monoid_algebra.hpp"
#include "perfect_ring.hpp"

namespace wittcd {

/// r×r matrix, row-major, column j = image of generator j; entry (i, j) is
/// reduced mod d_i.
using EndoMatrix = std::vector<std::int64_t>;

/// Arithmetic in End(⊕ Z/d_i).
class EndoRing {
 public:
  explicit EndoRing(std::vector<std::int64_t> factors) : d_(std::move(factors)) {}

  std::size_t rank() const { return d_.size(); }
  const std::vector<std::int64_t>& factors() const { return d_; }

  EndoMatrix zero() const { return EndoMatrix(rank() * rank(), 0); }
  EndoMatrix identity() const {
    EndoMatrix m = zero();
    for (std::size_t i = 0; i < rank(); ++i) m[i * rank() + i] = 1 % d_[i];
    return m;
  }
  EndoMatrix normalize(EndoMatrix m) const {
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) {
        auto& v = m[i * rank() + j];
        v = ((v % d_[i]) + d_[i]) % d_[i];
      }
    return m;
  }
  /// Column j must be d_j-torsion.
  bool respects_relations(const EndoMatrix& m) const {
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j)
        if ((m[i * rank() + j] * d_[j]) % d_[i] != 0) return false;
    return true;
  }
  EndoMatrix add(const EndoMatrix& a, const EndoMatrix& b) const {
    EndoMatrix c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return normalize(std::move(c));
  }
  EndoMatrix sub(const EndoMatrix& a, const EndoMatrix& b) const {
    EndoMatrix c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return normalize(std::move(c));
  }
  EndoMatrix scale(const EndoMatrix& a, std::int64_t s) const {
    EndoMatrix c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * (s % d_[i / rank()]);
    return normalize(std::move(c));
  }
  /// Composition a ∘ b.
  EndoMatrix mul(const EndoMatrix& a, const EndoMatrix& b) const {
    const std::size_t r = rank();
    EndoMatrix c(r * r, 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) {
        const std::int64_t x = a[i * r + k];
        if (!x) continue;
        for (std::size_t j = 0; j < r; ++j) c[i * r + j] = (c[i * r + j] + x * b[k * r + j]) % d_[i];
      }
    return c;
  }
  EndoMatrix pow(const EndoMatrix& a, std::uint64_t e) const {
    EndoMatrix r = identity();
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  bool is_zero(const EndoMatrix& m) const {
    return std::all_of(m.begin(), m.end(), [](std::int64_t v) { return v == 0; });
  }

  /// Every endomorphism: entry (i, j) ranges over the multiples of
  /// d_i / gcd(d_i, d_j) in [0, d_i).
  std::vector<EndoMatrix> all(std::uint64_t cap) const {
    const std::size_t r = rank();
    std::vector<std::int64_t> step(r * r), count(r * r);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        const std::int64_t g = std::gcd(d_[i], d_[j]);
        step[i * r + j] = d_[i] / g;
        count[i * r + j] = g;
        total *= static_cast<std::uint64_t>(g);
        if (total > cap) throw std::invalid_argument("EndoRing: endomorphism count exceeds the cap");
      }
    std::vector<EndoMatrix> out;
    out.reserve(total);
    for (std::uint64_t x = 0; x < total; ++x) {
      EndoMatrix m(r * r);
      std::uint64_t y = x;
      for (std::size_t k = 0; k < r * r; ++k) {
        m[k] = static_cast<std::int64_t>(y % static_cast<std::uint64_t>(count[k])) * step[k];
        y /= static_cast<std::uint64_t>(count[k]);
      }
      out.push_back(std::move(m));
    }
    return out;
  }

  GroupEndomorphism to_group_endomorphism(const EndoMatrix& m) const {
    const std::size_t r = rank();
    IntMatrix M(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) M(i, j) = m[i * r + j];
    return GroupEndomorphism(IntVector(d_.begin(), d_.end()), M);
  }

 private:
  std::vector<std::int64_t> d_;
};

/// A finite abelian p-group ⊕ Z/d_i with an action ρ of (R,·) by
/// endomorphisms, indexed by the elements of R.
class ModuleWithAction {
 public:
  ModuleWithAction(PerfectRing R, std::vector<std::int64_t> factors, std::vector<EndoMatrix> rho)
      : R_(std::move(R)), endo_(std::move(factors)), rho_(std::move(rho)) {
    const auto p = static_cast<std::int64_t>(R_.characteristic());
    for (std::size_t i = 0; i < endo_.rank(); ++i) {
      std::int64_t d = endo_.factors()[i];
      if (d < p) throw std::invalid_argument("ModuleWithAction: factors must be nontrivial p-powers");
      while (d % p == 0) d /= p;
      if (d != 1) throw std::invalid_argument("ModuleWithAction: factors must be p-powers");
      if (i > 0 && endo_.factors()[i] < endo_.factors()[i - 1])
        throw std::invalid_argument("ModuleWithAction: factors must form a divisibility chain");
    }
    if (rho_.size() != R_.size()) throw std::invalid_argument("ModuleWithAction: need one endomorphism per element");
    for (auto& m : rho_) {
      if (m.size() != endo_.rank() * endo_.rank()) throw std::invalid_argument("ModuleWithAction: matrix shape");
      m = endo_.normalize(m);
      if (!endo_.respects_relations(m)) throw std::invalid_argument("ModuleWithAction: matrix ignores the relations");
    }
    if (rho_[R_.one()] != endo_.identity()) throw std::invalid_argument("ModuleWithAction: 1 does not act as identity");
    for (PerfectRing::Element r = 0; r < R_.size(); ++r)
      for (PerfectRing::Element s = 0; s < R_.size(); ++s)
        if (rho_[R_.mul(r, s)] != endo_.mul(rho_[r], rho_[s]))
          throw std::invalid_argument("ModuleWithAction: action is not multiplicative");
  }

  const PerfectRing& ring() const { return R_; }
  const EndoRing& endomorphisms() const { return endo_; }
  const std::vector<std::int64_t>& factors() const { return endo_.factors(); }
  const std::vector<EndoMatrix>& rho() const { return rho_; }
  const EndoMatrix& rho(PerfectRing::Element r) const { return rho_[r]; }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (auto d : factors()) o *= static_cast<std::uint64_t>(d);
    return o;
  }
  /// Least k with p^k M = 0.
  unsigned exponent() const {
    unsigned k = 0;
    if (factors().empty()) return 0;
    std::int64_t d = factors().back();
    while (d > 1) {
      d /= R_.characteristic();
      ++k;
    }
    return k;
  }

  /// The action of an element v of Z[R].
  EndoMatrix act(const IntVector& v) const {
    EndoMatrix acc = endo_.zero();
    for (std::size_t m = 0; m < v.size(); ++m)
      if (v[m] != 0) {
        const std::int64_t c = static_cast<std::int64_t>(mod_floor(v[m], BigInt(factors().empty() ? 1 : factors().back())));
        acc = endo_.add(acc, endo_.scale(rho_[m], c));
      }
    return acc;
  }

  bool operator==(const ModuleWithAction& o) const { return factors() == o.factors() && rho_ == o.rho_; }
  bool operator<(const ModuleWithAction& o) const {
    return std::tie(factors(), rho_) < std::tie(o.factors(), o.rho_);
  }

 private:
  PerfectRing R_;
  EndoRing endo_;
  std::vector<EndoMatrix> rho_;
};

/// Data that depends only on R: the augmentation ideal of Z[(R,·)] and the
/// kernels of Z[R] -> W_k(R).
class ClassifierContext {
 public:
  explicit ClassifierContext(PerfectRing R)
      : R_(std::move(R)), A_(FiniteCommMonoid::multiplicative(R_)), I_(augmentation(A_, R_)) {}

  const PerfectRing& ring() const { return R_; }
  const AugmentationIdeal& ideal() const { return I_; }

  const WittTarget& witt(unsigned k) {
    auto it = witt_.find(k);
    if (it == witt_.end()) it = witt_.emplace(k, witt_target(R_, k)).first;
    return it->second;
  }
  /// ker(Z[R] -> W_k(R)), [r] ↦ τ(r).
  const Lattice& witt_kernel(unsigned k) {
    auto it = kernels_.find(k);
    if (it == kernels_.end()) {
      const WittTarget& t = witt(k);
      IntMatrix T(R_.size(), R_.dimension());
      for (std::size_t r = 0; r < R_.size(); ++r)
        for (std::size_t j = 0; j < R_.dimension(); ++j) T(r, j) = t.teich[r][j];
      it = kernels_.emplace(k, kernel_mod(T, t.modulus)).first;
    }
    return it->second;
  }

 private:
  PerfectRing R_;
  MonoidAlgebra A_;
  AugmentationIdeal I_;
  std::map<unsigned, WittTarget> witt_;
  std::map<unsigned, Lattice> kernels_;
};

namespace detail {

inline Lattice relation_lattice(const std::vector<std::int64_t>& d) {
  Lattice L(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    IntVector v(d.size());
    v[i] = d[i];
    L.add(std::move(v));
  }
  return L;
}

inline IntVector apply_endo(const EndoMatrix& m, const IntVector& x) {
  const std::size_t r = x.size();
  IntVector y(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) y[i] += m[i * r + j] * x[j];
  return y;
}

}  // namespace detail

/// I^j M for j = 0, 1, ... stabilizes at some N; M is I-complete iff N = 0.
inline bool check_I_complete(const ModuleWithAction& M, const AugmentationIdeal& I) {
  const std::size_t r = M.factors().size();
  if (r == 0) return true;
  std::vector<EndoMatrix> acts;
  for (const auto& g : I.kernel.generators()) acts.push_back(M.act(g));
  const Lattice rel = detail::relation_lattice(M.factors());
  Lattice N = Lattice::full(r);
  for (;;) {
    Lattice next = rel;
    for (const auto& a : acts)
      for (const auto& x : N.generators()) next.add(detail::apply_endo(a, x));
    if (next == N) break;
    N = std::move(next);
  }
  return N == rel;
}

/// ρ_r + ρ_s - ρ_{r+s} is divisible by p for all r, s.
inline bool check_p_divisibility(const ModuleWithAction& M) {
  if (M.factors().empty()) return true;
  const auto& R = M.ring();
  const auto& E = M.endomorphisms();
  const BigInt p = R.characteristic();
  for (PerfectRing::Element r = 0; r < R.size(); ++r)
    for (PerfectRing::Element s = r; s < R.size(); ++s) {
      const EndoMatrix defect = E.sub(E.add(M.rho(r), M.rho(s)), M.rho(R.add(r, s)));
      if (!hom_divisible_by_p(E.to_group_endomorphism(defect), p)) return false;
    }
  return true;
}

/// The induced actions on M/pM and on M[p], as F_p-matrices indexed by R.
inline std::vector<EndoMatrix> action_mod_p(const ModuleWithAction& M) {
  const std::int64_t p = M.ring().characteristic();
  std::vector<EndoMatrix> out;
  for (const auto& m : M.rho()) {
    EndoMatrix q(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) q[i] = m[i] % p;
    out.push_back(std::move(q));
  }
  return out;
}
inline std::vector<EndoMatrix> action_on_p_torsion(const ModuleWithAction& M) {
  const std::int64_t p = M.ring().characteristic();
  const auto& d = M.factors();
  const std::size_t r = d.size();
  std::vector<EndoMatrix> out;
  for (const auto& m : M.rho()) {
    // basis (d_j/p) e_j of M[p]
    EndoMatrix q(m.size());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        const std::int64_t v = ((d[j] / p) * m[i * r + j]) % d[i];
        if (v % (d[i] / p) != 0) throw std::logic_error("action_on_p_torsion: image leaves M[p]");
        q[i * r + j] = (v / (d[i] / p)) % p;
      }
    out.push_back(std::move(q));
  }
  return out;
}

/// ρ is additive with ρ_0 = 0 on both M/pM and M[p].
inline bool check_mod_p_additivity(const ModuleWithAction& M) {
  if (M.factors().empty()) return true;
  const auto& R = M.ring();
  EndoRing Fp(std::vector<std::int64_t>(M.factors().size(), R.characteristic()));
  for (const auto& acts : {action_mod_p(M), action_on_p_torsion(M)}) {
    if (!Fp.is_zero(acts[R.zero()])) return false;
    for (PerfectRing::Element r = 0; r < R.size(); ++r)
      for (PerfectRing::Element s = r; s < R.size(); ++s)
        if (Fp.add(acts[r], acts[s]) != acts[R.add(r, s)]) return false;
  }
  return true;
}

/// An action of W_k(R) given on the additive generators τ(β_j).
struct WittModuleStructure {
  unsigned k = 0;
  std::vector<EndoMatrix> basis_action;
};

/// Whether ker(Z[R] -> W_k(R)) annihilates M, with p^k M = 0 minimal. On
/// success, the W_k(R)-action on the basis τ(β_j), verified to restrict back
/// to ρ along τ.
inline std::optional<WittModuleStructure> witt_extension(const ModuleWithAction& M, ClassifierContext& ctx) {
  const auto& R = M.ring();
  if (M.factors().empty()) return WittModuleStructure{0, std::vector<EndoMatrix>(R.dimension())};
  const unsigned k = M.exponent();
  const Lattice& K = ctx.witt_kernel(k);
  for (const auto& g : K.generators())
    if (!M.endomorphisms().is_zero(M.act(g))) return std::nullopt;
  WittModuleStructure w;
  w.k = k;
  for (auto beta : R.additive_basis()) w.basis_action.push_back(M.rho(beta));
  const WittTarget& t = ctx.witt(k);
  const auto& E = M.endomorphisms();
  for (PerfectRing::Element r = 0; r < R.size(); ++r) {
    EndoMatrix acc = E.zero();
    for (std::size_t j = 0; j < w.basis_action.size(); ++j)
      acc = E.add(acc, E.scale(w.basis_action[j], t.teich[r][j]));
    if (acc != M.rho(r)) throw std::logic_error("witt_extension: extended action does not restrict to ρ");
  }
  return w;
}

inline bool check_witt_extension(const ModuleWithAction& M, ClassifierContext& ctx) {
  return witt_extension(M, ctx).has_value();
}

struct ClassificationReport {
  bool i_complete = false;
  bool p_divisible = false;
  bool mod_p_additive = false;
  bool witt_extension = false;
  bool agree() const {
    return i_complete == p_divisible && p_divisible == mod_p_additive && mod_p_additive == witt_extension;
  }
};

inline ClassificationReport classify(const ModuleWithAction& M, ClassifierContext& ctx) {
  ClassificationReport r;
  r.i_complete = check_I_complete(M, ctx.ideal());
  r.p_divisible = check_p_divisibility(M);
  r.mod_p_additive = check_mod_p_additivity(M);
  r.witt_extension = check_witt_extension(M, ctx);
  return r;
}

// ---------------------------------------------------------------------------
// Enumeration of actions
// ---------------------------------------------------------------------------

struct EnumerationLimits {
  std::uint32_t max_ring_size = 16;
  std::uint64_t max_endomorphisms = 1u << 16;
};

/// Every monoid homomorphism (R,·) -> End(G), deduplicated and sorted.
inline std::vector<ModuleWithAction> enumerate_actions(const PerfectRing& R, const std::vector<std::int64_t>& factors,
                                                       const EnumerationLimits& limits = {}) {
  if (R.size() > limits.max_ring_size) throw std::invalid_argument("enumerate_actions: ring exceeds the cap");
  std::vector<std::int64_t> d(factors);
  std::sort(d.begin(), d.end());
  d.erase(std::remove(d.begin(), d.end(), 1), d.end());
  EndoRing E(d);
  if (d.empty()) return {ModuleWithAction(R, d, std::vector<EndoMatrix>(R.size()))};

  // greedy generating set of the monoid
  const std::uint32_t n = R.size();
  std::vector<std::uint32_t> gens;
  std::vector<bool> reached(n, false);
  auto close = [&] {
    std::vector<std::uint32_t> frontier;
    for (std::uint32_t x = 0; x < n; ++x)
      if (reached[x]) frontier.push_back(x);
    while (!frontier.empty()) {
      std::vector<std::uint32_t> next;
      for (auto x : frontier)
        for (auto g : gens) {
          const auto y = R.mul(x, g);
          if (!reached[y]) {
            reached[y] = true;
            next.push_back(y);
          }
        }
      frontier = std::move(next);
    }
  };
  reached[R.one()] = true;
  for (std::uint32_t x = 0; x < n; ++x)
    if (!reached[x]) {
      gens.push_back(x);
      close();
    }

  const auto endos = E.all(limits.max_endomorphisms);
  // candidates for a generator g: endomorphisms s with s^a = s^b, where
  // g^a = g^b is the first repetition among the powers of g
  std::vector<std::vector<const EndoMatrix*>> cands(gens.size());
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    std::map<std::uint32_t, unsigned> seen;
    std::uint32_t x = R.one();
    unsigned b = 0;
    while (!seen.count(x)) {
      seen[x] = b++;
      x = R.mul(x, gens[gi]);
    }
    const unsigned a = seen[x];
    for (const auto& s : endos) {
      EndoMatrix pa = E.pow(s, a), pb = pa;
      for (unsigned i = a; i < b; ++i) pb = E.mul(pb, s);
      if (pa == pb) cands[gi].push_back(&s);
    }
  }

  std::set<ModuleWithAction> out;
  std::vector<const EndoMatrix*> chosen(gens.size());
  std::function<void(std::size_t)> rec = [&](std::size_t gi) {
    if (gi == gens.size()) {
      std::vector<std::optional<EndoMatrix>> rho(n);
      rho[R.one()] = E.identity();
      std::vector<std::uint32_t> frontier{R.one()};
      bool ok = true;
      while (!frontier.empty() && ok) {
        std::vector<std::uint32_t> next;
        for (auto x : frontier)
          for (std::size_t k = 0; k < gens.size() && ok; ++k) {
            const auto y = R.mul(x, gens[k]);
            EndoMatrix v = E.mul(*rho[x], *chosen[k]);
            if (!rho[y]) {
              rho[y] = std::move(v);
              next.push_back(y);
            } else if (*rho[y] != v) {
              ok = false;
            }
          }
        frontier = std::move(next);
      }
      if (!ok) return;
      // all edges x -> x·g, including those revisiting known elements
      for (std::uint32_t x = 0; x < n && ok; ++x)
        for (std::size_t k = 0; k < gens.size() && ok; ++k) ok = *rho[R.mul(x, gens[k])] == E.mul(*rho[x], *chosen[k]);
      if (!ok) return;
      std::vector<EndoMatrix> table;
      for (auto& m : rho) table.push_back(*m);
      out.insert(ModuleWithAction(R, d, std::move(table)));
      return;
    }
    for (const auto* s : cands[gi]) {
      // generators commute
      bool ok = true;
      for (std::size_t k = 0; k < gi && ok; ++k) ok = E.mul(*s, *chosen[k]) == E.mul(*chosen[k], *s);
      if (!ok) continue;
      chosen[gi] = s;
      rec(gi + 1);
    }
  };
  rec(0);
  return {out.begin(), out.end()};
}

/// All finite abelian p-groups of order p^e, e <= max_exponent, as
/// nondecreasing factor lists (partitions of e), including the trivial group.
inline std::vector<std::vector<std::int64_t>> abelian_p_groups(std::int64_t p, unsigned max_exponent) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<unsigned> parts;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned max_part) {
    if (remaining == 0) {
      std::vector<std::int64_t> g;
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        std::int64_t d = 1;
        for (unsigned i = 0; i < *it; ++i) d *= p;
        g.push_back(d);
      }
      out.push_back(std::move(g));
      return;
    }
    for (unsigned k = std::min(remaining, max_part); k >= 1; --k) {
      parts.push_back(k);
      rec(remaining - k, k);
      parts.pop_back();
    }
  };
  for (unsigned e = 0; e <= max_exponent; ++e) rec(e, e);
  return out;
}

}  // namespace wittcd
