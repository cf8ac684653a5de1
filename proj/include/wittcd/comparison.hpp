#pragma once

// The comparison Z[M]/I^n -> W_n(R) induced by [m] ↦ τ(φ(m)), the
// pro-isomorphism report for the two towers, and the hom-set checks for the
// universal property of W_k(R) and the tilt correspondence.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "finite_ring.hpp"
#include "galois_ring.hpp"
#include "linalg.hpp"
#include "monoid_algebra.hpp"
#include "perfect_ring.hpp"
#include "witt_ring.hpp"

namespace wittcd {

/// A hypothesis of an operation fails on the given input (as opposed to a
/// falsification of a claimed result).
class HypothesisViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Whether the universal polynomials for (p, n) are cheap enough to build.
/// Their size grows like p^{n-1}; p = 2, n = 7 already takes minutes.
inline bool polynomial_engine_feasible(std::uint32_t p, unsigned n) {
  std::uint64_t v = 1;
  for (unsigned i = 1; i < n; ++i) {
    v *= p;
    if (v > 32) return false;
  }
  return true;
}

namespace detail {

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, r = ((a % m) + m) % m;
  while (r != 0) {
    const std::int64_t q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw std::domain_error("inverse_mod: not a unit");
  return ((x % m) + m) % m;
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  __int128 r = static_cast<__int128>(a) * b % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

/// Solves B c ≡ y (mod N) for B invertible mod every prime divisor of N.
/// B is given by columns.
inline Coords solve_mod(std::vector<Coords> cols, Coords y, std::int64_t N) {
  const std::size_t k = y.size();
  // augmented rows
  std::vector<Coords> a(k, Coords(k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = ((cols[j][i] % N) + N) % N;
    a[i][k] = ((y[i] % N) + N) % N;
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = k;
    for (std::size_t r = c; r < k && piv == k; ++r)
      if (std::gcd(a[r][c], N) == 1) piv = r;
    if (piv == k) throw std::domain_error("solve_mod: matrix is not invertible");
    std::swap(a[c], a[piv]);
    const std::int64_t inv = inverse_mod(a[c][c], N);
    for (auto& v : a[c]) v = mulmod(v, inv, N);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const std::int64_t f = a[r][c];
      for (std::size_t j = 0; j <= k; ++j) a[r][j] = ((a[r][j] - mulmod(f, a[c][j], N)) % N + N) % N;
    }
  }
  Coords c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = a[i][k];
  return c;
}

}  // namespace detail

/// W_n(R) presented on the additive basis τ(β_j), with the coordinates of
/// τ(r) for every r ∈ R.
struct WittTarget {
  unsigned n = 0;
  std::int64_t modulus = 1;     // p^n
  std::string model;            // "witt-polynomials" or "galois-ring"
  std::vector<Coords> teich;    // teich[r] = coordinates of τ(r)
  FiniteRing ring;
};

/// Teichmüller coordinates from the universal polynomials when they are
/// feasible, otherwise from the Galois-ring model of each factor (the two
/// agree wherever both are available, which the tests check).
inline WittTarget witt_target(const PerfectRing& R, unsigned n, bool force_galois = false) {
  if (n < 1) throw std::invalid_argument("witt_target: n must be >= 1");
  const std::uint32_t p = R.characteristic();
  WittTarget t;
  t.n = n;
  for (unsigned i = 0; i < n; ++i) t.modulus *= p;
  t.teich.resize(R.size());
  if (!force_galois && polynomial_engine_feasible(p, n)) {
    t.model = "witt-polynomials";
    WittRing W(R, n);
    for (PerfectRing::Element r = 0; r < R.size(); ++r) t.teich[r] = W.additive_coordinates(W.teichmuller(r));
  } else {
    t.model = "galois-ring";
    std::size_t offset = 0;
    for (std::size_t r = 0; r < R.size(); ++r) t.teich[r] = Coords(R.dimension(), 0);
    for (std::size_t f = 0; f < R.factor_count(); ++f) {
      const FiniteField& F = R.factors()[f];
      const unsigned k = F.degree();
      GaloisRing G(p, k, n);
      std::vector<Coords> basis;
      FiniteField::Element xi = 1;
      for (unsigned i = 0; i < k; ++i) {
        basis.push_back(G.teichmuller(xi));
        xi *= p;  // x^i is the field element with index p^i
      }
      std::vector<Coords> local(F.order());
      for (FiniteField::Element a = 0; a < F.order(); ++a)
        local[a] = detail::solve_mod(basis, G.teichmuller(a), t.modulus);
      for (PerfectRing::Element r = 0; r < R.size(); ++r) {
        const auto& c = local[R.component(r, f)];
        for (unsigned i = 0; i < k; ++i) t.teich[r][offset + i] = c[i];
      }
      offset += k;
    }
  }
  const auto basis = R.additive_basis();
  const std::size_t d = basis.size();
  std::vector<Coords> table(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) table[i * d + j] = t.teich[R.mul(basis[i], basis[j])];
  t.ring = FiniteRing(std::vector<std::int64_t>(d, t.modulus), std::move(table), t.teich[R.one()],
                      "W" + std::to_string(n) + "(" + R.name() + ")");
  return t;
}

// ---------------------------------------------------------------------------
// The comparison map at one level
// ---------------------------------------------------------------------------

struct ComparisonMap {
  unsigned level = 0;
  FiniteQuotientRing source;
  FiniteRing target;
  std::string target_model;
  IntMatrix matrix;  // row m: coordinates of τ(φ(m)) in W_n(R)
  RingHom map;       // on the generators of the source
  bool well_defined = false;
  std::optional<bool> well_defined_witt;  // the same check by Witt arithmetic
  bool is_ring_map = false;
  bool surjective = false;
  bool recovers_augmentation = false;
  Lattice kernel_lattice{0};  // preimage of the kernel in Z[M]
  FinAbGroup kernel;          // kernel_lattice / I^n
};

namespace detail {

inline IntMatrix teichmuller_matrix(const AugmentationIdeal& I, const WittTarget& t) {
  const std::size_t m = I.phi.size(), d = I.target.dimension();
  IntMatrix T(m, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) T(i, j) = t.teich[I.phi[i]][j];
  return T;
}

inline Coords reduce_coords(const IntVector& v, std::int64_t N) {
  Coords c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = static_cast<std::int64_t>(mod_floor(v[i], N));
  return c;
}

/// Σ v_m τ(φ(m)) computed with Witt addition.
inline bool witt_sum_vanishes(const WittRing& W, const AugmentationIdeal& I, const IntVector& v) {
  WittVector acc = W.zero();
  for (std::size_t m = 0; m < v.size(); ++m)
    if (v[m] != 0) acc = W.add(acc, W.multiply_int(W.teichmuller(I.phi[m]), static_cast<long long>(v[m])));
  return acc == W.zero();
}

}  // namespace detail

inline ComparisonMap comparison_map(const AugmentationIdeal& I, const FiniteQuotientRing& Q, const WittTarget& t,
                                    const WittRing* witt = nullptr) {
  const PerfectRing& R = I.target;
  const std::uint32_t p = R.characteristic();
  ComparisonMap c;
  c.level = Q.level;
  c.source = Q;
  c.target = t.ring;
  c.target_model = t.model;
  c.matrix = detail::teichmuller_matrix(I, t);
  const BigInt N = t.modulus;
  const std::size_t d = R.dimension();

  c.kernel_lattice = kernel_mod(c.matrix, N);
  c.well_defined = true;
  for (const auto& g : Q.lattice.generators()) {
    const IntVector img = row_times(g, c.matrix);
    for (const auto& x : img)
      if (mod_floor(x, N) != 0) c.well_defined = false;
  }
  if (witt) {
    bool ok = true;
    for (const auto& g : Q.lattice.generators()) ok = ok && detail::witt_sum_vanishes(*witt, I, g);
    c.well_defined_witt = ok;
  }

  for (std::size_t i = 0; i < Q.ring.generator_count(); ++i) {
    Coords e(Q.ring.generator_count(), 0);
    e[i] = 1;
    c.map.images.push_back(detail::reduce_coords(row_times(Q.lift(e), c.matrix), t.modulus));
  }
  c.is_ring_map = c.well_defined && is_ring_hom(Q.ring, c.map, t.ring);

  IntMatrix stacked(c.matrix.rows() + d, d);
  for (std::size_t i = 0; i < c.matrix.rows(); ++i)
    for (std::size_t j = 0; j < d; ++j) stacked(i, j) = c.matrix(i, j);
  for (std::size_t j = 0; j < d; ++j) stacked(c.matrix.rows() + j, j) = N;
  c.surjective = FinAbGroup::cokernel(stacked, d).order() == 1;

  // W_n(R) -> W_1(R) = R sends τ(β_j) to β_j, so reduce the coordinates mod p
  c.recovers_augmentation = true;
  for (std::size_t m = 0; m < I.phi.size(); ++m) {
    std::vector<std::uint32_t> low(d);
    for (std::size_t j = 0; j < d; ++j)
      low[j] = static_cast<std::uint32_t>(mod_floor(c.matrix(m, j), BigInt(p)));
    if (R.from_coordinates(low) != I.phi[m]) c.recovers_augmentation = false;
  }

  if (c.well_defined) {
    // K̃ / I^n, presented on the HNF basis of K̃
    const auto& kb = c.kernel_lattice.generators();
    IntMatrix rel(Q.lattice.rank(), kb.size());
    std::size_t r = 0;
    for (const auto& g : Q.lattice.generators()) {
      auto coeff = c.kernel_lattice.express(g);
      if (!coeff) throw std::logic_error("comparison_map: I^n is not inside the kernel lattice");
      for (std::size_t j = 0; j < kb.size(); ++j) rel(r, j) = (*coeff)[j];
      ++r;
    }
    c.kernel = FinAbGroup::cokernel(rel, kb.size());
  }
  return c;
}

/// φ_n : Z[R]/I^n -> W_n(R) for the multiplicative monoid of R.
inline ComparisonMap comparison_map(const PerfectRing& R, unsigned n) {
  if (n < 1) throw std::invalid_argument("comparison_map: n must be >= 1");
  MonoidAlgebra A(FiniteCommMonoid::multiplicative(R));
  const AugmentationIdeal I = augmentation(A, R);
  const auto powers = ideal_powers(A, I, n);
  const auto Q = quotient_ring(A, powers.back(), n);
  const WittTarget t = witt_target(R, n);
  std::optional<WittRing> W;
  if (polynomial_engine_feasible(R.characteristic(), n)) W.emplace(R, n);
  return comparison_map(I, Q, t, W ? &*W : nullptr);
}

// ---------------------------------------------------------------------------
// Pro-isomorphism report
// ---------------------------------------------------------------------------

struct LevelReport {
  unsigned n = 0;
  IntVector source_factors;
  BigInt source_order = 0;
  BigInt target_order = 0;
  std::string target_model;
  bool well_defined = false;
  std::optional<bool> well_defined_witt;
  bool is_ring_map = false;
  bool surjective = false;
  bool recovers_augmentation = false;
  bool compatible = true;  // T_n ≡ T_{n-1} (mod p^{n-1})
  bool transition_is_ring_map = true;  // Z[M]/I^n -> Z[M]/I^{n-1}
  BigInt kernel_order = 0;
  IntVector kernel_factors;
  std::optional<unsigned> killed_at_m;
  std::vector<BigInt> kernel_image_orders;  // |image of K_m in Z[M]/I^n|, m = n..cap
};

struct ProIsoReport {
  std::string ring;
  std::string source;  // description of the monoid
  unsigned cap = 0;
  unsigned levels = 0;  // levels n for which a killing m is sought
  std::vector<LevelReport> level_reports;
  std::string verdict;  // verified | inconclusive | falsified
  std::vector<std::string> failures;
};

namespace detail {

inline ProIsoReport tower_report(const MonoidAlgebra& A, const AugmentationIdeal& I, unsigned cap, unsigned levels,
                                 std::string source) {
  const PerfectRing& R = I.target;
  const std::uint32_t p = R.characteristic();
  ProIsoReport rep;
  rep.ring = R.name();
  rep.source = std::move(source);
  rep.cap = cap;
  rep.levels = std::min(levels, cap);
  if (cap == 0) {
    rep.verdict = "inconclusive";
    return rep;
  }
  const auto powers = ideal_powers(A, I, cap);
  const auto tower = quotient_tower(A, powers);
  std::vector<WittTarget> targets;
  std::vector<ComparisonMap> maps;
  for (unsigned n = 1; n <= cap; ++n) {
    targets.push_back(witt_target(R, n));
    std::optional<WittRing> W;
    if (polynomial_engine_feasible(p, n)) W.emplace(R, n);
    maps.push_back(comparison_map(I, tower[n - 1], targets.back(), W ? &*W : nullptr));
  }
  const auto transitions = transition_maps(tower);

  for (unsigned n = 1; n <= cap; ++n) {
    const ComparisonMap& c = maps[n - 1];
    LevelReport L;
    L.n = n;
    L.source_factors = c.source.group.invariant_factors();
    L.source_order = c.source.group.order();
    L.target_order = BigInt(c.target.order());
    L.target_model = c.target_model;
    L.well_defined = c.well_defined;
    L.well_defined_witt = c.well_defined_witt;
    L.is_ring_map = c.is_ring_map;
    L.surjective = c.surjective;
    L.recovers_augmentation = c.recovers_augmentation;
    L.kernel_order = c.well_defined ? c.kernel.order() : BigInt(0);
    L.kernel_factors = c.kernel.invariant_factors();
    if (n > 1) {
      const IntMatrix& hi = c.matrix;
      const IntMatrix& lo = maps[n - 2].matrix;
      const BigInt mod = targets[n - 2].modulus;
      for (std::size_t i = 0; i < hi.rows(); ++i)
        for (std::size_t j = 0; j < hi.cols(); ++j)
          if (mod_floor(hi(i, j) - lo(i, j), mod) != 0) L.compatible = false;
      const auto& t = transitions[n - 2];
      L.transition_is_ring_map = t.is_ring_map && t.surjective;
    }
    if (n <= rep.levels) {
      const Lattice& In = powers[n - 1];
      const BigInt idx = In.index();
      for (unsigned m = n; m <= cap; ++m) {
        const Lattice& Km = maps[m - 1].kernel_lattice;
        L.kernel_image_orders.push_back(idx / (Km + In).index());
        if (!L.killed_at_m && In.contains(Km)) L.killed_at_m = m;
      }
    }
    rep.level_reports.push_back(std::move(L));
  }

  for (const auto& L : rep.level_reports) {
    const std::string at = " at level " + std::to_string(L.n);
    if (!L.well_defined) rep.failures.push_back("not well defined" + at);
    if (L.well_defined_witt && !*L.well_defined_witt) rep.failures.push_back("Witt-arithmetic check fails" + at);
    if (L.well_defined && !L.is_ring_map) rep.failures.push_back("not a ring map" + at);
    if (!L.surjective) rep.failures.push_back("not surjective" + at);
    if (!L.recovers_augmentation) rep.failures.push_back("does not recover the augmentation" + at);
    if (!L.compatible) rep.failures.push_back("incompatible with the level below" + at);
    if (!L.transition_is_ring_map) rep.failures.push_back("transition map is not a ring surjection" + at);
    for (std::size_t i = 1; i < L.kernel_image_orders.size(); ++i)
      if (L.kernel_image_orders[i] > L.kernel_image_orders[i - 1])
        rep.failures.push_back("kernel images increase" + at);
  }
  bool witnessed = rep.levels > 0;
  for (const auto& L : rep.level_reports)
    if (L.n <= rep.levels && !L.killed_at_m) witnessed = false;
  if (!rep.failures.empty())
    rep.verdict = "falsified";
  else if (cap < 2 || !witnessed)
    rep.verdict = "inconclusive";
  else
    rep.verdict = "verified";
  return rep;
}

}  // namespace detail

/// Compares Z[R]/I^n with W_n(R) for n = 1..cap, and for each n <= levels
/// searches m in [n, cap] with the kernel of the level-m map dying in
/// Z[R]/I^n.
inline ProIsoReport pro_isomorphism_report(const PerfectRing& R, unsigned cap, std::optional<unsigned> levels = {}) {
  MonoidAlgebra A(FiniteCommMonoid::multiplicative(R));
  const AugmentationIdeal I = augmentation(A, R);
  return detail::tower_report(A, I, cap, levels.value_or(cap), "(" + R.name() + ",*)");
}

/// The same report for a p-divisible monoid M with a monoid map φ : M -> R
/// whose additive extension is surjective.
inline ProIsoReport generalized_comparison(const FiniteCommMonoid& M, const std::vector<PerfectRing::Element>& phi,
                                           const PerfectRing& R, unsigned cap, std::optional<unsigned> levels = {}) {
  if (!is_p_divisible_monoid(M, R.characteristic()))
    throw HypothesisViolation("generalized_comparison: the monoid is not p-divisible");
  MonoidAlgebra A(M);
  auto I = [&] {
    try {
      return augmentation(A, R, phi);
    } catch (const std::invalid_argument& e) {
      throw HypothesisViolation(e.what());
    }
  }();
  return detail::tower_report(A, I, cap, levels.value_or(cap), "monoid of order " + std::to_string(M.size()));
}

// ---------------------------------------------------------------------------
// Universal property of W_k(R) and the tilt correspondence
// ---------------------------------------------------------------------------

/// Multiplicative unital maps (R,·) -> (A,·), as element tables.
inline std::vector<ElementMap> multiplicative_maps(const PerfectRing& R, const FiniteRing& A) {
  const auto elems = A.elements();
  const std::size_t na = elems.size();
  std::vector<std::vector<std::uint32_t>> mul(na, std::vector<std::uint32_t>(na));
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < na; ++b) mul[a][b] = static_cast<std::uint32_t>(A.index(A.mul(elems[a], elems[b])));
  const auto one = static_cast<std::uint32_t>(A.index(A.one()));

  const std::uint32_t nr = R.size();
  std::vector<std::int64_t> f(nr, -1);
  std::vector<ElementMap> out;
  // order: unit first, then zero, then the rest
  std::vector<std::uint32_t> order{R.one()};
  if (R.one() != 0) order.push_back(0);
  for (std::uint32_t r = 0; r < nr; ++r)
    if (r != R.one() && r != 0) order.push_back(r);

  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == order.size()) {
      ElementMap m;
      for (auto v : f) m.push_back(elems[static_cast<std::size_t>(v)]);
      out.push_back(std::move(m));
      return;
    }
    const std::uint32_t x = order[pos];
    std::vector<std::uint32_t> cands;
    if (x == R.one()) {
      cands.push_back(one);
    } else {
      for (std::uint32_t v = 0; v < na; ++v) cands.push_back(v);
    }
    for (auto v : cands) {
      if (x == 0 && x != R.one() && mul[v][v] != v) continue;  // 0 is absorbing: image idempotent
      f[x] = v;
      bool ok = true;
      for (std::size_t i = 0; i <= pos && ok; ++i) {
        const std::uint32_t a = order[i];
        for (std::size_t j = i; j <= pos && ok; ++j) {
          const std::uint32_t b = order[j];
          if (a != x && b != x) continue;
          const std::uint32_t ab = R.mul(a, b);
          if (f[ab] >= 0) ok = mul[f[a]][f[b]] == static_cast<std::uint32_t>(f[ab]);
        }
      }
      // products of earlier pairs that land on x
      for (std::size_t i = 0; i < pos && ok; ++i)
        for (std::size_t j = i; j < pos && ok; ++j)
          if (R.mul(order[i], order[j]) == x) ok = mul[f[order[i]]][f[order[j]]] == v;
      if (ok) rec(pos + 1);
      f[x] = -1;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

struct UniversalPropertyReport {
  std::string ring, target;
  unsigned k = 0;                      // p^k A = 0, minimal
  std::vector<ElementMap> monoid_maps;  // multiplicative maps that are ring maps mod p
  std::size_t multiplicative_map_count = 0;
  std::vector<RingHom> witt_homs;       // ring maps W_k(R) -> A
  std::vector<std::size_t> bijection;  // witt_homs[i] ∘ τ = monoid_maps[bijection[i]]
  bool holds = false;
  std::string counterexample;
};

inline UniversalPropertyReport universal_property_check(const PerfectRing& R, const FiniteRing& A) {
  const std::uint32_t p = R.characteristic();
  auto k = A.p_exponent(p);
  if (!k) throw HypothesisViolation("universal_property_check: A is not p-power torsion");
  if (*k == 0) throw HypothesisViolation("universal_property_check: A is the zero ring");
  UniversalPropertyReport rep;
  rep.ring = R.name();
  rep.target = A.name();
  rep.k = *k;

  const FiniteRing Ap = A.quotient_by_integer(p);
  const auto all = multiplicative_maps(R, A);
  rep.multiplicative_map_count = all.size();
  for (const auto& f : all) {
    bool additive = true;
    for (PerfectRing::Element a = 0; a < R.size() && additive; ++a)
      for (PerfectRing::Element b = 0; b < R.size() && additive; ++b)
        additive = A.reduce_mod_integer(f[R.add(a, b)], p) ==
                   Ap.add(A.reduce_mod_integer(f[a], p), A.reduce_mod_integer(f[b], p));
    if (additive) rep.monoid_maps.push_back(f);
  }

  const WittTarget W = witt_target(R, *k);
  rep.witt_homs = ring_homs(W.ring, A);
  std::set<std::size_t> hit;
  for (std::size_t i = 0; i < rep.witt_homs.size(); ++i) {
    ElementMap f;
    for (PerfectRing::Element r = 0; r < R.size(); ++r) f.push_back(rep.witt_homs[i].apply(A, W.teich[r]));
    auto it = std::find(rep.monoid_maps.begin(), rep.monoid_maps.end(), f);
    if (it == rep.monoid_maps.end()) {
      rep.counterexample = "ring map " + std::to_string(i) + " restricted along τ is not a qualifying monoid map";
      return rep;
    }
    const auto j = static_cast<std::size_t>(it - rep.monoid_maps.begin());
    if (!hit.insert(j).second) {
      rep.counterexample = "two ring maps restrict to the same monoid map " + std::to_string(j);
      return rep;
    }
    rep.bijection.push_back(j);
  }
  if (hit.size() != rep.monoid_maps.size()) {
    rep.counterexample = "a qualifying monoid map does not extend to W_k(R)";
    return rep;
  }
  rep.holds = true;
  return rep;
}

struct TiltCorrespondenceReport {
  std::string ring, target, tilt;
  unsigned k = 0;
  std::vector<RingHom> witt_homs;                               // W_k(R) -> A
  std::vector<std::vector<PerfectRing::Element>> tilt_homs;     // R -> tilt(A)
  std::vector<std::size_t> forward;  // witt_homs[i] ↦ tilt_homs[forward[i]]
  bool holds = false;
  std::string counterexample;
};

inline TiltCorrespondenceReport tilt_correspondence_check(const PerfectRing& R, const FiniteRing& A) {
  const std::uint32_t p = R.characteristic();
  auto k = A.p_exponent(p);
  if (!k) throw HypothesisViolation("tilt_correspondence_check: A is not p-power torsion");
  if (*k == 0) throw HypothesisViolation("tilt_correspondence_check: A is the zero ring");
  TiltCorrespondenceReport rep;
  rep.ring = R.name();
  rep.target = A.name();
  rep.k = *k;
  const Tilt t = tilt(A, p);
  rep.tilt = t.ring.name();
  const WittTarget W = witt_target(R, *k);
  rep.witt_homs = ring_homs(W.ring, A);
  rep.tilt_homs = ring_homs(R, t.ring);

  std::map<Coords, PerfectRing::Element> from_embedding;
  for (PerfectRing::Element x = 0; x < t.ring.size(); ++x) from_embedding[t.embedding[x]] = x;

  // forward: h ↦ (r ↦ h(τ(r)) mod p, read in the tilt)
  auto forward = [&](const RingHom& h) -> std::optional<std::vector<PerfectRing::Element>> {
    std::vector<PerfectRing::Element> g;
    for (PerfectRing::Element r = 0; r < R.size(); ++r) {
      auto it = from_embedding.find(A.reduce_mod_integer(h.apply(A, W.teich[r]), p));
      if (it == from_embedding.end()) return std::nullopt;
      g.push_back(it->second);
    }
    return g;
  };
  // backward: g ↦ (Σ p^i τ(a_i) ↦ Σ p^i g(a_i)^♯), determined on the basis τ(β_j)
  auto backward = [&](const std::vector<PerfectRing::Element>& g) {
    RingHom h;
    for (auto beta : R.additive_basis()) h.images.push_back(sharp(A, t, g[beta], p));
    return h;
  };

  for (std::size_t i = 0; i < rep.witt_homs.size(); ++i) {
    auto g = forward(rep.witt_homs[i]);
    if (!g) {
      rep.counterexample = "ring map " + std::to_string(i) + " does not land in the tilt";
      return rep;
    }
    auto it = std::find(rep.tilt_homs.begin(), rep.tilt_homs.end(), *g);
    if (it == rep.tilt_homs.end()) {
      rep.counterexample = "ring map " + std::to_string(i) + " gives no ring map into the tilt";
      return rep;
    }
    rep.forward.push_back(static_cast<std::size_t>(it - rep.tilt_homs.begin()));
    if (!(backward(*g) == rep.witt_homs[i])) {
      rep.counterexample = "backward(forward(h)) differs from h for ring map " + std::to_string(i);
      return rep;
    }
  }

  std::optional<WittRing> Wr;
  if (polynomial_engine_feasible(p, *k)) Wr.emplace(R, *k);
  for (std::size_t j = 0; j < rep.tilt_homs.size(); ++j) {
    const auto& g = rep.tilt_homs[j];
    const RingHom h = backward(g);
    if (!is_ring_hom(W.ring, h, A)) {
      rep.counterexample = "backward image of tilt map " + std::to_string(j) + " is not a ring map";
      return rep;
    }
    if (Wr) {
      // the digit formula agrees with h on every element
      for (std::uint64_t v = 0; v < Wr->size(); ++v) {
        const WittVector x = Wr->element(v);
        const auto a = Wr->digits(x);
        Coords acc = A.zero();
        std::int64_t pi = 1;
        for (const auto& ai : a) {
          acc = A.add(acc, A.scale(sharp(A, t, g[ai], p), pi));
          pi *= p;
        }
        if (acc != h.apply(A, Wr->additive_coordinates(x))) {
          rep.counterexample = "digit formula disagrees for tilt map " + std::to_string(j);
          return rep;
        }
      }
    }
    auto g2 = forward(h);
    if (!g2 || *g2 != g) {
      rep.counterexample = "forward(backward(g)) differs from g for tilt map " + std::to_string(j);
      return rep;
    }
  }
  std::set<std::size_t> hit(rep.forward.begin(), rep.forward.end());
  if (hit.size() != rep.witt_homs.size() || rep.witt_homs.size() != rep.tilt_homs.size()) {
    rep.counterexample = "hom-sets have different sizes";
    return rep;
  }
  rep.holds = true;
  return rep;
}

}  // namespace wittcd
