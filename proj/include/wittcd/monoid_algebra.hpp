#pragma once

// Integral monoid algebras Z[M], the augmentation Z[M] -> R, its kernel I,
// the ordinary powers I^n and the finite quotient rings Z[M]/I^n.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "finite_ring.hpp"
#include "linalg.hpp"
#include "perfect_ring.hpp"

namespace wittcd {

/// Z[M] on the basis [m], m ∈ M.
class MonoidAlgebra {
 public:
  explicit MonoidAlgebra(FiniteCommMonoid M) : M_(std::move(M)), mult_(M_.size()) {
    for (std::uint32_t a = 0; a < M_.size(); ++a)
      for (std::uint32_t b = 0; b < M_.size(); ++b) mult_.product(a, b)[M_.mul(a, b)] = 1;
  }

  const FiniteCommMonoid& monoid() const { return M_; }
  std::size_t rank() const { return M_.size(); }
  const StructureConstants& structure() const { return mult_; }

  IntVector basis(std::uint32_t m) const {
    IntVector v(rank());
    v[m] = 1;
    return v;
  }
  IntVector one() const { return basis(M_.unit()); }
  IntVector multiply(const IntVector& a, const IntVector& b) const { return mult_.multiply(a, b); }

 private:
  FiniteCommMonoid M_;
  StructureConstants mult_;
};

/// The additive extension Z[M] -> R of a monoid map φ : M -> (R,·), and its
/// kernel. Row m of the augmentation matrix holds the F_p-coordinates of φ(m).
struct AugmentationIdeal {
  PerfectRing target;
  std::vector<PerfectRing::Element> phi;
  IntMatrix aug_matrix;
  Lattice kernel;
};

inline AugmentationIdeal augmentation(const MonoidAlgebra& A, const PerfectRing& R,
                                      const std::vector<PerfectRing::Element>& phi) {
  const auto& M = A.monoid();
  if (phi.size() != M.size()) throw std::invalid_argument("augmentation: map has the wrong length");
  for (auto r : phi)
    if (r >= R.size()) throw std::invalid_argument("augmentation: image outside the target ring");
  if (phi[M.unit()] != R.one()) throw std::invalid_argument("augmentation: unit is not sent to 1");
  for (std::uint32_t a = 0; a < M.size(); ++a)
    for (std::uint32_t b = 0; b < M.size(); ++b)
      if (phi[M.mul(a, b)] != R.mul(phi[a], phi[b]))
        throw std::invalid_argument("augmentation: map is not multiplicative");

  const std::size_t d = R.dimension();
  IntMatrix T(M.size(), d);
  for (std::uint32_t m = 0; m < M.size(); ++m) {
    const auto c = R.coordinates(phi[m]);
    for (std::size_t j = 0; j < d; ++j) T(m, j) = c[j];
  }
  const BigInt p = R.characteristic();
  // surjective iff the image spans F_p^d, i.e. the cokernel of [T; pI] is trivial
  IntMatrix stacked(M.size() + d, d);
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) stacked(i, j) = T(i, j);
  for (std::size_t j = 0; j < d; ++j) stacked(M.size() + j, j) = p;
  if (FinAbGroup::cokernel(stacked, d).order() != 1)
    throw std::invalid_argument("augmentation: additive extension is not surjective");

  return AugmentationIdeal{R, phi, T, kernel_mod(T, p)};
}

/// The identity augmentation Z[(R,·)] -> R.
inline AugmentationIdeal augmentation(const MonoidAlgebra& A, const PerfectRing& R) {
  std::vector<PerfectRing::Element> id(R.size());
  for (PerfectRing::Element r = 0; r < R.size(); ++r) id[r] = r;
  return augmentation(A, R, id);
}

/// I^1, ..., I^N, each the product of the previous power with I.
inline std::vector<Lattice> ideal_powers(const MonoidAlgebra& A, const AugmentationIdeal& I, unsigned N) {
  if (N < 1) throw std::invalid_argument("ideal_powers: N must be >= 1");
  std::vector<Lattice> powers{I.kernel};
  for (unsigned n = 2; n <= N; ++n) powers.push_back(lattice_product(powers.back(), I.kernel, A.structure()));
  return powers;
}

/// Z[M]/L as a finite ring, with the projection from Z[M].
struct FiniteQuotientRing {
  unsigned level = 0;
  Lattice lattice{0};
  FinAbGroup group;
  FiniteRing ring;

  /// The class of an element of Z[M].
  Coords project(const IntVector& x) const {
    const IntVector y = group.reduce(x);
    Coords c(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) c[i] = static_cast<std::int64_t>(y[i]);
    return c;
  }
  /// A representative in Z[M] of a class.
  IntVector lift(const Coords& c) const {
    IntVector v(c.begin(), c.end());
    return group.lift(v);
  }
};

inline FiniteQuotientRing quotient_ring(const MonoidAlgebra& A, const Lattice& L, unsigned level) {
  const std::size_t m = A.rank();
  if (L.ambient_rank() != m) throw std::invalid_argument("quotient_ring: lattice lives in a different ambient");
  if (L.rank() != m) throw std::invalid_argument("quotient_ring: lattice has infinite index");
  const IntMatrix G = L.matrix();
  for (std::size_t r = 0; r < G.rows(); ++r) {
    const IntVector g = G.row(r);
    for (std::uint32_t b = 0; b < m; ++b)
      if (!L.contains(A.multiply(g, A.basis(b)))) throw std::invalid_argument("quotient_ring: lattice is not an ideal");
  }
  FiniteQuotientRing Q;
  Q.level = level;
  Q.lattice = L;
  Q.group = FinAbGroup::cokernel(G, m);
  const std::size_t r = Q.group.generator_count();
  std::vector<IntVector> lifts;
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r);
    e[i] = 1;
    lifts.push_back(Q.group.lift(e));
  }
  std::vector<Coords> table;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) table.push_back(Q.project(A.multiply(lifts[i], lifts[j])));
  std::vector<std::int64_t> factors;
  for (const auto& d : Q.group.invariant_factors()) {
    if (d > BigInt(std::int64_t{1} << 40)) throw std::invalid_argument("quotient_ring: quotient too large");
    factors.push_back(static_cast<std::int64_t>(d));
  }
  Q.ring = r == 0 ? FiniteRing::zero_ring()
                  : FiniteRing(std::move(factors), std::move(table), Q.project(A.one()),
                               "Z[M]/I^" + std::to_string(level));
  return Q;
}

/// The tower Z[M]/I^n for n = 1..N.
inline std::vector<FiniteQuotientRing> quotient_tower(const MonoidAlgebra& A, const std::vector<Lattice>& powers) {
  std::vector<FiniteQuotientRing> tower;
  for (std::size_t n = 0; n < powers.size(); ++n)
    tower.push_back(quotient_ring(A, powers[n], static_cast<unsigned>(n + 1)));
  return tower;
}

/// The canonical surjection between two quotients of the same algebra.
struct TransitionMap {
  unsigned from_level = 0, to_level = 0;
  RingHom hom;
  bool is_ring_map = false;
  bool surjective = false;
};

inline TransitionMap transition_map(const FiniteQuotientRing& from, const FiniteQuotientRing& to) {
  if (!to.lattice.contains(from.lattice)) throw std::invalid_argument("transition_map: chain is not descending");
  TransitionMap t;
  t.from_level = from.level;
  t.to_level = to.level;
  for (std::size_t i = 0; i < from.ring.generator_count(); ++i) {
    Coords e(from.ring.generator_count(), 0);
    e[i] = 1;
    t.hom.images.push_back(to.project(from.lift(e)));
  }
  t.is_ring_map = is_ring_hom(from.ring, t.hom, to.ring);
  // every generator of the target has a preimage: the class of its lift
  t.surjective = true;
  for (std::size_t i = 0; i < to.ring.generator_count() && t.surjective; ++i) {
    Coords e(to.ring.generator_count(), 0);
    e[i] = 1;
    t.surjective = t.hom.apply(to.ring, from.project(to.lift(e))) == e;
  }
  return t;
}

/// Consecutive transitions Z[M]/I^{n+1} -> Z[M]/I^n.
inline std::vector<TransitionMap> transition_maps(const std::vector<FiniteQuotientRing>& tower) {
  std::vector<TransitionMap> out;
  for (std::size_t n = 1; n < tower.size(); ++n) out.push_back(transition_map(tower[n], tower[n - 1]));
  return out;
}

}  // namespace wittcd
