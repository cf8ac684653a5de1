#include <gtest/gtest.h>

#include <set>

#include "wittcd/comparison.hpp"
#include "wittcd/galois_ring.hpp"
#include "wittcd/monoid_algebra.hpp"

using namespace wittcd;

namespace {

FiniteRing dual_numbers(std::int64_t p) {
  return FiniteRing({p, p}, {{1, 0}, {0, 1}, {0, 1}, {0, 0}}, {1, 0}, "dual");
}

struct Augmented {
  PerfectRing R;
  MonoidAlgebra A;
  AugmentationIdeal I;
  explicit Augmented(const char* spec)
      : R(parse_perfect_ring(spec)), A(FiniteCommMonoid::multiplicative(R)), I(augmentation(A, R)) {}
};

IntVector scaled(IntVector v, const BigInt& s) {
  for (auto& x : v) x *= s;
  return v;
}

}  // namespace

TEST(MonoidAlgebra, BasisMultiplication) {
  const Augmented s("F4");
  const auto& M = s.A.monoid();
  for (std::uint32_t a = 0; a < M.size(); ++a)
    for (std::uint32_t b = 0; b < M.size(); ++b) EXPECT_EQ(s.A.multiply(s.A.basis(a), s.A.basis(b)), s.A.basis(M.mul(a, b)));
  EXPECT_EQ(s.A.one(), s.A.basis(s.R.one()));
}

TEST(Augmentation, KernelForF2) {
  const Augmented s("F2");
  // basis ([0], [1]): I = span{[0], 2[1]}
  EXPECT_EQ(s.I.kernel, Lattice(2, {{1, 0}, {0, 2}}));
}

TEST(Augmentation, IndexIsOrderOfR) {
  for (const char* spec : {"F2", "F3", "F5", "F4", "F2xF4"}) {
    const Augmented s(spec);
    EXPECT_EQ(s.I.kernel.rank(), s.A.rank());
    EXPECT_EQ(s.I.kernel.index(), s.R.size()) << spec;
    EXPECT_TRUE(s.I.kernel.contains(scaled(s.A.one(), s.R.characteristic())));
  }
}

TEST(Augmentation, RejectsBadMaps) {
  const PerfectRing F4 = parse_perfect_ring("F4");
  const MonoidAlgebra A(FiniteCommMonoid::multiplicative(F4));
  // units to 1 and zero to zero is multiplicative but only reaches F_2 ⊂ F_4
  EXPECT_THROW(augmentation(A, F4, {0, 1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(augmentation(A, F4, {0, 1, 2, 2}), std::invalid_argument);
  EXPECT_THROW(augmentation(A, F4, {0, 2, 2, 3}), std::invalid_argument);
}

TEST(IdealPowers, ClosedFormForF2) {
  const Augmented s("F2");
  const auto powers = ideal_powers(s.A, s.I, 8);
  EXPECT_EQ(powers[0], s.I.kernel);
  BigInt two_n = 1;
  for (std::size_t n = 0; n < powers.size(); ++n) {
    two_n *= 2;
    EXPECT_EQ(powers[n], Lattice(2, {{1, 0}, {0, two_n}}));
    if (n > 0) EXPECT_TRUE(powers[n - 1].contains(powers[n]));
  }
}

TEST(IdealPowers, ContainPowersOfPAndAbsorbingElement) {
  for (const char* spec : {"F3", "F4", "F2xF4"}) {
    const Augmented s(spec);
    const auto powers = ideal_powers(s.A, s.I, 4);
    BigInt pn = 1;
    for (const auto& L : powers) {
      pn *= s.R.characteristic();
      for (std::uint32_t m = 0; m < s.A.rank(); ++m) EXPECT_TRUE(L.contains(scaled(s.A.basis(m), pn)));
      EXPECT_TRUE(L.contains(s.A.basis(s.R.zero())));
      EXPECT_EQ(FinAbGroup::cokernel(L.matrix(), s.A.rank()).order() % s.R.characteristic(), 0);
    }
  }
}

TEST(QuotientRing, LevelsOfF2AreCyclic) {
  const Augmented s("F2");
  const auto powers = ideal_powers(s.A, s.I, 5);
  for (unsigned n = 1; n <= 5; ++n) {
    const auto Q = quotient_ring(s.A, powers[n - 1], n);
    // a ring of order 2^n whose unit has additive order 2^n is Z/2^n
    EXPECT_EQ(Q.ring.invariant_factors(), (std::vector<std::int64_t>{std::int64_t{1} << n}));
    EXPECT_EQ(Q.ring.one()[0] % 2, 1) << "the unit must generate";
  }
}

TEST(QuotientRing, FullLatticeGivesZeroRing) {
  const Augmented s("F3");
  const auto Q = quotient_ring(s.A, Lattice::full(3), 0);
  EXPECT_EQ(Q.ring.order(), 1u);
}

TEST(QuotientRing, LevelOneIsR) {
  for (const char* spec : {"F2", "F3", "F4", "F9", "F2xF4"}) {
    const Augmented s(spec);
    const auto Q = quotient_ring(s.A, s.I.kernel, 1);
    EXPECT_EQ(Q.ring.order(), s.R.size());
    bool iso = false;
    for (const auto& f : ring_homs(s.R, Q.ring)) {
      std::set<Coords> image(f.begin(), f.end());
      iso = iso || image.size() == s.R.size();
    }
    EXPECT_TRUE(iso) << spec;
  }
}

TEST(TransitionMaps, SurjectiveAndFunctorial) {
  for (const char* spec : {"F2", "F3", "F4"}) {
    const Augmented s(spec);
    const auto tower = quotient_tower(s.A, ideal_powers(s.A, s.I, 3));
    for (const auto& t : transition_maps(tower)) {
      EXPECT_TRUE(t.is_ring_map);
      EXPECT_TRUE(t.surjective);
    }
    const auto t32 = transition_map(tower[2], tower[1]);
    const auto t21 = transition_map(tower[1], tower[0]);
    const auto t31 = transition_map(tower[2], tower[0]);
    for (const auto& x : tower[2].ring.elements())
      EXPECT_EQ(t21.hom.apply(tower[0].ring, t32.hom.apply(tower[1].ring, x)), t31.hom.apply(tower[0].ring, x));
  }
}

TEST(TransitionMaps, Z8ToZ4) {
  const Augmented s("F2");
  const auto tower = quotient_tower(s.A, ideal_powers(s.A, s.I, 3));
  const auto t = transition_map(tower[2], tower[1]);
  // k·1 goes to k·1, so Z/8 -> Z/4 is reduction
  const FiniteRing &Z8 = tower[2].ring, &Z4 = tower[1].ring;
  Coords x = Z8.zero(), y = Z4.zero();
  for (int k = 0; k < 8; ++k) {
    EXPECT_EQ(t.hom.apply(Z4, x), y);
    x = Z8.add(x, Z8.one());
    y = Z4.add(y, Z4.one());
  }
}

TEST(WittTarget, GaloisModelAgreesWithPolynomials) {
  for (auto [spec, nmax] : {std::pair{"F2", 5u}, std::pair{"F3", 3u}, std::pair{"F4", 3u}, std::pair{"F9", 2u},
                            std::pair{"F2xF4", 3u}, std::pair{"F5", 2u}}) {
    const PerfectRing R = parse_perfect_ring(spec);
    for (unsigned n = 1; n <= nmax; ++n) {
      ASSERT_TRUE(polynomial_engine_feasible(R.characteristic(), n));
      const WittTarget a = witt_target(R, n), b = witt_target(R, n, true);
      EXPECT_EQ(a.model, "witt-polynomials");
      EXPECT_EQ(b.model, "galois-ring");
      EXPECT_EQ(a.teich, b.teich) << spec << " n=" << n;
    }
  }
}

TEST(ComparisonMap, F2IsIsomorphismAtEveryLevel) {
  const PerfectRing F2 = parse_perfect_ring("F2");
  for (unsigned n = 1; n <= 6; ++n) {
    const auto c = comparison_map(F2, n);
    EXPECT_TRUE(c.well_defined);
    EXPECT_TRUE(c.is_ring_map);
    EXPECT_TRUE(c.surjective);
    EXPECT_TRUE(c.recovers_augmentation);
    EXPECT_EQ(c.kernel.order(), 1);
    EXPECT_EQ(c.target.order(), std::uint64_t{1} << n);
    // on Z/2^n the map is determined by 1 -> 1
    EXPECT_EQ(c.map.images, (std::vector<Coords>{c.target.one()}));
    if (c.well_defined_witt) EXPECT_TRUE(*c.well_defined_witt);
  }
}

TEST(ComparisonMap, LevelOneIsTheIdentification) {
  for (const char* spec : {"F3", "F4", "F2xF4"}) {
    const auto c = comparison_map(parse_perfect_ring(spec), 1);
    EXPECT_TRUE(c.well_defined && c.is_ring_map && c.surjective && c.recovers_augmentation);
    EXPECT_EQ(c.kernel.order(), 1);
  }
}

TEST(ComparisonMap, F4LevelTwoSurjectsOntoGaloisRing) {
  const auto c = comparison_map(parse_perfect_ring("F4"), 2);
  EXPECT_TRUE(c.surjective);
  EXPECT_EQ(c.target.order(), 16u);
  EXPECT_EQ(c.target.invariant_factors(), (std::vector<std::int64_t>{4, 4}));
}

TEST(ProIso, F2KernelsVanish) {
  const auto r = pro_isomorphism_report(parse_perfect_ring("F2"), 5);
  EXPECT_EQ(r.verdict, "verified");
  for (const auto& L : r.level_reports) {
    EXPECT_EQ(L.kernel_order, 1);
    ASSERT_TRUE(L.killed_at_m);
    EXPECT_EQ(*L.killed_at_m, L.n);
  }
}

TEST(ProIso, F3LevelOneKilledImmediately) {
  const auto r = pro_isomorphism_report(parse_perfect_ring("F3"), 3);
  ASSERT_TRUE(r.level_reports[0].killed_at_m);
  EXPECT_EQ(*r.level_reports[0].killed_at_m, 1u);
}

TEST(ProIso, ReportIsDeterministicAndKernelsShrink) {
  const PerfectRing F4 = parse_perfect_ring("F4");
  const auto a = pro_isomorphism_report(F4, 4), b = pro_isomorphism_report(F4, 4);
  ASSERT_EQ(a.level_reports.size(), b.level_reports.size());
  for (std::size_t i = 0; i < a.level_reports.size(); ++i) {
    const auto &x = a.level_reports[i], &y = b.level_reports[i];
    EXPECT_EQ(x.source_factors, y.source_factors);
    EXPECT_EQ(x.kernel_order, y.kernel_order);
    EXPECT_EQ(x.killed_at_m, y.killed_at_m);
    EXPECT_EQ(x.kernel_image_orders, y.kernel_image_orders);
    EXPECT_TRUE(x.well_defined);
    EXPECT_TRUE(x.surjective);
    EXPECT_TRUE(x.compatible);
    for (std::size_t j = 1; j < x.kernel_image_orders.size(); ++j)
      EXPECT_LE(x.kernel_image_orders[j], x.kernel_image_orders[j - 1]);
  }
  EXPECT_EQ(a.verdict, b.verdict);
}

TEST(ProIso, CapOneIsInconclusive) {
  EXPECT_EQ(pro_isomorphism_report(parse_perfect_ring("F2"), 1).verdict, "inconclusive");
}

TEST(GeneralizedComparison, IdentityReproducesReport) {
  const PerfectRing R = parse_perfect_ring("F3");
  std::vector<PerfectRing::Element> id{0, 1, 2};
  const auto g = generalized_comparison(FiniteCommMonoid::multiplicative(R), id, R, 3);
  const auto r = pro_isomorphism_report(R, 3);
  ASSERT_EQ(g.level_reports.size(), r.level_reports.size());
  for (std::size_t i = 0; i < g.level_reports.size(); ++i) {
    EXPECT_EQ(g.level_reports[i].source_factors, r.level_reports[i].source_factors);
    EXPECT_EQ(g.level_reports[i].kernel_order, r.level_reports[i].kernel_order);
    EXPECT_EQ(g.level_reports[i].killed_at_m, r.level_reports[i].killed_at_m);
  }
  EXPECT_EQ(g.verdict, r.verdict);
}

TEST(GeneralizedComparison, F4MonoidOverF2) {
  const PerfectRing F2 = parse_perfect_ring("F2"), F4 = parse_perfect_ring("F4");
  const auto g = generalized_comparison(FiniteCommMonoid::multiplicative(F4), {0, 1, 1, 1}, F2, 4);
  ASSERT_EQ(g.level_reports.size(), 4u);
  for (const auto& L : g.level_reports) {
    EXPECT_TRUE(L.well_defined);
    EXPECT_TRUE(L.surjective);
    EXPECT_TRUE(L.is_ring_map);
  }
  EXPECT_NE(g.verdict, "falsified");
}

TEST(GeneralizedComparison, RejectsNonPDivisibleMonoid) {
  const FiniteCommMonoid nil({{0, 1, 2}, {1, 2, 2}, {2, 2, 2}}, 0);
  EXPECT_THROW(generalized_comparison(nil, {1, 0, 0}, parse_perfect_ring("F2"), 3), HypothesisViolation);
}

TEST(UniversalProperty, PrimeFieldIntoIntegersModPower) {
  for (auto [p, n] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    std::int64_t q = 1;
    for (int i = 0; i < n; ++i) q *= p;
    const auto r = universal_property_check(PerfectRing::field(p, 1), FiniteRing::integers_mod(q));
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.monoid_maps.size(), 1u);
    EXPECT_EQ(r.witt_homs.size(), 1u);
    EXPECT_EQ(r.k, static_cast<unsigned>(n));
  }
}

TEST(UniversalProperty, NoMapsFromF4ToF2) {
  const auto r = universal_property_check(parse_perfect_ring("F4"), FiniteRing::integers_mod(2));
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.monoid_maps.empty());
  EXPECT_TRUE(r.witt_homs.empty());
}

TEST(UniversalProperty, DualNumbers) {
  const auto r = universal_property_check(parse_perfect_ring("F2"), dual_numbers(2));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.monoid_maps.size(), r.witt_homs.size());
}

TEST(UniversalProperty, NaturalUnderReduction) {
  const PerfectRing F2 = parse_perfect_ring("F2");
  const FiniteRing Z8 = FiniteRing::integers_mod(8), Z4 = FiniteRing::integers_mod(4);
  const auto r8 = universal_property_check(F2, Z8), r4 = universal_property_check(F2, Z4);
  std::set<ElementMap> maps4(r4.monoid_maps.begin(), r4.monoid_maps.end());
  for (const auto& f : r8.monoid_maps) {
    ElementMap g;
    for (const auto& c : f) g.push_back(Coords{c[0] % 4});
    EXPECT_TRUE(maps4.count(g));
  }
}

TEST(UniversalProperty, RejectsNonTorsionTargets) {
  EXPECT_THROW(universal_property_check(parse_perfect_ring("F2"), FiniteRing::integers_mod(6)), HypothesisViolation);
}

TEST(TiltCorrespondence, Examples) {
  const PerfectRing F2 = parse_perfect_ring("F2"), F4 = parse_perfect_ring("F4");
  const auto z8 = tilt_correspondence_check(F2, FiniteRing::integers_mod(8));
  EXPECT_TRUE(z8.holds);
  EXPECT_EQ(z8.tilt, "F2");
  EXPECT_EQ(z8.witt_homs.size(), 1u);
  EXPECT_EQ(z8.tilt_homs.size(), 1u);

  const auto w = tilt_correspondence_check(F4, GaloisRing(2, 2, 2).as_finite_ring());
  EXPECT_TRUE(w.holds);
  EXPECT_EQ(w.tilt, "F4");
  EXPECT_EQ(w.witt_homs.size(), 2u);
  EXPECT_EQ(w.tilt_homs.size(), 2u);

  const auto z4 = tilt_correspondence_check(F4, FiniteRing::integers_mod(4));
  EXPECT_TRUE(z4.holds);
  EXPECT_EQ(z4.tilt, "F2");
  EXPECT_TRUE(z4.witt_homs.empty());
  EXPECT_TRUE(z4.tilt_homs.empty());

  const auto d = tilt_correspondence_check(F2, dual_numbers(2));
  EXPECT_TRUE(d.holds);
  EXPECT_EQ(d.tilt, "F2");
}
