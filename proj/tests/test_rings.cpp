#include <gtest/gtest.h>

#include <set>

#include "wittcd/finite_ring.hpp"
#include "wittcd/galois_ring.hpp"
#include "wittcd/perfect_ring.hpp"
#include "wittcd/witt_ring.hpp"

using namespace wittcd;

namespace {

// F_4 = F_2[x]/(x^2 + x + 1) with a + b·x encoded as a + 2b, multiplied by hand
std::uint32_t f4_mul(std::uint32_t u, std::uint32_t v) {
  const unsigned a = u & 1, b = u >> 1, c = v & 1, d = v >> 1;
  // (a + bx)(c + dx) = ac + (ad + bc)x + bd·x^2, with x^2 = x + 1
  const unsigned c0 = (a * c + b * d) & 1;
  const unsigned c1 = (a * d + b * c + b * d) & 1;
  return c0 + 2 * c1;
}

FiniteRing truncated(std::int64_t p, std::size_t n) {
  std::vector<Coords> t(n * n, Coords(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) t[i * n + j][i + j] = 1;
  Coords one(n, 0);
  one[0] = 1;
  return FiniteRing(std::vector<std::int64_t>(n, p), t, one, "trunc");
}

}  // namespace

TEST(FiniteField, ModulusIsLeastIrreducible) {
  EXPECT_EQ(FiniteField(2, 2).modulus(), (Poly{1, 1, 1}));
  EXPECT_EQ(FiniteField(3, 2).modulus(), (Poly{1, 0, 1}));
  EXPECT_EQ(FiniteField(2, 3).modulus(), (Poly{1, 1, 0, 1}));
}

TEST(FiniteField, F4MultiplicationTable) {
  const FiniteField F(2, 2);
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) EXPECT_EQ(F.mul(a, b), f4_mul(a, b));
}

TEST(PerfectRing, FrobeniusExamples) {
  const PerfectRing F4 = parse_perfect_ring("F4");
  const std::uint32_t omega = 2;
  EXPECT_EQ(F4.frobenius(omega), 3u);  // ω + 1
  EXPECT_EQ(F4.inverse_frobenius(3), omega);
  EXPECT_EQ(F4.frobenius(0), 0u);
  EXPECT_EQ(F4.inverse_frobenius(1), 1u);
  const PerfectRing F9 = parse_perfect_ring("F9");
  for (std::uint32_t x = 0; x < 9; ++x) {
    EXPECT_EQ(F9.inverse_frobenius(x), F9.pow(x, 3));
    EXPECT_EQ(F9.pow(F9.inverse_frobenius(x), 3), x);
  }
  for (const char* spec : {"F2", "F3", "F4", "F9", "F2xF4"}) {
    const PerfectRing R = parse_perfect_ring(spec);
    for (long long n = 0; n < 5; ++n) {
      const auto x = R.from_integer(n);
      EXPECT_EQ(R.frobenius(x), x) << spec;
    }
  }
}

TEST(PerfectRing, FrobeniusIsABijectiveRingMap) {
  for (const char* spec : {"F2", "F3", "F4", "F5", "F8", "F9", "F2xF4", "F3xF9", "F16"}) {
    const PerfectRing R = parse_perfect_ring(spec);
    std::set<std::uint32_t> image;
    for (std::uint32_t x = 0; x < R.size(); ++x) {
      image.insert(R.frobenius(x));
      EXPECT_EQ(R.inverse_frobenius(R.frobenius(x)), x);
      EXPECT_EQ(R.frobenius(R.inverse_frobenius(x)), x);
      EXPECT_EQ(R.frobenius(x), R.pow(x, R.characteristic()));
      for (std::uint32_t y = 0; y < R.size(); ++y) {
        ASSERT_EQ(R.frobenius(R.add(x, y)), R.add(R.frobenius(x), R.frobenius(y)));
        ASSERT_EQ(R.frobenius(R.mul(x, y)), R.mul(R.frobenius(x), R.frobenius(y)));
      }
    }
    EXPECT_EQ(image.size(), R.size()) << spec;
  }
}

TEST(PerfectRing, CommutativeRingAxioms) {
  for (const char* spec : {"F4", "F2xF4", "F9"}) {
    const PerfectRing R = parse_perfect_ring(spec);
    for (std::uint32_t a = 0; a < R.size(); ++a)
      for (std::uint32_t b = 0; b < R.size(); ++b) {
        ASSERT_EQ(R.mul(a, b), R.mul(b, a));
        ASSERT_EQ(R.add(a, R.neg(a)), R.zero());
        for (std::uint32_t c = 0; c < R.size(); ++c) {
          ASSERT_EQ(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c)));
          ASSERT_EQ(R.mul(a, R.mul(b, c)), R.mul(R.mul(a, b), c));
        }
      }
  }
}

TEST(PerfectRing, ParseErrors) {
  EXPECT_THROW(parse_perfect_ring("F6"), std::invalid_argument);
  EXPECT_THROW(parse_perfect_ring("G2"), std::invalid_argument);
  EXPECT_THROW(parse_perfect_ring("F2xF3"), std::invalid_argument);
}

TEST(Monoid, PDivisibility) {
  EXPECT_TRUE(is_p_divisible_monoid(FiniteCommMonoid::multiplicative(parse_perfect_ring("F4")), 2));
  EXPECT_TRUE(is_p_divisible_monoid(FiniteCommMonoid({{0, 0}, {0, 1}}, 1), 2));
  // 1, a, z with a^2 = z absorbing: squaring misses a
  const FiniteCommMonoid nil({{0, 1, 2}, {1, 2, 2}, {2, 2, 2}}, 0);
  EXPECT_FALSE(is_p_divisible_monoid(nil, 2));
  // the same shape for p = 3: a^3 = z
  const FiniteCommMonoid nil3({{0, 1, 2, 3}, {1, 2, 3, 3}, {2, 3, 3, 3}, {3, 3, 3, 3}}, 0);
  EXPECT_FALSE(is_p_divisible_monoid(nil3, 3));
}

TEST(FiniteRing, ValidatesAxioms) {
  EXPECT_THROW(FiniteRing({4}, {{2}}, {1}), std::invalid_argument);  // 1·1 = 2 breaks the unit law
  EXPECT_NO_THROW(truncated(2, 3));
  const FiniteRing Z8 = FiniteRing::integers_mod(8);
  EXPECT_EQ(Z8.order(), 8u);
  EXPECT_EQ(Z8.p_exponent(2), 3u);
  EXPECT_FALSE(FiniteRing::integers_mod(6).p_exponent(2).has_value());
}

TEST(RingHoms, Counts) {
  const PerfectRing F2 = parse_perfect_ring("F2"), F4 = parse_perfect_ring("F4");
  EXPECT_EQ(ring_homs(F2, F2).size(), 1u);
  EXPECT_EQ(ring_homs(F4, F4).size(), 2u);
  EXPECT_TRUE(ring_homs(F4, F2).empty());
  // Hom(F4, F4) = {identity, frobenius}
  const auto h = ring_homs(F4, F4);
  std::set<std::vector<std::uint32_t>> got(h.begin(), h.end());
  std::vector<std::uint32_t> id{0, 1, 2, 3}, frob;
  for (std::uint32_t x = 0; x < 4; ++x) frob.push_back(F4.frobenius(x));
  EXPECT_EQ(got, (std::set<std::vector<std::uint32_t>>{id, frob}));
}

TEST(RingHoms, PerfectSearchMatchesBruteForce) {
  const std::vector<FiniteRing> targets = {FiniteRing::integers_mod(2), FiniteRing::from_perfect_ring(parse_perfect_ring("F4")),
                                           FiniteRing::from_perfect_ring(parse_perfect_ring("F2xF4")),
                                           FiniteRing::from_perfect_ring(parse_perfect_ring("F2xF2")), truncated(2, 2)};
  for (const char* spec : {"F2", "F4", "F2xF2", "F2xF4"}) {
    const PerfectRing R = parse_perfect_ring(spec);
    const FiniteRing A = FiniteRing::from_perfect_ring(R);
    for (const auto& B : targets) {
      const auto fast = ring_homs(R, B);
      const auto brute = ring_homs(A, B);
      EXPECT_EQ(fast.size(), brute.size()) << spec << " -> " << B.name();
    }
  }
}

TEST(RingHoms, CompositionStaysInHomSets) {
  const PerfectRing F4 = parse_perfect_ring("F4"), F2F4 = parse_perfect_ring("F2xF4");
  const auto ab = ring_homs(F2F4, F4);
  const auto bc = ring_homs(F4, F2F4);
  const auto ac = ring_homs(F2F4, F2F4);
  std::set<std::vector<std::uint32_t>> acs(ac.begin(), ac.end());
  for (const auto& f : ab)
    for (const auto& g : bc) {
      std::vector<std::uint32_t> h(F2F4.size());
      for (std::uint32_t x = 0; x < F2F4.size(); ++x) h[x] = g[f[x]];
      EXPECT_TRUE(acs.count(h));
    }
}

TEST(Tilt, Examples) {
  for (std::int64_t n : {2, 4, 8, 9, 27}) {
    const std::uint32_t p = n % 2 == 0 ? 2 : 3;
    const Tilt t = tilt(FiniteRing::integers_mod(n), p);
    EXPECT_EQ(t.ring.name(), "F" + std::to_string(p));
    EXPECT_TRUE(t.reduction_is_perfect);
  }
  const Tilt te = tilt(truncated(2, 2), 2);
  EXPECT_EQ(te.ring.name(), "F2");
  EXPECT_FALSE(te.reduction_is_perfect);
  EXPECT_EQ(te.stabilization_index, 1u);

  const Tilt tw = tilt(GaloisRing(2, 2, 2).as_finite_ring(), 2);
  EXPECT_EQ(tw.ring.name(), "F4");
  EXPECT_TRUE(tw.reduction_is_perfect);
  const Tilt tw2 = tilt(WittRing(parse_perfect_ring("F4"), 2).as_finite_ring(), 2);
  EXPECT_EQ(tw2.ring.name(), "F4");
}

TEST(Tilt, AlwaysPerfectAndEqualToReductionIffPerfect) {
  const std::vector<FiniteRing> rings = {truncated(2, 3), truncated(3, 2), FiniteRing::integers_mod(16),
                                         FiniteRing::from_perfect_ring(parse_perfect_ring("F2xF4")),
                                         GaloisRing(3, 2, 2).as_finite_ring()};
  for (const auto& A : rings) {
    const std::uint32_t p = A.characteristic() % 2 == 0 ? 2 : 3;
    const Tilt t = tilt(A, p);
    for (std::uint32_t x = 0; x < t.ring.size(); ++x) EXPECT_EQ(t.embedding[t.ring.frobenius(x)], t.reduction.pow(t.embedding[x], p));
    const bool reduction_perfect = [&] {
      std::set<Coords> image;
      for (const auto& x : t.reduction.elements()) image.insert(t.reduction.pow(x, p));
      return image.size() == t.reduction.order();
    }();
    EXPECT_EQ(t.reduction_is_perfect, reduction_perfect);
    EXPECT_EQ(t.reduction_is_perfect, t.ring.size() == t.reduction.order());
  }
}

TEST(Tilt, SharpIsMultiplicativeSection) {
  const FiniteRing A = GaloisRing(2, 2, 3).as_finite_ring();
  const Tilt t = tilt(A, 2);
  for (std::uint32_t x = 0; x < t.ring.size(); ++x) {
    EXPECT_EQ(A.reduce_mod_integer(sharp(A, t, x, 2), 2), t.embedding[x]);
    for (std::uint32_t y = 0; y < t.ring.size(); ++y)
      EXPECT_EQ(sharp(A, t, t.ring.mul(x, y), 2), A.mul(sharp(A, t, x, 2), sharp(A, t, y, 2)));
  }
}
