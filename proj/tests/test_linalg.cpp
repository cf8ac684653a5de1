#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "wittcd/linalg.hpp"

using namespace wittcd;

namespace {

BigInt det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  BigInt s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = a(i, j);
    const BigInt term = a(0, c) * det(minor);
    s += (c % 2 == 0) ? term : BigInt(-term);
  }
  return s;
}

// gcd of all k×k minors: the k-th determinantal divisor
BigInt determinantal_divisor(const IntMatrix& a, std::size_t k) {
  std::vector<std::size_t> rows(k), cols(k);
  BigInt g = 0;
  std::function<void(std::size_t, std::size_t)> pick_cols;
  std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t i, std::size_t start) {
    if (i == k) {
      pick_cols(0, 0);
      return;
    }
    for (std::size_t r = start; r < a.rows(); ++r) {
      rows[i] = r;
      pick_rows(i + 1, r + 1);
    }
  };
  pick_cols = [&](std::size_t j, std::size_t start) {
    if (j == k) {
      IntMatrix m(k, k);
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) m(x, y) = a(rows[x], cols[y]);
      g = gcd(g, det(m));
      return;
    }
    for (std::size_t c = start; c < a.cols(); ++c) {
      cols[j] = c;
      pick_cols(j + 1, c + 1);
    }
  };
  pick_rows(0, 0);
  return abs(g);
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  IntMatrix m(r, c);
  std::uniform_int_distribution<int> d(-bound, bound);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Z[F_2] on the basis ([1], [0]): [1][1] = [1], [1][0] = [0][0] = [0]
StructureConstants group_ring_f2() {
  StructureConstants s(2);
  s.product(0, 0) = {1, 0};
  s.product(0, 1) = {0, 1};
  s.product(1, 0) = {0, 1};
  s.product(1, 1) = {0, 1};
  return s;
}

}  // namespace

TEST(SmithNormalForm, Identity) {
  const auto s = smith_normal_form(IntMatrix::identity(2));
  EXPECT_EQ(s.D, IntMatrix::identity(2));
  EXPECT_EQ(s.U, IntMatrix::identity(2));
  EXPECT_EQ(s.V, IntMatrix::identity(2));
}

TEST(SmithNormalForm, AlreadyDiagonal) {
  const auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 0}});
  EXPECT_EQ(s.D, (IntMatrix{{2, 0}, {0, 0}}));
}

TEST(SmithNormalForm, TwoByTwoAgainstDeterminantalDivisors) {
  const IntMatrix a{{2, 4}, {6, 8}};
  const BigInt d1 = determinantal_divisor(a, 1);
  const BigInt d2 = determinantal_divisor(a, 2) / d1;
  ASSERT_EQ(d1, 2);
  ASSERT_EQ(d2, 4);
  const auto s = smith_normal_form(a);
  EXPECT_EQ(s.D, (IntMatrix{{static_cast<long long>(d1), 0}, {0, static_cast<long long>(d2)}}));
  EXPECT_EQ(s.U * a * s.V, s.D);
}

TEST(SmithNormalForm, RandomMatricesMatchOracle) {
  std::mt19937_64 rng(20240601);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
    const IntMatrix a = random_matrix(rng, r, c, 12);
    const auto s = smith_normal_form(a);
    ASSERT_EQ(s.U * a * s.V, s.D);
    ASSERT_EQ(s.V * s.V_inverse, IntMatrix::identity(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) ASSERT_EQ(s.D(i, j), 0);
    const auto d = s.diagonal();
    EXPECT_TRUE(has_divisibility_chain(d));
    BigInt prev = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      const BigInt dk = determinantal_divisor(a, k);
      if (dk == 0) {
        EXPECT_EQ(d[k - 1], 0);
        continue;
      }
      EXPECT_EQ(d[k - 1], dk / prev) << "k=" << k;
      prev = dk;
    }
  }
}

TEST(Cokernel, Examples) {
  const auto g1 = FinAbGroup::cokernel(IntMatrix{{2, 0}}, 2);
  EXPECT_EQ(g1.invariant_factors(), (IntVector{2, 0}));
  EXPECT_FALSE(g1.is_finite());

  const auto g2 = FinAbGroup::cokernel(IntMatrix{{2, 0}, {0, 2}}, 2);
  EXPECT_EQ(g2.invariant_factors(), (IntVector{2, 2}));
  EXPECT_EQ(g2.order(), 4);

  const auto g3 = FinAbGroup::cokernel(IntMatrix{{2, 4}, {6, 8}}, 2);
  EXPECT_EQ(g3.invariant_factors(), (IntVector{2, 4}));
}

TEST(Cokernel, OrderIsAbsoluteDeterminant) {
  std::mt19937_64 rng(7);
  int tested = 0;
  while (tested < 100) {
    const std::size_t n = 1 + rng() % 3;
    const IntMatrix a = random_matrix(rng, n, n, 9);
    const BigInt d = det(a);
    if (d == 0) continue;
    ++tested;
    const auto g = FinAbGroup::cokernel(a, n);
    EXPECT_EQ(g.order(), abs(d));
    EXPECT_TRUE(has_divisibility_chain(g.invariant_factors()));
    // reduction is idempotent and kills the relations
    for (std::size_t i = 0; i < n; ++i) {
      const IntVector row = a.row(i);
      for (const auto& x : g.reduce(row)) EXPECT_EQ(x, 0);
    }
    IntVector v(n);
    for (auto& x : v) x = static_cast<int>(rng() % 50) - 25;
    const IntVector y = g.reduce(v);
    EXPECT_EQ(g.reduce(g.lift(y)), y);
  }
}

TEST(Lattice, HermiteFormIsCanonical) {
  const Lattice a(2, {{2, 0}, {0, 1}});
  const Lattice b(2, {{2, 1}, {0, 1}, {4, 3}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.index(), 2);
  EXPECT_TRUE(a.contains(IntVector{4, 7}));
  EXPECT_FALSE(a.contains(IntVector{1, 0}));
}

TEST(LatticeProduct, UnitAndZeroIdeals) {
  const auto mult = group_ring_f2();
  EXPECT_EQ(lattice_product(Lattice::full(2), Lattice::full(2), mult), Lattice::full(2));
  EXPECT_EQ(lattice_product(Lattice::zero(2), Lattice::full(2), mult), Lattice::zero(2));
}

TEST(LatticeProduct, AugmentationIdealSquared) {
  const auto mult = group_ring_f2();
  const Lattice I(2, {{2, 0}, {0, 1}});
  // products of the generators: 4[1], 2[0], [0]
  const Lattice expected(2, {{4, 0}, {0, 2}, {0, 1}});
  EXPECT_EQ(lattice_product(I, I, mult), expected);
  EXPECT_EQ(expected, Lattice(2, {{4, 0}, {0, 1}}));
}

TEST(LatticeProduct, CommutativeAndAssociative) {
  // Z[(F_3,·)] on the basis ([0],[1],[2])
  StructureConstants mult(3);
  const int table[3][3] = {{0, 0, 0}, {0, 1, 2}, {0, 2, 1}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      IntVector v(3);
      v[table[a][b]] = 1;
      mult.product(a, b) = v;
    }
  std::mt19937_64 rng(11);
  auto random_lattice = [&] {
    Lattice L(3);
    for (int i = 0; i < 2; ++i) {
      IntVector v(3);
      for (auto& x : v) x = static_cast<int>(rng() % 7) - 3;
      L.add(v);
    }
    return L;
  };
  for (int t = 0; t < 30; ++t) {
    const Lattice a = random_lattice(), b = random_lattice(), c = random_lattice();
    EXPECT_EQ(lattice_product(a, b, mult), lattice_product(b, a, mult));
    EXPECT_EQ(lattice_product(lattice_product(a, b, mult), c, mult),
              lattice_product(a, lattice_product(b, c, mult), mult));
  }
}

TEST(HomDivisible, Examples) {
  const IntVector zp{3};
  auto h0 = hom_divisible_by_p(GroupEndomorphism::zero(zp), 3);
  ASSERT_TRUE(h0);
  EXPECT_TRUE(h0->is_zero());

  EXPECT_FALSE(hom_divisible_by_p(GroupEndomorphism::identity(zp), 3));

  const IntVector zp2{9};
  auto h = hom_divisible_by_p(GroupEndomorphism(zp2, IntMatrix{{3}}), 3);
  ASSERT_TRUE(h);
  EXPECT_EQ(*h, GroupEndomorphism::identity(zp2));
}

TEST(HomDivisible, AgreesWithExhaustiveSearch) {
  for (const IntVector& d : {IntVector{2, 4}, IntVector{2, 2, 4}, IntVector{4, 8}, IntVector{3, 9}, IntVector{8}}) {
    const std::size_t r = d.size();
    // all endomorphisms: entry (i, j) ranges over Z/d_i subject to d_j m_ij = 0
    std::vector<GroupEndomorphism> all;
    IntMatrix m(r, r);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == r * r) {
        all.emplace_back(d, m);
        return;
      }
      const std::size_t i = k / r, j = k % r;
      for (BigInt v = 0; v < d[i]; ++v)
        if ((d[j] * v) % d[i] == 0) {
          m(i, j) = v;
          rec(k + 1);
        }
      m(i, j) = 0;
    };
    rec(0);
    const BigInt p = d[0] % 2 == 0 ? 2 : 3;
    for (const auto& f : all) {
      bool exists = false;
      for (const auto& h : all)
        if (h.scaled(p) == f) exists = true;
      const auto got = hom_divisible_by_p(f, p);
      ASSERT_EQ(got.has_value(), exists);
      if (got) EXPECT_EQ(got->scaled(p), f);
    }
  }
}

TEST(LeftKernel, KernelModPrime) {
  // x·(1, 1)^T ≡ 0 mod 2
  const Lattice K = kernel_mod(IntMatrix{{1}, {1}}, 2);
  EXPECT_EQ(K, Lattice(2, {{1, 1}, {0, 2}}));
}
