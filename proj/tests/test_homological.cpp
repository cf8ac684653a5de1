#include <gtest/gtest.h>

#include "wittcd/homological.hpp"

using namespace wittcd;

namespace {

// A acting on itself
FpModule regular_module(const FpAlgebra& A) {
  const std::size_t d = A.dimension();
  std::vector<FpMatrix> act;
  for (std::size_t i = 0; i < d; ++i) {
    FpMatrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) m.cols[j] = A.product(i, j);
    act.push_back(m);
  }
  return FpModule(A, d, std::move(act), "A");
}

// F_p[x]/(x^k) as a module over F_p[x]/(x^n), k <= n
FpModule truncated_quotient(const FpAlgebra& A, std::size_t k) {
  const std::size_t n = A.dimension();
  std::vector<FpMatrix> act;
  for (std::size_t i = 0; i < n; ++i) {
    FpMatrix m(k, k);
    for (std::size_t j = 0; j + i < k; ++j) m.cols[j][j + i] = 1;
    act.push_back(m);
  }
  return FpModule(A, k, std::move(act), "x^" + std::to_string(k));
}

}  // namespace

TEST(Tor, FreeModuleHasNoHigherTor) {
  const FpAlgebra A = truncated_polynomial_algebra(2, 3);
  const FpModule F = regular_module(A);
  for (const auto& C : {residue_module(A), truncated_quotient(A, 2), F}) {
    const auto r = tor(A, F, C, 3);
    EXPECT_EQ(r.betti[0], C.dimension());
    for (std::size_t i = 1; i < r.betti.size(); ++i) EXPECT_EQ(r.betti[i], 0u);
    EXPECT_TRUE(r.tor0_matches);
  }
}

TEST(Tor, TruncatedPolynomialResidueField) {
  // the resolution ... -> A -x^{n-1}-> A -x-> A -> F_p is periodic with rank one terms
  for (auto [p, n] : {std::pair{2u, 2u}, std::pair{3u, 2u}, std::pair{2u, 3u}, std::pair{5u, 4u}}) {
    const FpAlgebra A = truncated_polynomial_algebra(p, n);
    const FpModule k = residue_module(A);
    const auto r = tor(A, k, k, 4);
    EXPECT_EQ(r.betti, (std::vector<std::size_t>(5, 1))) << A.name();
    EXPECT_FALSE(r.vanishing());
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(r.free_ranks[i], 1u);
  }
}

TEST(Tor, TruncatedQuotientByHand) {
  // over F_3[x]/(x^3) with C = F_3[x]/(x^2): Tor_0 = C/xC, Tor_odd = ker x / im x^2, Tor_even = ker x^2 / im x
  const FpAlgebra A = truncated_polynomial_algebra(3, 3);
  const auto r = tor(A, residue_module(A), truncated_quotient(A, 2), 4);
  EXPECT_EQ(r.betti, (std::vector<std::size_t>{1, 1, 1, 1, 1}));
}

TEST(Tor, SymmetricInTheModules) {
  const FpAlgebra A = truncated_polynomial_algebra(2, 4);
  const std::vector<FpModule> mods = {residue_module(A), truncated_quotient(A, 2), truncated_quotient(A, 3)};
  for (const auto& B : mods)
    for (const auto& C : mods) {
      const auto bc = tor(A, B, C, 3), cb = tor(A, C, B, 3);
      EXPECT_EQ(bc.betti, cb.betti) << B.name() << " " << C.name();
      EXPECT_TRUE(bc.tor0_matches);
    }
}

TEST(Tor, MonoidAlgebraOfPerfectRing) {
  for (const char* spec : {"F2", "F3", "F4", "F2xF2"}) {
    const PerfectRing R = parse_perfect_ring(spec);
    const FpAlgebra A = monoid_algebra_fp(R);
    const FpModule M = augmentation_module(A, R);
    const auto r = tor(A, M, M, 3);
    EXPECT_TRUE(r.vanishing()) << spec;
    EXPECT_EQ(r.betti[0], R.dimension());
    EXPECT_TRUE(r.tor0_matches);
  }
}

TEST(Tor, SurjectionOfPerfectRings) {
  const PerfectRing R = parse_perfect_ring("F2xF4"), S = parse_perfect_ring("F4");
  const FpAlgebra A = perfect_algebra(R);
  const FpModule M = module_via(A, R, S, factor_projection(R, S));
  const auto r = tor(A, M, M, 3);
  EXPECT_TRUE(r.vanishing());
  EXPECT_EQ(r.betti[0], S.dimension());
  EXPECT_THROW(factor_projection(parse_perfect_ring("F4"), parse_perfect_ring("F8")), std::invalid_argument);
}

TEST(Hochschild, PerfectRingsAreFormallyEtale) {
  for (const char* spec : {"F2", "F3", "F4", "F8", "F9", "F2xF2"}) {
    const PerfectRing R = parse_perfect_ring(spec);
    const auto r = hochschild_check(R, 3);
    EXPECT_TRUE(r.vanishing()) << spec;
    EXPECT_EQ(r.betti[0], R.dimension());
    EXPECT_TRUE(r.tor0_matches);
  }
}

TEST(Hochschild, TensorSquareIsAnAlgebra) {
  const PerfectRing F4 = parse_perfect_ring("F4");
  const FpAlgebra RR = tensor_square(F4);
  EXPECT_EQ(RR.dimension(), 4u);
  EXPECT_NO_THROW(multiplication_module(RR, F4));
}

TEST(FpAlgebra, RejectsBadTables) {
  // e_0 is declared the unit but squares to e_1; 4 is not prime
  EXPECT_THROW(FpAlgebra(2, 2, {{0, 1}, {0, 1}, {0, 1}, {1, 1}}, {1, 0}, "bad"), std::invalid_argument);
  EXPECT_THROW(FpAlgebra(4, 1, {{1}}, {1}, "bad"), std::invalid_argument);
}
