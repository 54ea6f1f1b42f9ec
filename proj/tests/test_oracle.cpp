#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "cdual/benchmark_problems.hpp"
#include "cdual/errors.hpp"
#include "cdual/oracle.hpp"

using namespace cdual;

namespace {

MultiPoly shifted_bowl(Rational a, Rational b) {
  MultiPoly x = MultiPoly::variable(2, 0);
  MultiPoly y = MultiPoly::variable(2, 1);
  return (x - MultiPoly::constant(2, a)).pow(2) + (y - MultiPoly::constant(2, b)).pow(2);
}

}  // namespace

TEST(Lcg, MatchesReferenceRecurrence) {
  Lcg rng(42);
  std::uint64_t state = 42;
  for (int i = 0; i < 100; ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    std::uint64_t bits = state >> 31;
    ASSERT_EQ(rng.next_bits(), bits);
  }
  Lcg u(1);
  for (int i = 0; i < 1000; ++i) {
    double v = u.next_unit();
    ASSERT_GE(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(Box, RejectsEmpty) {
  EXPECT_THROW(Box(Vec{1.0}, Vec{1.0}), ValidationError);
  EXPECT_THROW(Box(Vec{0.0, 0.0}, Vec{1.0}), ValidationError);
}

TEST(GridScan, NearestNode) {
  MultiPoly p = shifted_bowl(Rational(31, 100), Rational(-52, 100));
  OracleResult r = grid_scan(p, Box(Vec{-1, -1}, Vec{1, 1}), 11);
  EXPECT_NEAR(r.x_best[0], 0.4, 1e-12);
  EXPECT_NEAR(r.x_best[1], -0.6, 1e-12);
  EXPECT_EQ(r.n_evaluations, 121U);
}

TEST(GridScan, LexicographicTieBreak) {
  MultiPoly x = MultiPoly::variable(2, 0);
  OracleResult r = grid_scan(x.pow(2), Box(Vec{-1, -2}, Vec{1, 2}), 5);
  EXPECT_EQ(r.x_best[0], 0.0);
  EXPECT_EQ(r.x_best[1], -2.0);
}

TEST(GridScan, NeedsTwoNodes) {
  EXPECT_THROW(grid_scan(shifted_bowl(0, 0), Box(Vec{-1, -1}, Vec{1, 1}), 1), ValidationError);
}

TEST(LocalRefine, Rosenbrock) {
  MultiPoly x = MultiPoly::variable(2, 0);
  MultiPoly y = MultiPoly::variable(2, 1);
  MultiPoly one = MultiPoly::constant(2, 1);
  MultiPoly rosen = (one - x).pow(2) + (y - x.pow(2)).pow(2).scale(100);
  Vec r = local_refine(rosen, Vec{-1.2, 1.0}, 1e-10);
  EXPECT_NEAR(r[0], 1.0, 1e-7);
  EXPECT_NEAR(r[1], 1.0, 1e-7);
}

TEST(Multistart, ThreadCountDoesNotChangeResult) {
  MultiPoly p = gp_objective();
  OracleResult a = multistart(p, gp_default_box(), 64, 42, 1);
  OracleResult b = multistart(p, gp_default_box(), 64, 42, 4);
  EXPECT_EQ(std::bit_cast<std::uint64_t>(a.value), std::bit_cast<std::uint64_t>(b.value));
  EXPECT_EQ(a.x_best, b.x_best);
  EXPECT_NEAR(a.value, 3.0, 1e-6);
}

TEST(Multistart, ThreeHumpCamel) {
  // Three Hump Camel: global min 0 at the origin, two local minima elsewhere.
  OracleResult r = multistart(thc_objective(), thc_default_box(), 64, 42);
  EXPECT_NEAR(r.value, 0.0, 1e-10);
  EXPECT_NEAR(r.x_best[0], 0.0, 1e-6);
  EXPECT_NEAR(r.x_best[1], 0.0, 1e-6);
}

TEST(DerivativeRoots, SimpleRoots) {
  // p = (x - 1)^2 (x + 2): p' = 3 (x - 1)(x + 1).
  MultiPoly x = MultiPoly::variable(1, 0);
  MultiPoly p = (x - MultiPoly::constant(1, 1)).pow(2) * (x + MultiPoly::constant(1, 2));
  auto roots = derivative_roots(p, -5.0, 5.0);
  ASSERT_EQ(roots.size(), 2U);
  EXPECT_NEAR(roots[0], -1.0, 1e-12);
  EXPECT_NEAR(roots[1], 1.0, 1e-12);
}

TEST(DerivativeRoots, TangentialRootIsReported) {
  // p' = 3 (x - 1)^2 touches zero without changing sign.
  MultiPoly x = MultiPoly::variable(1, 0);
  MultiPoly p = (x - MultiPoly::constant(1, 1)).pow(3);
  EXPECT_THROW(derivative_roots(p, -3.0, 3.3), RootIsolationFailure);
}

TEST(UnivariateGlobal, EndpointsCount) {
  // p = -x^2 on [-1, 2]: interior critical point is a max, min at x = 2.
  MultiPoly p = -MultiPoly::variable(1, 0).pow(2);
  UnivariateResult r = univariate_global(p, -1.0, 2.0);
  EXPECT_EQ(r.best.x_best[0], 2.0);
  EXPECT_EQ(r.best.value, -4.0);
  ASSERT_EQ(r.critical_points.size(), 1U);
}

TEST(CauchyBound, ContainsRoots) {
  // h'(s) / 12 = (s - 2)(s - 1)(s + 1)
  MultiPoly s = MultiPoly::variable(1, 0);
  MultiPoly q = (s - MultiPoly::constant(1, 2)) * (s - MultiPoly::constant(1, 1)) * (s + MultiPoly::constant(1, 1));
  EXPECT_GE(cauchy_root_bound(q), 2.0);
}
