#include <gtest/gtest.h>

#include <cmath>

#include "cdual/canonical.hpp"
#include "cdual/errors.hpp"

using cdual::CanonicalProblem;
using cdual::Rational;
using cdual::RationalMatrix;
using cdual::Vec;

namespace {

// g(t) = 3t^4 - 16t^3 + 18t^2 + 30 written as V(Lambda(t)) - U(t).
CanonicalProblem g_problem() {
  return CanonicalProblem(RationalMatrix{{Rational(106, 3)}}, {Rational(56)},
                          {{RationalMatrix{{Rational(2)}}, {Rational(-8, 3)}, Rational(-2)}},
                          cdual::ConvexQuadV{{{Rational(3), Rational(-9)}}});
}

double g_direct(double t) { return 3 * t * t * t * t - 16 * t * t * t + 18 * t * t + 30; }

// -F^2 / (2G) - V*(sigma) + sigma c, with G = 106/3 + 2 sigma, F = 56 + 8/3 sigma.
double g_dual_direct(double s) {
  double G = 106.0 / 3.0 + 2.0 * s;
  double F = 56.0 + 8.0 / 3.0 * s;
  return -F * F / (2.0 * G) - (s + 9.0) * (s + 9.0) / 12.0 - 2.0 * s;
}

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const cdual::ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(CanonicalProblem, Validation) {
  auto with_a = [](Rational a) {
    return CanonicalProblem(RationalMatrix{{1}}, {0}, {{RationalMatrix{{1}}, {0}, 0}}, cdual::ConvexQuadV{{{a, 0}}});
  };
  EXPECT_NE(message_of([&] { with_a(0); }).find("a[0] must be > 0"), std::string::npos);
  EXPECT_NE(message_of([&] { with_a(-1); }).find("a[0] must be > 0"), std::string::npos);

  auto asym = [] {
    CanonicalProblem(RationalMatrix{{1, 2}, {3, 1}}, {0, 0}, {{RationalMatrix::identity(2), {0, 0}, 0}},
                     cdual::ConvexQuadV{{{1, 0}}});
  };
  EXPECT_NE(message_of(asym).find("A must be symmetric"), std::string::npos);

  auto mismatch = [] {
    CanonicalProblem(RationalMatrix{{1}}, {0}, {{RationalMatrix{{1}}, {0}, 0}},
                     cdual::ConvexQuadV{{{1, 0}, {1, 0}}});
  };
  EXPECT_THROW(mismatch(), cdual::ValidationError);
}

TEST(CanonicalProblem, PrimalMatchesPolynomial) {
  CanonicalProblem pr = g_problem();
  for (double t : {-2.0, -0.5, 0.0, 1.0, 2.5, 3.0, 4.0}) {
    EXPECT_NEAR(cdual::primal_value(pr, Vec{t}), g_direct(t), 1e-10 * (1 + std::abs(g_direct(t))));
    double pt = t;
    EXPECT_NEAR(pr.symbolic_primal().eval(std::span<const double>(&pt, 1)), g_direct(t), 1e-10 * (1 + g_direct(t)));
  }
}

TEST(CanonicalProblem, DualMatchesHandDerivedFormula) {
  CanonicalProblem pr = g_problem();
  for (double s = -17.5; s < 60.0; s += 0.37) {
    double expect = g_dual_direct(s);
    EXPECT_NEAR(cdual::dual_value(pr, Vec{s}), expect, 1e-11 * std::max(1.0, std::abs(expect)));
  }
}

TEST(CanonicalProblem, DualGradientMatchesCentralDifference) {
  CanonicalProblem pr = g_problem();
  for (double s : {-17.0, -15.0, -10.0, 0.0, 12.0, 50.0}) {
    const double h = 1e-5 * (1 + std::abs(s));
    double fd = (g_dual_direct(s + h) - g_dual_direct(s - h)) / (2 * h);
    double an = cdual::dual_gradient(pr, Vec{s})[0];
    EXPECT_NEAR(an, fd, 1e-6 * std::max(1.0, std::abs(an)));
  }
}

TEST(CanonicalProblem, ConjugatePair) {
  // V(xi) + V*(sigma) == xi sigma when sigma = V'(xi).
  cdual::ConvexQuadV V{{{Rational(3), Rational(-9)}, {Rational(1, 2), Rational(4)}}};
  for (double xi0 : {-2.0, 0.0, 1.5}) {
    Vec xi{xi0, -xi0 / 3};
    Vec sigma{6 * xi[0] - 9, xi[1] + 4};
    EXPECT_NEAR(cdual::canonical_value(V, xi) + cdual::conjugate_value(V, sigma), xi.dot(sigma), 1e-12);
    Vec back = cdual::conjugate_gradient(V, sigma);
    EXPECT_NEAR(back[0], xi[0], 1e-14);
    EXPECT_NEAR(back[1], xi[1], 1e-14);
  }
}

TEST(CanonicalProblem, ComplementaryEqualsPrimalOnDualityMap) {
  CanonicalProblem pr = g_problem();
  for (double t : {-1.0, 0.5, 3.0}) {
    double xi = cdual::lambda_eval(pr, Vec{t})[0];
    Vec sigma{6 * xi - 9};
    EXPECT_NEAR(cdual::complementary_value(pr, Vec{t}, sigma), g_direct(t), 1e-10 * (1 + g_direct(t)));
  }
}

TEST(CanonicalProblem, PositiveDomainAndRecovery) {
  CanonicalProblem pr = g_problem();
  EXPECT_TRUE(cdual::in_positive_domain(pr, Vec{-15}).psd);
  EXPECT_FALSE(cdual::in_positive_domain(pr, Vec{-21}).psd);
  EXPECT_FALSE(cdual::in_positive_domain(pr, Vec{-31}).psd);
  EXPECT_NEAR(cdual::recover_primal(pr, Vec{-15})[0], 3.0, 1e-14);
  EXPECT_NEAR(cdual::make_dual_point(pr, Vec{-15}).g_margin, 16.0 / 3.0, 1e-13);

  auto gap = cdual::duality_gap(pr, Vec{3}, Vec{-15});
  EXPECT_LT(gap.primal_vs_complementary, 1e-12);
  EXPECT_LT(gap.complementary_vs_dual, 1e-12);
}

TEST(CanonicalProblem, SingularG) {
  CanonicalProblem pr = g_problem();
  const double s = -53.0 / 3.0;  // G(s) == 0, F(s) == 80/9 != 0
  EXPECT_THROW(cdual::dual_value(pr, Vec{s}), cdual::ColumnSpaceViolation);
  EXPECT_THROW(cdual::dual_gradient(pr, Vec{s}), cdual::SingularMatrix);
}

TEST(CanonicalProblem, WeakDualitySampling) {
  // P^d(sigma) <= P(t) for every sigma in the positive domain and every t.
  CanonicalProblem pr = g_problem();
  double worst = -1e300;
  for (int i = 0; i < 100; ++i) {
    double s = -53.0 / 3.0 + 1e-3 + 0.8 * i;
    double d = cdual::dual_value(pr, Vec{s});
    for (int j = 0; j < 100; ++j) {
      double t = -3.0 + 0.08 * j;
      worst = std::max(worst, d - g_direct(t));
    }
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(CanonicalProblem, EqualityIsStructural) {
  EXPECT_EQ(g_problem(), g_problem());
  CanonicalProblem other(RationalMatrix{{Rational(106, 3)}}, {Rational(56)},
                         {{RationalMatrix{{Rational(2)}}, {Rational(-8, 3)}, Rational(-1)}},
                         cdual::ConvexQuadV{{{Rational(3), Rational(-9)}}});
  EXPECT_FALSE(g_problem() == other);
}
