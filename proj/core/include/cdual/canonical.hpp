#pragma once

#include <cstddef>
#include <vector>

#include "cdual/multipoly.hpp"
#include "cdual/rational.hpp"
#include "cdual/smallmat.hpp"

namespace cdual {

/// One component of the quadratic geometric operator:
/// Lambda_k(x) = 1/2 x^T C x + x^T b + c.
struct QuadOperator {
  RationalMatrix C;
  std::vector<Rational> b;
  Rational c;
};

/// Diagonal convex quadratic V(xi) = sum_k a_k xi_k^2 + beta_k xi_k, a_k > 0.
struct ConvexQuadV {
  struct Term {
    Rational a;
    Rational beta;
  };
  std::vector<Term> terms;

  std::size_t size() const { return terms.size(); }
};

/// Primal problem
///
///   P(x) = V(Lambda(x)) - U(x),   U(x) = -1/2 x^T A x + x^T f
///
/// with quadratic operators Lambda_k and a diagonal convex quadratic V.
/// Problem data is held exactly; double-precision views are built once at
/// construction for the numeric routines.
class CanonicalProblem {
 public:
  /// Throws ValidationError on inconsistent dimensions, asymmetric A or
  /// C_k, a_k <= 0, n or m outside [1, 4], or operator/V count mismatch.
  CanonicalProblem(RationalMatrix A, std::vector<Rational> f, std::vector<QuadOperator> ops, ConvexQuadV V);

  std::size_t n() const { return f_exact_.size(); }
  std::size_t m() const { return ops_exact_.size(); }

  const RationalMatrix& A_exact() const { return A_exact_; }
  const std::vector<Rational>& f_exact() const { return f_exact_; }
  const std::vector<QuadOperator>& ops_exact() const { return ops_exact_; }
  const ConvexQuadV& V() const { return V_; }

  const SymMatrix& A() const { return A_; }
  const Vec& f() const { return f_; }
  const SymMatrix& C(std::size_t k) const { return C_[k]; }
  const Vec& b(std::size_t k) const { return b_[k]; }
  double c(std::size_t k) const { return c_[k]; }

  /// P(x) as an exact polynomial in n variables.
  MultiPoly symbolic_primal() const;

  friend bool operator==(const CanonicalProblem& lhs, const CanonicalProblem& rhs);

 private:
  RationalMatrix A_exact_;
  std::vector<Rational> f_exact_;
  std::vector<QuadOperator> ops_exact_;
  ConvexQuadV V_;

  SymMatrix A_;
  Vec f_;
  std::vector<SymMatrix> C_;
  std::vector<Vec> b_;
  std::vector<double> c_;
};

/// xi_k = Lambda_k(x).
Vec lambda_eval(const CanonicalProblem& pr, const Vec& x);

/// U(x) = -1/2 x^T A x + x^T f.
double u_value(const CanonicalProblem& pr, const Vec& x);

double primal_value(const CanonicalProblem& pr, const Vec& x);

/// V(xi).
double canonical_value(const ConvexQuadV& V, const Vec& xi);

/// V*(sigma) = sum_k (sigma_k - beta_k)^2 / (4 a_k).
double conjugate_value(const ConvexQuadV& V, const Vec& sigma);
/// grad V*(sigma), component k = (sigma_k - beta_k) / (2 a_k).
Vec conjugate_gradient(const ConvexQuadV& V, const Vec& sigma);
std::vector<Rational> conjugate_gradient_exact(const ConvexQuadV& V, const std::vector<Rational>& sigma);

/// G(sigma) = A + sum_k sigma_k C_k.
SymMatrix g_matrix(const CanonicalProblem& pr, const Vec& sigma);
/// F(sigma) = f - sum_k sigma_k b_k.
Vec f_vector(const CanonicalProblem& pr, const Vec& sigma);

/// P^d(sigma) = -1/2 F^T G^+ F - V*(sigma) + sum_k sigma_k c_k.
/// Throws ColumnSpaceViolation when F(sigma) is not in Col(G(sigma)).
double dual_value(const CanonicalProblem& pr, const Vec& sigma);

/// Envelope gradient Lambda(x(sigma)) - grad V*(sigma), x(sigma) = G^{-1} F.
/// Throws SingularMatrix when G(sigma) is numerically singular.
Vec dual_gradient(const CanonicalProblem& pr, const Vec& sigma);

/// Xi(x, sigma) = Lambda(x)^T sigma - V*(sigma) - U(x).
double complementary_value(const CanonicalProblem& pr, const Vec& x, const Vec& sigma);

/// Solves G(sigma) x = F(sigma) (least squares with residual check when G
/// is singular).
Vec recover_primal(const CanonicalProblem& pr, const Vec& sigma);

/// Membership of sigma in S_a+: G(sigma) PSD within tol.
PsdCheck in_positive_domain(const CanonicalProblem& pr, const Vec& sigma, double tol = kPsdTol);

struct DualPoint {
  Vec sigma;
  double g_margin = 0.0;
};

DualPoint make_dual_point(const CanonicalProblem& pr, const Vec& sigma);

struct DualityGap {
  double primal_vs_complementary = 0.0;  // |P(x) - Xi(x, sigma)|
  double complementary_vs_dual = 0.0;    // |Xi(x, sigma) - P^d(sigma)|
};

DualityGap duality_gap(const CanonicalProblem& pr, const Vec& x, const Vec& sigma);

}  // namespace cdual
