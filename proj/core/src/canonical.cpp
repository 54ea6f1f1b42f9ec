#include "cdual/canonical.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "cdual/errors.hpp"

namespace cdual {
namespace {

SymMatrix to_sym(const RationalMatrix& M) {
  SymMatrix S(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = i; j < M.cols(); ++j) S.set(i, j, M(i, j).to_double());
  return S;
}

Vec to_vec(const std::vector<Rational>& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_double();
  return out;
}

void check_square_symmetric(const RationalMatrix& M, std::size_t n, const std::string& name) {
  if (M.rows() != n || M.cols() != n)
    throw ValidationError(name + " must be " + std::to_string(n) + "x" + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (M(i, j) != M(j, i))
        throw ValidationError(name + " must be symmetric (" + name + "[" + std::to_string(i) + "][" +
                              std::to_string(j) + "] != " + name + "[" + std::to_string(j) + "][" +
                              std::to_string(i) + "])");
}

void check_x(const CanonicalProblem& pr, const Vec& x) {
  if (x.size() != pr.n())
    throw DimensionError("primal point has dimension " + std::to_string(x.size()) + ", expected " +
                         std::to_string(pr.n()));
}

void check_sigma(const CanonicalProblem& pr, const Vec& sigma) {
  if (sigma.size() != pr.m())
    throw DimensionError("dual point has dimension " + std::to_string(sigma.size()) + ", expected " +
                         std::to_string(pr.m()));
}

double offset_term(const CanonicalProblem& pr, const Vec& sigma) {
  double sum = 0.0;
  for (std::size_t k = 0; k < pr.m(); ++k) sum += sigma[k] * pr.c(k);
  return sum;
}

}  // namespace

CanonicalProblem::CanonicalProblem(RationalMatrix A, std::vector<Rational> f, std::vector<QuadOperator> ops,
                                   ConvexQuadV V)
    : A_exact_(std::move(A)), f_exact_(std::move(f)), ops_exact_(std::move(ops)), V_(std::move(V)) {
  const std::size_t n = f_exact_.size();
  if (n == 0 || n > kMaxDim) throw ValidationError("n must be in [1, 4]");
  if (ops_exact_.empty() || ops_exact_.size() > kMaxDim) throw ValidationError("m must be in [1, 4]");
  if (V_.size() != ops_exact_.size())
    throw ValidationError("V has " + std::to_string(V_.size()) + " components but there are " +
                          std::to_string(ops_exact_.size()) + " operators");
  check_square_symmetric(A_exact_, n, "A");
  for (std::size_t k = 0; k < ops_exact_.size(); ++k) {
    const std::string tag = "operators[" + std::to_string(k) + "]";
    check_square_symmetric(ops_exact_[k].C, n, tag + ".C");
    if (ops_exact_[k].b.size() != n) throw ValidationError(tag + ".b must have length " + std::to_string(n));
  }
  for (std::size_t k = 0; k < V_.size(); ++k)
    if (V_.terms[k].a.sign() <= 0) throw ValidationError("a[" + std::to_string(k) + "] must be > 0");

  A_ = to_sym(A_exact_);
  f_ = to_vec(f_exact_);
  for (const auto& op : ops_exact_) {
    C_.push_back(to_sym(op.C));
    b_.push_back(to_vec(op.b));
    c_.push_back(op.c.to_double());
  }
}

bool operator==(const CanonicalProblem& lhs, const CanonicalProblem& rhs) {
  if (lhs.A_exact_ != rhs.A_exact_ || lhs.f_exact_ != rhs.f_exact_) return false;
  if (lhs.ops_exact_.size() != rhs.ops_exact_.size() || lhs.V_.size() != rhs.V_.size()) return false;
  for (std::size_t k = 0; k < lhs.ops_exact_.size(); ++k) {
    const auto& l = lhs.ops_exact_[k];
    const auto& r = rhs.ops_exact_[k];
    if (l.C != r.C || l.b != r.b || l.c != r.c) return false;
    if (lhs.V_.terms[k].a != rhs.V_.terms[k].a || lhs.V_.terms[k].beta != rhs.V_.terms[k].beta) return false;
  }
  return true;
}

MultiPoly CanonicalProblem::symbolic_primal() const {
  const std::size_t n = this->n();
  std::vector<MultiPoly> x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(MultiPoly::variable(n, i));

  auto quadratic_form = [&](const RationalMatrix& M) {
    MultiPoly q(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!M(i, j).is_zero()) q += (x[i] * x[j]).scale(M(i, j));
    return q;
  };
  auto linear_form = [&](const std::vector<Rational>& v) {
    MultiPoly l(n);
    for (std::size_t i = 0; i < n; ++i) l += x[i].scale(v[i]);
    return l;
  };

  const Rational half(1, 2);
  MultiPoly u = -quadratic_form(A_exact_).scale(half) + linear_form(f_exact_);
  MultiPoly p = -u;
  for (std::size_t k = 0; k < m(); ++k) {
    const auto& op = ops_exact_[k];
    MultiPoly xi = quadratic_form(op.C).scale(half) + linear_form(op.b) + MultiPoly::constant(n, op.c);
    p += (xi * xi).scale(V_.terms[k].a) + xi.scale(V_.terms[k].beta);
  }
  return p;
}

Vec lambda_eval(const CanonicalProblem& pr, const Vec& x) {
  check_x(pr, x);
  Vec xi(pr.m());
  for (std::size_t k = 0; k < pr.m(); ++k) xi[k] = 0.5 * x.dot(pr.C(k) * x) + x.dot(pr.b(k)) + pr.c(k);
  return xi;
}

double u_value(const CanonicalProblem& pr, const Vec& x) {
  check_x(pr, x);
  return -0.5 * x.dot(pr.A() * x) + x.dot(pr.f());
}

double canonical_value(const ConvexQuadV& V, const Vec& xi) {
  if (xi.size() != V.size()) throw DimensionError("canonical_value dimension mismatch");
  double sum = 0.0;
  for (std::size_t k = 0; k < V.size(); ++k)
    sum += V.terms[k].a.to_double() * xi[k] * xi[k] + V.terms[k].beta.to_double() * xi[k];
  return sum;
}

double primal_value(const CanonicalProblem& pr, const Vec& x) {
  return canonical_value(pr.V(), lambda_eval(pr, x)) - u_value(pr, x);
}

double conjugate_value(const ConvexQuadV& V, const Vec& sigma) {
  if (sigma.size() != V.size()) throw DimensionError("conjugate_value dimension mismatch");
  double sum = 0.0;
  for (std::size_t k = 0; k < V.size(); ++k) {
    double shifted = sigma[k] - V.terms[k].beta.to_double();
    sum += shifted * shifted / (4.0 * V.terms[k].a.to_double());
  }
  return sum;
}

Vec conjugate_gradient(const ConvexQuadV& V, const Vec& sigma) {
  if (sigma.size() != V.size()) throw DimensionError("conjugate_gradient dimension mismatch");
  Vec out(V.size());
  for (std::size_t k = 0; k < V.size(); ++k)
    out[k] = (sigma[k] - V.terms[k].beta.to_double()) / (2.0 * V.terms[k].a.to_double());
  return out;
}

std::vector<Rational> conjugate_gradient_exact(const ConvexQuadV& V, const std::vector<Rational>& sigma) {
  if (sigma.size() != V.size()) throw DimensionError("conjugate_gradient dimension mismatch");
  std::vector<Rational> out;
  out.reserve(V.size());
  for (std::size_t k = 0; k < V.size(); ++k)
    out.push_back((sigma[k] - V.terms[k].beta) / (Rational(2) * V.terms[k].a));
  return out;
}

SymMatrix g_matrix(const CanonicalProblem& pr, const Vec& sigma) {
  check_sigma(pr, sigma);
  SymMatrix G = pr.A();
  for (std::size_t k = 0; k < pr.m(); ++k) G += pr.C(k) * sigma[k];
  return G;
}

Vec f_vector(const CanonicalProblem& pr, const Vec& sigma) {
  check_sigma(pr, sigma);
  Vec F = pr.f();
  for (std::size_t k = 0; k < pr.m(); ++k) F -= pr.b(k) * sigma[k];
  return F;
}

double dual_value(const CanonicalProblem& pr, const Vec& sigma) {
  Vec F = f_vector(pr, sigma);
  Vec x = solve_sym(g_matrix(pr, sigma), F, kColumnSpaceTol);
  return -0.5 * F.dot(x) - conjugate_value(pr.V(), sigma) + offset_term(pr, sigma);
}

Vec dual_gradient(const CanonicalProblem& pr, const Vec& sigma) {
  SymMatrix G = g_matrix(pr, sigma);
  Vec lambdas = eigenvalues(G);
  double smallest = std::abs(lambdas[0]);
  for (double l : lambdas) smallest = std::min(smallest, std::abs(l));
  if (smallest <= 1e-12 * std::max(1.0, G.max_abs()))
    throw SingularMatrix("dual_gradient: G(sigma) is singular");
  Vec x = solve_sym(G, f_vector(pr, sigma), kColumnSpaceTol);
  return lambda_eval(pr, x) - conjugate_gradient(pr.V(), sigma);
}

double complementary_value(const CanonicalProblem& pr, const Vec& x, const Vec& sigma) {
  check_sigma(pr, sigma);
  return lambda_eval(pr, x).dot(sigma) - conjugate_value(pr.V(), sigma) - u_value(pr, x);
}

Vec recover_primal(const CanonicalProblem& pr, const Vec& sigma) {
  return solve_sym(g_matrix(pr, sigma), f_vector(pr, sigma), kColumnSpaceTol);
}

PsdCheck in_positive_domain(const CanonicalProblem& pr, const Vec& sigma, double tol) {
  return is_psd(g_matrix(pr, sigma), tol);
}

DualPoint make_dual_point(const CanonicalProblem& pr, const Vec& sigma) {
  return {sigma, min_eigenvalue(g_matrix(pr, sigma))};
}

DualityGap duality_gap(const CanonicalProblem& pr, const Vec& x, const Vec& sigma) {
  double p = primal_value(pr, x);
  double xi = complementary_value(pr, x, sigma);
  double d = dual_value(pr, sigma);
  return {std::abs(p - xi), std::abs(xi - d)};
}

}  // namespace cdual
