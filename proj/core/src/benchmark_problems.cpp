#include "cdual/benchmark_problems.hpp"

#include <cmath>

#include "cdual/errors.hpp"

namespace cdual {
namespace {

MultiPoly var(std::size_t arity, std::size_t i) { return MultiPoly::variable(arity, i); }
MultiPoly cst(std::size_t arity, const Rational& r) { return MultiPoly::constant(arity, r); }

// 22/75 - 5/12 s1^2 + s2/60
double thc_quadratic_coeff(double s1, double s2) { return 22.0 / 75.0 - 5.0 / 12.0 * s1 * s1 + s2 / 60.0; }

// 1/12 s1 s2 - 8/15 s1
double thc_linear_coeff(double s1, double s2) { return s1 * s2 / 12.0 - 8.0 / 15.0 * s1; }

// U2 over (x, y, s1) in the given arity (>= 3).
MultiPoly thc_u2(std::size_t arity) {
  MultiPoly x = var(arity, 0), y = var(arity, 1), s1 = var(arity, 2);
  return (s1 * s1 * Rational(25) - cst(arity, Rational(88, 5))) * x * x + s1 * x * Rational(32) -
         x * y * Rational(60) - y * y * Rational(60) + s1 * s1 * Rational(5, 2);
}

MultiPoly thc_v2(std::size_t arity) {
  MultiPoly x = var(arity, 0), s1 = var(arity, 2);
  MultiPoly lambda2 = x * x + s1 * x * Rational(5);
  return lambda2 * lambda2;
}

}  // namespace

MultiPoly gp_objective() {
  MultiPoly x = var(2, 0), y = var(2, 1);
  MultiPoly one = cst(2, 1);
  MultiPoly u = x + y + one;
  MultiPoly first = one + u * u *
                              (cst(2, 19) - x * Rational(14) + x * x * Rational(3) - y * Rational(14) +
                               x * y * Rational(6) + y * y * Rational(3));
  MultiPoly w = x * Rational(2) - y * Rational(3);
  MultiPoly second = cst(2, 30) + w * w *
                                      (cst(2, 18) - x * Rational(32) + x * x * Rational(12) + y * Rational(48) -
                                       x * y * Rational(36) + y * y * Rational(27));
  return first * second;
}

MultiPoly thc_objective() {
  MultiPoly x = var(2, 0), y = var(2, 1);
  return x * x * Rational(2) - x.pow(4) * Rational(21, 20) + x.pow(6) * Rational(1, 6) + x * y + y * y;
}

IdentityCheck compare_polys(const MultiPoly& lhs, const MultiPoly& rhs) {
  if (lhs.arity() != rhs.arity())
    return {false, "arity mismatch: " + std::to_string(lhs.arity()) + " vs " + std::to_string(rhs.arity())};
  MultiPoly diff = lhs - rhs;
  if (diff.is_zero()) return {true, {}};
  const auto& [e, c] = *diff.terms().begin();
  return {false, "coefficient of " + format_monomial(e, lhs.arity()) + " differs: " +
                     lhs.coefficient(e).to_string() + " vs " + rhs.coefficient(e).to_string()};
}

MultiPoly gp_product_st(const GpDecomposition& dec) {
  RationalMatrix pick_s{{Rational(1), Rational(0)}};
  RationalMatrix pick_t{{Rational(0), Rational(1)}};
  return dec.h.substitute_linear(pick_s) * dec.g.substitute_linear(pick_t);
}

GpDecomposition gp_decompose() {
  GpDecomposition dec;
  dec.T = RationalMatrix{{Rational(1), Rational(1)}, {Rational(2), Rational(-3)}};
  dec.T_inv = RationalMatrix{{Rational(3, 5), Rational(1, 5)}, {Rational(2, 5), Rational(-1, 5)}};

  MultiPoly s = var(1, 0);
  MultiPoly one = cst(1, 1);
  dec.h = one + (s + one) * (s + one) * (cst(1, 19) - s * Rational(14) + s * s * Rational(3));
  dec.g = cst(1, 30) + s * s * (cst(1, 18) - s * Rational(16) + s * s * Rational(3));

  if (auto chk = compare_polys(gp_product_st(dec).substitute_linear(dec.T), gp_objective()); !chk.holds)
    throw IdentityViolation("f1(x, y) != h(x + y) g(2x - 3y): " + chk.detail);
  if (dec.T_inv * dec.T != RationalMatrix::identity(2)) throw IdentityViolation("T_inv * T != I");

  auto global_min = [](const MultiPoly& p) {
    double bound = cauchy_root_bound(p.partial_derivative(0)) + 1.0;
    return univariate_global(p, -bound, bound).best.value;
  };
  dec.h_min = global_min(dec.h);
  dec.g_min = global_min(dec.g);
  if (!(dec.h_min > 0.0) || !(dec.g_min > 0.0))
    throw IdentityViolation("decoupling requires min h > 0 and min g > 0");
  return dec;
}

CriticalSet gp_solve_h() {
  GpDecomposition dec = gp_decompose();
  double bound = cauchy_root_bound(dec.h.partial_derivative(0)) + 1.0;
  UnivariateResult res = univariate_global(dec.h, -bound, bound);
  if (res.critical_points.empty()) throw RootIsolationFailure("h has no critical points");

  CriticalSet out;
  out.points = res.critical_points;
  out.values = res.critical_values;
  out.argmin = out.points[0];
  out.min_value = out.values[0];
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    if (!(out.values[i] > 0.0)) throw IdentityViolation("h is not positive at a critical point");
    if (out.values[i] < out.min_value) {
      out.min_value = out.values[i];
      out.argmin = out.points[i];
    }
  }
  return out;
}

CanonicalProblem gp_canonical_g() {
  RationalMatrix A{{Rational(106, 3)}};
  QuadOperator op{RationalMatrix{{Rational(2)}}, {Rational(-8, 3)}, Rational(-2)};
  ConvexQuadV V{{{Rational(3), Rational(-9)}}};
  CanonicalProblem pr(std::move(A), {Rational(56)}, {op}, V);

  MultiPoly t = var(1, 0);
  MultiPoly g = cst(1, 30) + t * t * (cst(1, 18) - t * Rational(16) + t * t * Rational(3));
  if (auto chk = compare_polys(pr.symbolic_primal(), g); !chk.holds)
    throw IdentityViolation("V(Lambda(t)) - U(t) != g(t): " + chk.detail);
  return pr;
}

double gp_dual_closed_form(double sigma) {
  double lin = 8.0 * sigma / 3.0 + 56.0;
  return (-sigma * sigma - 18.0 * sigma - 81.0) / 12.0 - lin * lin / (4.0 * (sigma + 53.0 / 3.0)) - 2.0 * sigma;
}

Vec gp_inverse_transform(double s, double t) { return Vec{(3.0 * s + t) / 5.0, (2.0 * s - t) / 5.0}; }

std::pair<MultiPoly, MultiPoly> thc_level1_sides() {
  MultiPoly x = var(2, 0), y = var(2, 1);
  MultiPoly lambda1 = x.pow(3) - x * Rational(16, 5);
  MultiPoly u1 = -x.pow(4) * Rational(1, 10) - x * x * Rational(44, 25) - x * y * Rational(6) - y * y * Rational(6);
  return {thc_objective() * Rational(6), lambda1 * lambda1 - u1};
}

std::pair<MultiPoly, MultiPoly> thc_level2_sides() {
  MultiPoly x = var(3, 0), y = var(3, 1), s1 = var(3, 2);
  MultiPoly lambda1 = x.pow(3) - x * Rational(16, 5);
  MultiPoly first_complementary =
      (lambda1 * s1 - s1 * s1 * Rational(1, 4) + x.pow(4) * Rational(1, 10) + x * x * Rational(44, 25) +
       x * y * Rational(6) + y * y * Rational(6)) *
      Rational(1, 6);
  return {first_complementary * Rational(60), thc_v2(3) - thc_u2(3)};
}

std::pair<MultiPoly, MultiPoly> thc_final_sides() {
  MultiPoly x = var(4, 0), y = var(4, 1), s1 = var(4, 2), s2 = var(4, 3);
  MultiPoly explicit_form =
      (cst(4, Rational(22, 75)) - s1 * s1 * Rational(5, 12) + s2 * Rational(1, 60)) * x * x + y * y + x * y +
      (s1 * s2 * Rational(1, 12) - s1 * Rational(8, 15)) * x - s1 * s1 * Rational(1, 24) -
      s2 * s2 * Rational(1, 240);
  MultiPoly lambda2 = x * x + s1 * x * Rational(5);
  MultiPoly from_level2 = (lambda2 * s2 - s2 * s2 * Rational(1, 4) - thc_u2(4)) * Rational(1, 60);
  return {explicit_form, from_level2};
}

IdentityCheck thc_level1_identity() {
  auto [lhs, rhs] = thc_level1_sides();
  return compare_polys(lhs, rhs);
}

IdentityCheck thc_level2_identity() {
  auto [lhs, rhs] = thc_level2_sides();
  return compare_polys(lhs, rhs);
}

IdentityCheck thc_final_identity() {
  auto [lhs, rhs] = thc_final_sides();
  return compare_polys(lhs, rhs);
}

SymMatrix thc_positive_domain_matrix(double s1, double s2) {
  SymMatrix M(2);
  M.set(0, 0, thc_quadratic_coeff(s1, s2));
  M.set(0, 1, 0.5);
  M.set(1, 1, 1.0);
  return M;
}

PsdCheck thc_in_positive_domain(double s1, double s2, double tol) {
  return is_psd(thc_positive_domain_matrix(s1, s2), tol);
}

double thc_dual(double s1, double s2) {
  if (!(s2 > 25.0 * s1 * s1 - 13.0 / 5.0))
    throw DomainViolation("thc_dual: (" + std::to_string(s1) + ", " + std::to_string(s2) +
                          ") is outside the open positive domain s2 > 25 s1^2 - 13/5");
  double s1sq = s1 * s1;
  double num = -1250.0 * s1sq * s1sq - 50.0 * s1sq * (31.0 * s2 - 105.0) + s2 * s2 * (5.0 * s2 + 13.0);
  double den = 240.0 * (125.0 * s1sq - 5.0 * s2 - 13.0);
  return num / den;
}

Vec thc_equilibrium(double s1, double s2) {
  double a = thc_quadratic_coeff(s1, s2);
  double det = 4.0 * a - 1.0;  // det [[2a, 1], [1, 2]]
  if (det == 0.0) throw SingularMatrix("thc_equilibrium: singular equilibrium system");
  double rhs = -thc_linear_coeff(s1, s2);
  return Vec{2.0 * rhs / det, -rhs / det};
}

double thc_complementary(double s1, double s2, double x, double y) {
  return thc_quadratic_coeff(s1, s2) * x * x + y * y + x * y + thc_linear_coeff(s1, s2) * x - s1 * s1 / 24.0 -
         s2 * s2 / 240.0;
}

Vec thc_dual_gradient(double s1, double s2) {
  Vec xy = thc_equilibrium(s1, s2);
  double x = xy[0];
  return Vec{-5.0 / 6.0 * s1 * x * x + (s2 / 12.0 - 8.0 / 15.0) * x - s1 / 12.0,
             x * x / 60.0 + s1 * x / 12.0 - s2 / 120.0};
}

bool oracle_agrees(double value, double oracle_value) {
  return std::abs(value - oracle_value) <= 1e-4 * (1.0 + std::abs(value));
}

Box gp_default_box() { return Box(Vec{-2.0, -2.0}, Vec{2.0, 2.0}); }
Box thc_default_box() { return Box(Vec{-5.0, -5.0}, Vec{5.0, 5.0}); }

namespace {

std::optional<OracleSummary> run_oracle(const MultiPoly& objective, const Box& default_box, double value,
                                        const OracleOptions& opts) {
  if (!opts.enabled) return std::nullopt;
  OracleSummary sum;
  sum.box = opts.box.value_or(default_box);
  sum.starts = opts.starts;
  sum.seed = opts.seed;
  OracleResult res = multistart(objective, sum.box, opts.starts, opts.seed, opts.threads);
  sum.value = res.value;
  sum.x = res.x_best;
  sum.agreement = oracle_agrees(value, res.value);
  return sum;
}

}  // namespace

SolveReport gp_solve(const SolverConfig& cfg, const OracleOptions& oracle) {
  GpDecomposition dec = gp_decompose();
  CriticalSet h_crit = gp_solve_h();
  CanonicalProblem g_problem = gp_canonical_g();
  CriticalReport g_report = solve_canonical(g_problem, cfg);

  const double s_star = h_crit.argmin;
  const double t_star = g_report.x_bar[0];

  SolveReport rep;
  rep.problem_name = "goldstein-price";
  rep.transformed_solution = Vec{s_star, t_star};
  rep.x_star = gp_inverse_transform(s_star, t_star);
  rep.value = dec.h.eval(std::span<const double>(&s_star, 1)) * dec.g.eval(std::span<const double>(&t_star, 1));
  rep.dual_report = g_report;
  rep.oracle = run_oracle(gp_objective(), gp_default_box(), rep.value, oracle);
  return rep;
}

SolveReport thc_solve(const SolverConfig& cfg, const OracleOptions& oracle) {
  cfg.validate();
  ValueFn value = [](const Vec& s) { return thc_dual(s[0], s[1]); };
  FeasibilityFn feasible = [](const Vec& s) { return thc_in_positive_domain(s[0], s[1]); };

  Vec start = find_interior_start(value, feasible, 2, cfg.interior_margin);
  AscentResult ascent = maximize_concave(value, std::nullopt, feasible, start, cfg);
  const Vec& sigma = ascent.sigma;
  Vec xy = thc_equilibrium(sigma[0], sigma[1]);
  const MultiPoly f2 = thc_objective();

  CriticalReport dr;
  dr.sigma_star = sigma;
  dr.x_bar = xy;
  dr.primal = f2.eval(xy.span());
  dr.complementary = thc_complementary(sigma[0], sigma[1], xy[0], xy[1]);
  dr.dual = thc_dual(sigma[0], sigma[1]);
  dr.gap_primal_complementary = std::abs(dr.primal - dr.complementary);
  dr.gap_complementary_dual = std::abs(dr.complementary - dr.dual);
  dr.gap = std::max(dr.gap_primal_complementary, dr.gap_complementary_dual);
  dr.grad_norm = ascent.grad_norm;
  dr.psd_margin = ascent.margin;
  dr.iterations = ascent.iterations;
  dr.status = ascent.status;
  dr.certificate = classify(dr.status, dr.grad_norm, dr.psd_margin, dr.gap, dr.primal, cfg);

  SolveReport rep;
  rep.problem_name = "three-hump-camel";
  rep.transformed_solution = sigma;
  rep.x_star = xy;
  rep.value = dr.primal;
  rep.dual_report = dr;
  rep.oracle = run_oracle(f2, thc_default_box(), rep.value, oracle);
  return rep;
}

}  // namespace cdual
