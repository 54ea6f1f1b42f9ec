#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdual/canonical.hpp"
#include "cdual/dual_solver.hpp"
#include "cdual/multipoly.hpp"
#include "cdual/oracle.hpp"

namespace cdual {

// ---------------------------------------------------------------------------
// Objectives
// ---------------------------------------------------------------------------

/// Goldstein-Price objective f1(x, y), expanded exactly.
MultiPoly gp_objective();

/// Three Hump Camel Back objective f2(x, y) = 2x^2 - 21/20 x^4 + x^6/6 + xy + y^2.
MultiPoly thc_objective();

// ---------------------------------------------------------------------------
// Identity checks
// ---------------------------------------------------------------------------

struct IdentityCheck {
  bool holds = false;
  std::string detail;  // first offending monomial on mismatch
};

/// Exact comparison reporting the first (graded-lex) monomial whose
/// coefficients differ.
IdentityCheck compare_polys(const MultiPoly& lhs, const MultiPoly& rhs);

// ---------------------------------------------------------------------------
// Goldstein-Price: decoupling under (s, t) = (x + y, 2x - 3y)
// ---------------------------------------------------------------------------

struct GpDecomposition {
  RationalMatrix T;      // [[1, 1], [2, -3]]
  RationalMatrix T_inv;  // [[3/5, 1/5], [2/5, -1/5]]
  MultiPoly h{1};        // h(s) = 1 + (s + 1)^2 (19 - 14 s + 3 s^2)
  MultiPoly g{1};        // g(t) = 30 + t^2 (18 - 16 t + 3 t^2)
  double h_min = 0.0;
  double g_min = 0.0;
};

/// h(s) g(t) as a polynomial in (s, t).
MultiPoly gp_product_st(const GpDecomposition& dec);

/// Builds the decomposition and checks it: f1 == (h g) o T exactly,
/// T_inv T == I exactly, and min h > 0, min g > 0 (so min f1 factors into
/// min h * min g). Throws IdentityViolation on any failure.
GpDecomposition gp_decompose();

struct CriticalSet {
  double argmin = 0.0;
  double min_value = 0.0;
  std::vector<double> points;
  std::vector<double> values;
};

/// Every real critical point of h (roots of h' within its Cauchy bound),
/// with the minimizer among them. Throws IdentityViolation if h is not
/// positive at some critical point.
CriticalSet gp_solve_h();

/// g(t) as a canonical problem: A = 106/3, f = 56, C = 2, b = -8/3, c = -2,
/// V(xi) = 3 xi^2 - 9 xi. Verified against g symbolically on construction.
CanonicalProblem gp_canonical_g();

/// Closed-form dual of g:
/// -(s^2 + 18 s + 81)/12 - (8 s/3 + 56)^2 / (4 (s + 53/3)) - 2 s.
double gp_dual_closed_form(double sigma);

/// (x, y) = ((3 s + t) / 5, (2 s - t) / 5).
Vec gp_inverse_transform(double s, double t);

// ---------------------------------------------------------------------------
// Three Hump Camel Back: two-level canonical transformation
// ---------------------------------------------------------------------------

/// Level 1 in (x, y): {6 f2, V1(Lambda1) - U1} with V1 = (x^3 - 16/5 x)^2,
/// U1 = -x^4/10 - 44/25 x^2 - 6xy - 6y^2.
std::pair<MultiPoly, MultiPoly> thc_level1_sides();
/// Level 2 in (x, y, s1): {60 f2(s1, x, y), V2 - U2} with V2 = (x^2 + 5 s1 x)^2,
/// U2 = (25 s1^2 - 88/5) x^2 + 32 s1 x - 60xy - 60y^2 + 5/2 s1^2.
std::pair<MultiPoly, MultiPoly> thc_level2_sides();
/// Final complementary function in (x, y, s1, s2): explicit form vs
/// (Lambda2 s2 - V2*(s2) - U2) / 60.
std::pair<MultiPoly, MultiPoly> thc_final_sides();

IdentityCheck thc_level1_identity();
IdentityCheck thc_level2_identity();
IdentityCheck thc_final_identity();

/// [[22/75 - 5/12 s1^2 + s2/60, 1/2], [1/2, 1]]; the positive domain is
/// where this is PSD, equivalently s2 >= 25 s1^2 - 13/5.
SymMatrix thc_positive_domain_matrix(double s1, double s2);
PsdCheck thc_in_positive_domain(double s1, double s2, double tol = kPsdTol);

/// Closed-form dual
/// (-1250 s1^4 - 50 s1^2 (31 s2 - 105) + s2^2 (5 s2 + 13)) / (240 (125 s1^2 - 5 s2 - 13)).
/// Throws DomainViolation unless s2 > 25 s1^2 - 13/5.
double thc_dual(double s1, double s2);

/// Envelope gradient of thc_dual: partial derivatives of the final
/// complementary function in (s1, s2) at the equilibrium point.
Vec thc_dual_gradient(double s1, double s2);

/// Final complementary function value.
double thc_complementary(double s1, double s2, double x, double y);

/// Solves [[2 a, 1], [1, 2]] (x, y) = (8/15 s1 - s1 s2 / 12, 0) with
/// a = 22/75 - 5/12 s1^2 + s2/60. Throws SingularMatrix when 4a == 1.
Vec thc_equilibrium(double s1, double s2);

// ---------------------------------------------------------------------------
// End-to-end pipelines
// ---------------------------------------------------------------------------

struct OracleOptions {
  bool enabled = true;
  std::optional<Box> box;  // default per problem
  std::size_t starts = 64;
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

struct OracleSummary {
  Box box;
  std::size_t starts = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
  Vec x;
  bool agreement = false;
};

struct SolveReport {
  std::string problem_name;
  Vec transformed_solution;  // (s*, t*) for gp, (s1*, s2*) for thc
  Vec x_star;
  double value = 0.0;
  CriticalReport dual_report;
  std::optional<OracleSummary> oracle;
};

/// |value - oracle_value| <= 1e-4 (1 + |value|).
bool oracle_agrees(double value, double oracle_value);

Box gp_default_box();
Box thc_default_box();

SolveReport gp_solve(const SolverConfig& cfg = {}, const OracleOptions& oracle = {});
SolveReport thc_solve(const SolverConfig& cfg = {}, const OracleOptions& oracle = {});

}  // namespace cdual
