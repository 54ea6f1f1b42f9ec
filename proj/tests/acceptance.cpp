// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria (capped at 1 for ctest).

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cdual/benchmark_problems.hpp"
#include "cdual/errors.hpp"
#include "cdual/oracle.hpp"
#include "cdual/verification.hpp"

using namespace cdual;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

OracleOptions no_oracle() {
  OracleOptions o;
  o.enabled = false;
  return o;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

double rel_err(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// -F^2 / (2G) - (s + 9)^2 / 12 - 2 s with G = 106/3 + 2 s, F = 56 + 8/3 s.
double g_dual_reference(double s) {
  double G = 106.0 / 3.0 + 2.0 * s;
  double F = 56.0 + 8.0 / 3.0 * s;
  return -F * F / (2.0 * G) - (s + 9.0) * (s + 9.0) / 12.0 - 2.0 * s;
}

double g_reference(double t) { return 3 * t * t * t * t - 16 * t * t * t + 18 * t * t + 30; }

// Closed-form two-variable dual, transcribed independently.
double thc_dual_reference(double s1, double s2) {
  return (-1250 * std::pow(s1, 4) - 50 * s1 * s1 * (31 * s2 - 105) + s2 * s2 * (5 * s2 + 13)) /
         (240 * (125 * s1 * s1 - 5 * s2 - 13));
}

// Minimum over (x, y) of the final complementary function
//   a x^2 + xy + y^2 + L x - s1^2/24 - s2^2/240,
// a = 22/75 - 5/12 s1^2 + s2/60, L = s1 s2 / 12 - 8/15 s1, by Cramer's rule.
double thc_elimination_reference(double s1, double s2) {
  double a = 22.0 / 75.0 - 5.0 / 12.0 * s1 * s1 + s2 / 60.0;
  double L = s1 * s2 / 12.0 - 8.0 / 15.0 * s1;
  double det = 4 * a - 1;  // [[2a, 1], [1, 2]]
  double x = -2 * L / det;
  double y = L / det;
  return a * x * x + x * y + y * y + L * x - s1 * s1 / 24.0 - s2 * s2 / 240.0;
}

Vec thc_sample(Lcg& rng) {
  double s1 = -1.0 + 2.0 * rng.next_unit();
  double s2 = 25.0 * s1 * s1 - 13.0 / 5.0 + 1e-3 + 30.0 * rng.next_unit();
  return Vec{s1, s2};
}

Outcome criterion1() {
  Outcome o;
  auto t0 = Clock::now();
  SolveReport r = gp_solve();
  double dt = seconds_since(t0);
  const CriticalReport& d = r.dual_report;
  o.require(near(d.sigma_star[0], -15.0, 1e-6), "sigma*=" + num(d.sigma_star[0]));
  o.require(near(r.transformed_solution[1], 3.0, 1e-8), "t*=" + num(r.transformed_solution[1]));
  o.require(near(r.transformed_solution[0], -1.0, 1e-10), "s*=" + num(r.transformed_solution[0]));
  o.require(near(r.x_star[0], 0.0, 1e-8) && near(r.x_star[1], -1.0, 1e-8),
            "x*=(" + num(r.x_star[0]) + "," + num(r.x_star[1]) + ")");
  o.require(near(r.value, 3.0, 1e-8), "value=" + num(r.value));
  o.require(d.certificate == Certificate::GlobalMinimumCertified, std::string(to_string(d.certificate)));
  o.require(dt < 1.0, "runtime " + num(dt) + "s");
  if (o.pass)
    o.detail = "sigma*=" + num(d.sigma_star[0]) + " (s*,t*)=(" + num(r.transformed_solution[0]) + "," +
               num(r.transformed_solution[1]) + ") value=" + num(r.value) + " runtime " + num(dt) + "s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto t0 = Clock::now();
  SolveReport r = thc_solve();
  double dt = seconds_since(t0);
  const CriticalReport& d = r.dual_report;
  o.require(near(d.sigma_star[0], 0.0, 1e-6) && near(d.sigma_star[1], 0.0, 1e-6),
            "sigma*=(" + num(d.sigma_star[0]) + "," + num(d.sigma_star[1]) + ")");
  o.require(near(r.x_star[0], 0.0, 1e-8) && near(r.x_star[1], 0.0, 1e-8),
            "x*=(" + num(r.x_star[0]) + "," + num(r.x_star[1]) + ")");
  o.require(near(r.value, 0.0, 1e-10), "value=" + num(r.value));
  o.require(d.certificate == Certificate::GlobalMinimumCertified, std::string(to_string(d.certificate)));
  o.require(dt < 1.0, "runtime " + num(dt) + "s");
  if (o.pass) o.detail = "sigma*=(0,0) x*=(0,0) value=" + num(r.value) + " runtime " + num(dt) + "s";
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (const SolveReport& r : {gp_solve(SolverConfig{}, no_oracle()), thc_solve(SolverConfig{}, no_oracle())}) {
    const CriticalReport& d = r.dual_report;
    double bound = 1e-8 * (1 + std::abs(d.primal));
    double g1 = std::abs(d.primal - d.complementary);
    double g2 = std::abs(d.complementary - d.dual);
    o.require(d.certificate == Certificate::GlobalMinimumCertified, r.problem_name + " not certified");
    o.require(g1 <= bound && g2 <= bound, r.problem_name + " gaps " + num(g1) + ", " + num(g2));
    o.detail += (o.detail.empty() ? "" : "; ") + r.problem_name + ": |P-Xi|=" + num(g1) + " |Xi-Pd|=" + num(g2);
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  try {
    GpDecomposition dec = gp_decompose();
    o.require(gp_product_st(dec).substitute_linear(dec.T) == gp_objective(), "decoupling mismatch");
  } catch (const IdentityViolation& e) {
    o.require(false, e.what());
  }

  MultiPoly t = MultiPoly::variable(1, 0);
  MultiPoly g = t.pow(4).scale(3) - t.pow(3).scale(16) + t.pow(2).scale(18) + MultiPoly::constant(1, 30);
  CanonicalProblem g_problem = gp_canonical_g();
  o.require(g_problem.symbolic_primal() == g, "g canonical form mismatch");

  IdentityCheck l1 = thc_level1_identity();
  IdentityCheck l2 = thc_level2_identity();
  IdentityCheck fin = thc_final_identity();
  o.require(l1.holds, "level1: " + l1.detail);
  o.require(l2.holds, "level2: " + l2.detail);
  o.require(fin.holds, "final: " + fin.detail);

  // 6 f2 level-1 sides, checked here directly as well.
  auto [lhs1, rhs1] = thc_level1_sides();
  o.require(lhs1 == thc_objective().scale(6) && lhs1 == rhs1, "6 f2 sides differ");
  auto [lhs2, rhs2] = thc_level2_sides();
  o.require(lhs2 == rhs2, "60 f2 sides differ");

  Lcg rng(1001);
  double worst_g = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double s = -53.0 / 3.0 + 1e-3 + 80.0 * rng.next_unit();
    worst_g = std::max(worst_g, rel_err(dual_value(g_problem, Vec{s}), g_dual_reference(s)));
  }
  o.require(worst_g <= 1e-10, "g dual rel err " + num(worst_g));

  double worst_thc = 0.0;
  for (int i = 0; i < 200; ++i) {
    Vec s = thc_sample(rng);
    double closed = thc_dual(s[0], s[1]);
    worst_thc = std::max({worst_thc, rel_err(closed, thc_elimination_reference(s[0], s[1])),
                          rel_err(closed, thc_dual_reference(s[0], s[1]))});
  }
  o.require(worst_thc <= 1e-9, "thc dual rel err " + num(worst_thc));
  if (o.pass)
    o.detail = "5 exact identities; g dual worst rel err " + num(worst_g) + " (1000 pts); thc dual worst rel err " +
               num(worst_thc) + " (200 pts)";
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto t0 = Clock::now();
  struct Case {
    const char* name;
    MultiPoly p;
    Box box;
    double dual_value;
  };
  std::array<Case, 2> cases{Case{"gp", gp_objective(), gp_default_box(), gp_solve(SolverConfig{}, no_oracle()).value},
                            Case{"thc", thc_objective(), thc_default_box(), thc_solve(SolverConfig{}, no_oracle()).value}};
  for (const Case& c : cases) {
    OracleResult multi = multistart(c.p, c.box, 64, 42);
    OracleResult grid = grid_scan(c.p, c.box, 401);
    o.require(near(multi.value, c.dual_value, 1e-6), std::string(c.name) + " multistart " + num(multi.value));
    o.require(near(grid.value, c.dual_value, 1e-2), std::string(c.name) + " grid " + num(grid.value));
    o.detail += std::string(o.detail.empty() ? "" : "; ") + c.name + ": dual " + num(c.dual_value) + " multistart " +
                num(multi.value) + " grid " + num(grid.value);
  }
  double dt = seconds_since(t0);
  o.require(dt < 10.0, "runtime " + num(dt) + "s");
  o.detail += "; runtime " + num(dt) + "s";
  return o;
}

Outcome criterion6() {
  Outcome o;
  Lcg rng(2002);
  CanonicalProblem g_problem = gp_canonical_g();

  // Analytic gradient vs central differences.
  double worst_g = 0.0;
  for (int i = 0; i < 20; ++i) {
    double s = -53.0 / 3.0 + 0.5 + 60.0 * rng.next_unit();
    double h = 1e-5 * (1 + std::abs(s));
    double fd = (dual_value(g_problem, Vec{s + h}) - dual_value(g_problem, Vec{s - h})) / (2 * h);
    worst_g = std::max(worst_g, rel_err(dual_gradient(g_problem, Vec{s})[0], fd));
  }
  double worst_thc = 0.0;
  int thc_points = 0;
  while (thc_points < 20) {
    Vec s = thc_sample(rng);
    if (s[1] - (25 * s[0] * s[0] - 2.6) < 0.1) continue;
    Vec an = thc_dual_gradient(s[0], s[1]);
    const double h = 1e-5;
    Vec fd{(thc_dual(s[0] + h, s[1]) - thc_dual(s[0] - h, s[1])) / (2 * h),
           (thc_dual(s[0], s[1] + h) - thc_dual(s[0], s[1] - h)) / (2 * h)};
    worst_thc = std::max(worst_thc, (an - fd).norm() / std::max(1.0, an.norm()));
    ++thc_points;
  }
  o.require(worst_g <= 1e-6, "g gradient rel err " + num(worst_g));
  o.require(worst_thc <= 1e-6, "thc gradient rel err " + num(worst_thc));

  // Midpoint concavity on the positive domain.
  int violations = 0;
  for (int i = 0; i < 200; ++i) {
    double a = -53.0 / 3.0 + 1e-3 + 80.0 * rng.next_unit();
    double b = -53.0 / 3.0 + 1e-3 + 80.0 * rng.next_unit();
    if (g_dual_reference(0.5 * (a + b)) < 0.5 * (g_dual_reference(a) + g_dual_reference(b)) - 1e-9) ++violations;
    Vec p = thc_sample(rng);
    Vec q = thc_sample(rng);
    Vec m = (p + q) * 0.5;
    if (thc_dual(m[0], m[1]) < 0.5 * (thc_dual(p[0], p[1]) + thc_dual(q[0], q[1])) - 1e-9) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " concavity violations");

  // Weak duality on g: P^d(sigma) <= g(t).
  double worst_weak = -1e300;
  for (int i = 0; i < 100; ++i) {
    double s = -53.0 / 3.0 + 1e-3 + 80.0 * rng.next_unit();
    double d = dual_value(g_problem, Vec{s});
    for (int j = 0; j < 100; ++j) worst_weak = std::max(worst_weak, d - g_reference(-2.0 + 7.0 * rng.next_unit()));
  }
  o.require(worst_weak <= 1e-8, "weak duality max(Pd-P)=" + num(worst_weak));
  if (o.pass)
    o.detail = "gradient rel err g " + num(worst_g) + ", thc " + num(worst_thc) +
               "; 400 midpoint pairs concave; max(Pd-P)=" + num(worst_weak) + " over 100x100";
  return o;
}

Outcome criterion7() {
  Outcome o;
  CanonicalProblem g = gp_canonical_g();
  const auto& op = g.ops_exact()[0];
  const auto& term = g.V().terms[0];
  for (auto [t, expect] : {std::pair<std::int64_t, std::int64_t>{0, -21}, {1, -31}}) {
    // g'(t) = 12 t (t - 1)(t - 3) vanishes at t.
    Rational tr(t);
    o.require(Rational(12) * tr * (tr - 1) * (tr - 3) == Rational(0), "t=" + std::to_string(t) + " not critical");
    Rational xi = Rational(1, 2) * op.C(0, 0) * tr * tr + op.b[0] * tr + op.c;
    Rational sigma = Rational(2) * term.a * xi + term.beta;
    o.require(sigma == Rational(expect), "t=" + std::to_string(t) + " maps to " + sigma.to_string());
    PsdCheck chk = in_positive_domain(g, Vec{sigma.to_double()});
    o.require(!chk.psd, "sigma=" + sigma.to_string() + " accepted");
    // G = 106/3 + 2 sigma < 0 exactly.
    o.require(g.A_exact()(0, 0) + sigma * op.C(0, 0) < Rational(0), "G(sigma) not negative");
  }
  if (o.pass) o.detail = "t=0 -> sigma=-21, t=1 -> sigma=-31; both rejected (G < 0)";
  return o;
}

Outcome criterion8() {
  Outcome o;
  CriticalSet c = gp_solve_h();
  MultiPoly dh = gp_decompose().h.partial_derivative(0);
  o.require(c.points.size() == 3, std::to_string(c.points.size()) + " critical points");
  const double expect[3] = {-1, 1, 2};
  for (std::size_t i = 0; i < c.points.size() && i < 3; ++i) {
    double s = c.points[i];
    double d = dh.eval(std::span<const double>(&s, 1));
    o.require(near(s, expect[i], 1e-10), "point " + num(s));
    o.require(std::abs(d) <= 1e-10, "|h'(" + num(s) + ")|=" + num(d));
  }
  o.require(near(c.argmin, -1.0, 1e-10), "argmin " + num(c.argmin));
  if (o.pass) o.detail = "critical points {-1, 1, 2}, h = {1, 33, 28}, argmin -1";
  return o;
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

Outcome criterion9(const std::string& exe) {
  Outcome o;
  for (const char* problem : {"gp", "thc"}) {
    std::string cmd = "\"" + exe + "\" solve " + problem + " --format json";
    int s1 = 0;
    int s2 = 0;
    std::string a = capture(cmd, s1);
    std::string b = capture(cmd, s2);
    o.require(s1 == 0 && s2 == 0, std::string(problem) + " exit status " + std::to_string(s1));
    o.require(!a.empty() && a == b, std::string(problem) + " outputs differ");
    o.detail += std::string(o.detail.empty() ? "" : "; ") + problem + ": " + std::to_string(a.size()) + " bytes";
  }
  if (o.pass) o.detail += ", byte-identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : CDUAL_EXE;
  const std::array<std::pair<const char*, std::function<Outcome()>>, 9> criteria{{
      {"goldstein-price end-to-end", criterion1},
      {"three-hump-camel end-to-end", criterion2},
      {"zero duality gap at certified solutions", criterion3},
      {"symbolic identity suite", criterion4},
      {"oracle agreement", criterion5},
      {"dual-structure properties", criterion6},
      {"certificate triage", criterion7},
      {"critical points of h", criterion8},
      {"determinism", [&] { return criterion9(exe); }},
  }};

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << " -- " << o.detail
              << '\n';
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
