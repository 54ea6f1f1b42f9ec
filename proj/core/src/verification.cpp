#include "cdual/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cdual/benchmark_problems.hpp"
#include "cdual/errors.hpp"
#include "cdual/oracle.hpp"

namespace cdual {
namespace {

constexpr std::uint64_t kSampleSeed = 20240601;

OracleOptions without_oracle() {
  OracleOptions opts;
  opts.enabled = false;
  return opts;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult from_identity(std::string name, const IdentityCheck& chk) {
  return {std::move(name), chk.holds, chk.holds ? "exact" : chk.detail};
}

CheckResult zero_gap_check(const std::string& name, const CriticalReport& rep) {
  bool ok = gap_within_bound(rep.gap_primal_complementary, rep.primal) &&
            gap_within_bound(rep.gap_complementary_dual, rep.primal);
  return {name, ok,
          "P=" + fmt(rep.primal) + " Xi=" + fmt(rep.complementary) + " Pd=" + fmt(rep.dual) + " gap=" + fmt(rep.gap)};
}

CheckResult certificate_check(const std::string& name, const CriticalReport& rep) {
  return {name, rep.certificate == Certificate::GlobalMinimumCertified, std::string(to_string(rep.certificate))};
}

}  // namespace

bool close_mixed(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<CheckResult> verify_gp(const SolverConfig& cfg) {
  std::vector<CheckResult> out;

  try {
    GpDecomposition dec = gp_decompose();
    out.push_back({"gp.decoupling_identity", true, "f1(x,y) == h(x+y) g(2x-3y)"});
    out.push_back({"gp.inverse_transform", true, "T_inv T == I"});
    out.push_back({"gp.decoupling_positivity", dec.h_min > 0 && dec.g_min > 0,
                   "min h=" + fmt(dec.h_min) + " min g=" + fmt(dec.g_min)});
  } catch (const IdentityViolation& e) {
    out.push_back({"gp.decomposition", false, e.what()});
    return out;
  }

  std::optional<CanonicalProblem> g_opt;
  try {
    g_opt = gp_canonical_g();
  } catch (const IdentityViolation& e) {
    out.push_back({"gp.g_canonical_form", false, e.what()});
    return out;
  }
  const CanonicalProblem& g_problem = *g_opt;
  out.push_back({"gp.g_canonical_form", true, "V(Lambda(t)) - U(t) == g(t)"});

  {
    Lcg rng(kSampleSeed);
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
      double sigma = -53.0 / 3.0 + 1e-3 + 80.0 * rng.next_unit();
      double generic = dual_value(g_problem, Vec{sigma});
      double closed = gp_dual_closed_form(sigma);
      worst = std::max(worst, std::abs(generic - closed) / std::max({1.0, std::abs(generic), std::abs(closed)}));
      ok = ok && close_mixed(generic, closed, 1e-10);
    }
    out.push_back({"gp.dual_closed_form", ok, "1000 samples, worst relative error " + fmt(worst)});
  }

  {
    CriticalSet crit = gp_solve_h();
    MultiPoly dh = gp_decompose().h.partial_derivative(0);
    bool roots_ok = true;
    for (double s : crit.points) roots_ok = roots_ok && std::abs(dh.eval(std::span<const double>(&s, 1))) <= 1e-10;
    std::string pts;
    for (double s : crit.points) pts += fmt(s) + " ";
    out.push_back({"gp.h_critical_points", roots_ok && crit.points.size() == 3 && std::abs(crit.argmin + 1.0) <= 1e-10,
                   "critical points: " + pts + "argmin " + fmt(crit.argmin)});
  }

  {
    bool ok = true;
    for (double sigma : {-21.0, -31.0}) ok = ok && !in_positive_domain(g_problem, Vec{sigma}).psd;
    out.push_back({"gp.certificate_triage", ok, "primal critical points t=0,1 map to sigma=-21,-31 outside S_a+"});
  }

  SolveReport rep = gp_solve(cfg, without_oracle());
  out.push_back(zero_gap_check("gp.zero_duality_gap", rep.dual_report));
  out.push_back(certificate_check("gp.certificate", rep.dual_report));
  return out;
}

std::vector<CheckResult> verify_thc(const SolverConfig& cfg) {
  std::vector<CheckResult> out;
  out.push_back(from_identity("thc.level1_identity", thc_level1_identity()));
  out.push_back(from_identity("thc.level2_identity", thc_level2_identity()));
  out.push_back(from_identity("thc.final_complementary_identity", thc_final_identity()));

  Lcg rng(kSampleSeed);
  auto sample = [&] {
    double s1 = -1.0 + 2.0 * rng.next_unit();
    double s2 = 25.0 * s1 * s1 - 13.0 / 5.0 + 1e-3 + 30.0 * rng.next_unit();
    return Vec{s1, s2};
  };

  {
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      Vec s = sample();
      double closed = thc_dual(s[0], s[1]);
      Vec xy = thc_equilibrium(s[0], s[1]);
      double eliminated = thc_complementary(s[0], s[1], xy[0], xy[1]);
      worst = std::max(worst, std::abs(closed - eliminated) / std::max({1.0, std::abs(closed), std::abs(eliminated)}));
      ok = ok && close_mixed(closed, eliminated, 1e-9);
    }
    out.push_back({"thc.dual_closed_form", ok, "200 samples, worst relative error " + fmt(worst)});
  }

  {
    bool ok = true;
    for (int i = 0; i < 200; ++i) {
      Vec a = sample();
      Vec b = sample();
      Vec mid = (a + b) * 0.5;
      double lhs = thc_dual(mid[0], mid[1]);
      double rhs = 0.5 * (thc_dual(a[0], a[1]) + thc_dual(b[0], b[1]));
      ok = ok && lhs >= rhs - 1e-9;
    }
    out.push_back({"thc.dual_midpoint_concavity", ok, "200 sampled pairs"});
  }

  SolveReport rep = thc_solve(cfg, without_oracle());
  out.push_back(zero_gap_check("thc.zero_duality_gap", rep.dual_report));
  out.push_back(certificate_check("thc.certificate", rep.dual_report));
  return out;
}

std::vector<CheckResult> verify_problem(const CanonicalProblem& pr, const SolverConfig& cfg) {
  std::vector<CheckResult> out;

  {
    // 2 a_k (dV*/dsigma)_k + beta_k == sigma_k, exactly.
    bool ok = true;
    for (std::int64_t num : {-7, 0, 3, 11}) {
      std::vector<Rational> sigma(pr.m(), Rational(num, 3));
      auto xi = conjugate_gradient_exact(pr.V(), sigma);
      for (std::size_t k = 0; k < pr.m(); ++k)
        ok = ok && Rational(2) * pr.V().terms[k].a * xi[k] + pr.V().terms[k].beta == sigma[k];
    }
    out.push_back({"problem.conjugate_relations", ok, "exact rational check"});
  }

  ValueFn value = [&](const Vec& s) { return dual_value(pr, s); };
  FeasibilityFn feasible = [&](const Vec& s) { return in_positive_domain(pr, s); };
  Vec start;
  try {
    start = find_interior_start(value, feasible, pr.m(), cfg.interior_margin);
  } catch (const NoInteriorPoint& e) {
    out.push_back({"problem.interior_start", false, e.what()});
    return out;
  }

  {
    Lcg rng(kSampleSeed);
    std::size_t tested = 0;
    bool ok = true;
    double worst = 0.0;
    for (int attempt = 0; attempt < 2000 && tested < 20; ++attempt) {
      Vec s = start;
      for (std::size_t k = 0; k < pr.m(); ++k) s[k] += (2.0 * rng.next_unit() - 1.0) * (1.0 + std::abs(start[k]));
      try {
        if (in_positive_domain(pr, s).margin < 1e-3) continue;
        Vec analytic = dual_gradient(pr, s);
        Vec numeric = finite_difference_gradient(value, s, 1e-5);
        double err = (analytic - numeric).norm() / std::max(1.0, analytic.norm());
        worst = std::max(worst, err);
        ok = ok && err <= 1e-6;
        ++tested;
      } catch (const Error&) {
      }
    }
    out.push_back({"problem.dual_gradient_fd", ok && tested > 0,
                   std::to_string(tested) + " interior points, worst relative error " + fmt(worst)});
  }

  CriticalReport rep = solve_canonical(pr, cfg);
  out.push_back(zero_gap_check("problem.zero_duality_gap", rep));
  out.push_back(certificate_check("problem.certificate", rep));
  return out;
}

}  // namespace cdual
