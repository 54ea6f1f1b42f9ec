#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cdual::cli {
namespace {

using nlohmann::ordered_json;

double clean(double v) { return v == 0.0 ? 0.0 : v; }

ordered_json vec_json(const Vec& v) {
  ordered_json out = ordered_json::array();
  for (double x : v) out.push_back(clean(x));
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", clean(v));
  return buf;
}

std::string vec_text(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + ")";
}

ordered_json box_json(const Box& box) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < box.dim(); ++i) out.push_back({clean(box.lower[i]), clean(box.upper[i])});
  return out;
}

ordered_json config_json(const SolverConfig& cfg) {
  ordered_json c;
  c["grad_tol"] = cfg.grad_tol;
  c["max_iter"] = cfg.max_iter;
  c["interior_margin"] = cfg.interior_margin;
  c["fd_step"] = cfg.fd_step;
  c["armijo_c"] = cfg.armijo_c;
  c["backtrack_ratio"] = cfg.backtrack_ratio;
  c["boundary_band"] = cfg.boundary_band;
  return c;
}

}  // namespace

ordered_json report_json(const SolveReport& rep, const SolverConfig& cfg) {
  const CriticalReport& d = rep.dual_report;
  ordered_json j;
  j["problem"] = rep.problem_name;
  j["certificate"] = std::string(to_string(d.certificate));
  j["sigma_star"] = vec_json(d.sigma_star);
  j["transformed_solution"] = vec_json(rep.transformed_solution);
  j["x_star"] = vec_json(rep.x_star);
  j["primal_value"] = clean(rep.value);
  j["dual_value"] = clean(d.dual);
  j["duality_triple"] = {{"primal", clean(d.primal)}, {"complementary", clean(d.complementary)}, {"dual", clean(d.dual)}};
  j["gap"] = clean(d.gap);
  j["psd_min_eig"] = clean(d.psd_margin);
  j["gradient_norm"] = clean(d.grad_norm);
  j["iterations"] = d.iterations;
  j["ascent_status"] = std::string(to_string(d.status));
  if (rep.oracle) {
    const OracleSummary& o = *rep.oracle;
    j["oracle"] = {{"value", clean(o.value)},
                   {"x", vec_json(o.x)},
                   {"agreement", o.agreement},
                   {"box", box_json(o.box)},
                   {"starts", o.starts},
                   {"seed", o.seed}};
  } else {
    j["oracle"] = nullptr;
  }
  j["config"] = config_json(cfg);
  return j;
}

std::string report_text(const SolveReport& rep, const SolverConfig& cfg) {
  const CriticalReport& d = rep.dual_report;
  std::ostringstream os;
  os << "problem:              " << rep.problem_name << '\n';
  os << "certificate:          " << to_string(d.certificate) << '\n';
  os << "sigma*:               " << vec_text(d.sigma_star) << '\n';
  os << "transformed solution: " << vec_text(rep.transformed_solution) << '\n';
  os << "x*:                   " << vec_text(rep.x_star) << '\n';
  os << "objective:            " << num(rep.value) << '\n';
  os << "P(x)                = " << num(d.primal) << '\n';
  os << "Xi(x, sigma)        = " << num(d.complementary) << '\n';
  os << "P^d(sigma)          = " << num(d.dual) << '\n';
  os << "gap:                  " << num(d.gap) << '\n';
  os << "min eig G(sigma):     " << num(d.psd_margin) << '\n';
  os << "gradient norm:        " << num(d.grad_norm) << '\n';
  os << "iterations:           " << d.iterations << " (" << to_string(d.status) << ")\n";
  if (rep.oracle) {
    const OracleSummary& o = *rep.oracle;
    os << "oracle:               " << num(o.value) << " at " << vec_text(o.x) << " (" << o.starts
       << " starts, seed " << o.seed << ", " << (o.agreement ? "agrees" : "DISAGREES") << ")\n";
  } else {
    os << "oracle:               disabled\n";
  }
  os << "config:               grad_tol=" << cfg.grad_tol << " max_iter=" << cfg.max_iter
     << " interior_margin=" << cfg.interior_margin << '\n';
  return os.str();
}

ordered_json oracle_json(const std::string& problem, const OracleResult& multi,
                         const std::optional<OracleResult>& grid, const Box& box, std::size_t starts,
                         std::uint64_t seed) {
  ordered_json j;
  j["problem"] = problem;
  j["box"] = box_json(box);
  j["multistart"] = {{"value", clean(multi.value)},
                     {"x", vec_json(multi.x_best)},
                     {"starts", starts},
                     {"seed", seed},
                     {"evaluations", multi.n_evaluations}};
  if (grid) {
    j["grid"] = {{"value", clean(grid->value)}, {"x", vec_json(grid->x_best)}, {"evaluations", grid->n_evaluations}};
  } else {
    j["grid"] = nullptr;
  }
  return j;
}

std::string checks_text(const std::vector<CheckResult>& checks) {
  std::string out;
  for (const auto& c : checks) out += (c.passed ? "PASS " : "FAIL ") + c.name + "  " + c.detail + '\n';
  return out;
}

}  // namespace cdual::cli
