#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "cdual/errors.hpp"
#include "cdual/verification.hpp"
#include "grid_csv.hpp"
#include "problem_file.hpp"
#include "report.hpp"

namespace cdual::cli {
namespace {

struct Target {
  std::string kind;  // gp | thc | file
  std::string path;
};

struct Options {
  Target target;
  std::string format = "text";
  bool oracle = true;
  double grad_tol = SolverConfig{}.grad_tol;
  std::size_t max_iter = SolverConfig{}.max_iter;
  std::vector<double> box;
  std::size_t grid = 401;
  std::size_t starts = 64;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  std::size_t n = 101;
  std::string out_path;
  bool show_poly = false;
};

void add_target(CLI::App* sub, Target& t, bool allow_file) {
  sub->add_option("target", t.kind, allow_file ? "gp | thc | file" : "gp | thc")
      ->required()
      ->check(allow_file ? CLI::IsMember({"gp", "thc", "file"}) : CLI::IsMember({"gp", "thc"}));
  if (allow_file) sub->add_option("path", t.path, "problem file (with `file`)");
}

void add_format(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));
}

void validate_target(const Target& t) {
  if (t.kind == "file" && t.path.empty()) throw CLI::ValidationError("path", "`file` needs a problem file path");
  if (t.kind != "file" && !t.path.empty()) throw CLI::ValidationError("path", "unexpected argument: " + t.path);
}

SolverConfig make_config(const Options& o) {
  SolverConfig cfg;
  cfg.grad_tol = o.grad_tol;
  cfg.max_iter = o.max_iter;
  cfg.validate();
  return cfg;
}

MultiPoly objective_of(const Target& t, std::optional<CanonicalProblem>& pr) {
  if (t.kind == "gp") return gp_objective();
  if (t.kind == "thc") return thc_objective();
  pr = load_problem_file(t.path);
  return pr->symbolic_primal();
}

Box default_box(const Target& t, std::size_t dim) {
  if (t.kind == "gp") return gp_default_box();
  if (t.kind == "thc") return thc_default_box();
  Vec lo(dim), hi(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    lo[i] = -5.0;
    hi[i] = 5.0;
  }
  return Box(lo, hi);
}

Box parse_box(const std::vector<double>& raw, const Target& t, std::size_t dim) {
  if (raw.empty()) return default_box(t, dim);
  if (raw.size() != 2 * dim)
    throw ValidationError("--box needs " + std::to_string(2 * dim) + " numbers (lo hi per axis), got " +
                          std::to_string(raw.size()));
  Vec lo(dim), hi(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    lo[i] = raw[2 * i];
    hi[i] = raw[2 * i + 1];
  }
  return Box(lo, hi);
}

int cmd_solve(const Options& o, std::ostream& out) {
  SolverConfig cfg = make_config(o);
  OracleOptions oracle;
  oracle.enabled = o.oracle;
  oracle.starts = o.starts;
  oracle.seed = o.seed;
  oracle.threads = o.threads;

  SolveReport rep;
  if (o.target.kind == "gp") {
    rep = gp_solve(cfg, oracle);
  } else if (o.target.kind == "thc") {
    rep = thc_solve(cfg, oracle);
  } else {
    rep = solve_problem(load_problem_file(o.target.path), o.target.path, cfg, oracle);
  }

  if (o.format == "json") {
    out << report_json(rep, cfg).dump(2) << '\n';
  } else {
    out << report_text(rep, cfg);
  }
  return rep.dual_report.certificate == Certificate::GlobalMinimumCertified ? kOk : kNotCertified;
}

int cmd_verify(const Options& o, std::ostream& out) {
  SolverConfig cfg = make_config(o);
  std::vector<CheckResult> checks;
  MultiPoly objective(1);
  if (o.target.kind == "gp") {
    checks = verify_gp(cfg);
    objective = gp_objective();
  } else if (o.target.kind == "thc") {
    checks = verify_thc(cfg);
    objective = thc_objective();
  } else {
    CanonicalProblem pr = load_problem_file(o.target.path);
    checks = verify_problem(pr, cfg);
    objective = pr.symbolic_primal();
  }

  bool all = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["problem"] = o.target.kind == "file" ? o.target.path : o.target.kind;
    j["passed"] = all;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    if (o.show_poly) j["objective"] = objective.to_text();
    out << j.dump(2) << '\n';
  } else {
    out << checks_text(checks);
    if (o.show_poly) out << "objective terms (coeff e1 ... ek):\n" << objective.to_text();
    out << (all ? "all checks passed" : "verification FAILED") << '\n';
  }
  return all ? kOk : kVerificationFailed;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  std::optional<CanonicalProblem> pr;
  MultiPoly p = objective_of(o.target, pr);
  Box box = parse_box(o.box, o.target, p.arity());

  OracleResult multi = multistart(p, box, o.starts, o.seed, o.threads);
  std::optional<OracleResult> grid;
  if (p.arity() <= 2) grid = grid_scan(p, box, o.grid);

  const std::string name = o.target.kind == "file" ? o.target.path : o.target.kind;
  if (o.format == "json") {
    out << oracle_json(name, multi, grid, box, o.starts, o.seed).dump(2) << '\n';
  } else {
    auto pt = [](const Vec& v) {
      std::ostringstream os;
      os.precision(17);
      os << '(';
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << (v[i] == 0.0 ? 0.0 : v[i]);
      os << ')';
      return os.str();
    };
    std::ostringstream os;
    os.precision(17);
    os << "problem:    " << name << '\n';
    os << "multistart: " << (multi.value == 0.0 ? 0.0 : multi.value) << " at " << pt(multi.x_best) << " ("
       << o.starts << " starts, seed " << o.seed << ")\n";
    if (grid) {
      os << "grid scan:  " << (grid->value == 0.0 ? 0.0 : grid->value) << " at " << pt(grid->x_best) << " ("
         << o.grid << " nodes/axis)\n";
    }
    out << os.str();
  }
  return kOk;
}

int cmd_grid(const Options& o, std::ostream& out) {
  std::optional<CanonicalProblem> pr;
  MultiPoly p = objective_of(o.target, pr);
  Box box = parse_box(o.box, o.target, p.arity());
  if (o.out_path.empty() || o.out_path == "-") {
    write_grid_csv(p, box, o.n, out);
  } else {
    write_grid_csv(p, box, o.n, std::filesystem::path(o.out_path));
  }
  return kOk;
}

}  // namespace

SolveReport solve_problem(const CanonicalProblem& pr, const std::string& name, const SolverConfig& cfg,
                          const OracleOptions& oracle) {
  SolveReport rep;
  rep.problem_name = name;
  rep.dual_report = solve_canonical(pr, cfg);
  rep.transformed_solution = rep.dual_report.x_bar;
  rep.x_star = rep.dual_report.x_bar;
  rep.value = rep.dual_report.primal;
  if (oracle.enabled) {
    MultiPoly p = pr.symbolic_primal();
    Target t{"file", name};
    Box box = oracle.box ? *oracle.box : default_box(t, pr.n());
    OracleResult res = multistart(p, box, oracle.starts, oracle.seed, oracle.threads);
    rep.oracle = OracleSummary{box, oracle.starts, oracle.seed, res.value, res.x_best, oracle_agrees(rep.value, res.value)};
  }
  return rep;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical-duality global optimizer for small polynomial problems", "cdual"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "run the dual pipeline and print a report");
  add_target(solve, o.target, true);
  add_format(solve, o);
  solve->add_flag("--oracle,!--no-oracle", o.oracle, "cross-check with the multistart oracle (default on)");
  solve->add_option("--grad-tol", o.grad_tol, "dual gradient tolerance");
  solve->add_option("--max-iter", o.max_iter, "maximum ascent iterations");
  solve->add_option("--starts", o.starts, "oracle starts");
  solve->add_option("--seed", o.seed, "oracle seed");
  solve->add_option("--threads", o.threads, "oracle threads")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run the identity and duality checks");
  add_target(verify, o.target, true);
  add_format(verify, o);
  verify->add_flag("--show-poly", o.show_poly, "also print the objective's exact terms");

  auto* oracle = app.add_subcommand("oracle", "global search only (multistart + grid scan)");
  add_target(oracle, o.target, true);
  add_format(oracle, o);
  oracle->add_option("--box", o.box, "x0 x1 [y0 y1 ...]")->expected(2, 8);
  oracle->add_option("--grid", o.grid, "grid nodes per axis")->check(CLI::Range(2, 100000));
  oracle->add_option("--starts", o.starts, "multistart starts")->check(CLI::PositiveNumber);
  oracle->add_option("--seed", o.seed, "multistart seed");
  oracle->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

  auto* grid = app.add_subcommand("grid", "export the objective on a lattice as CSV");
  add_target(grid, o.target, true);
  grid->add_option("--box", o.box, "x0 x1 [y0 y1]")->expected(2, 4);
  grid->add_option("--n", o.n, "nodes per axis (>= 2)");
  grid->add_option("--out", o.out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
    validate_target(o.target);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (oracle->parsed()) return cmd_oracle(o, out);
    return cmd_grid(o, out);
  } catch (const NoInteriorPoint& e) {
    err << "error: " << e.what() << '\n';
    return kNotCertified;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace cdual::cli
