#include "cdual/dual_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cdual/errors.hpp"

namespace cdual {
namespace {

constexpr double kMinStep = 1e-16;
constexpr double kNegDefTol = 1e-12;

struct Probe {
  bool ok = false;
  double value = 0.0;
};

Probe try_value(const ValueFn& fn, const Vec& x) {
  try {
    double v = fn(x);
    return {std::isfinite(v), v};
  } catch (const Error&) {
    return {};
  }
}

std::optional<Vec> try_gradient(const GradientFn& fn, const Vec& x) {
  try {
    Vec g = fn(x);
    for (double gi : g)
      if (!std::isfinite(gi)) return std::nullopt;
    return g;
  } catch (const Error&) {
    return std::nullopt;
  }
}

double step_for(double x, double fd_step) { return fd_step * (1.0 + std::abs(x)); }

SymMatrix fd_hessian(const GradientFn& grad, const Vec& x, double fd_step) {
  const std::size_t m = x.size();
  std::array<Vec, kMaxDim> cols{};
  for (std::size_t i = 0; i < m; ++i) {
    double h = step_for(x[i], fd_step);
    Vec up = x;
    Vec down = x;
    up[i] += h;
    down[i] -= h;
    auto gu = try_gradient(grad, up);
    auto gd = try_gradient(grad, down);
    if (gu && gd) {
      cols[i] = (*gu - *gd) * (1.0 / (2.0 * h));
    } else if (gu) {
      cols[i] = (*gu - grad(x)) * (1.0 / h);
    } else if (gd) {
      cols[i] = (grad(x) - *gd) * (1.0 / h);
    } else {
      throw SingularMatrix("finite-difference Hessian: gradient unavailable on both sides");
    }
  }
  SymMatrix H(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) H.set(i, j, 0.5 * (cols[i][j] + cols[j][i]));
  return H;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(grad_tol > 0) || max_iter == 0 || !(interior_margin > 0) || !(fd_step > 0) || !(armijo_c > 0) ||
      !(backtrack_ratio > 0) || !(backtrack_ratio < 1) || !(boundary_band > 0))
    throw ValidationError("solver configuration values must be positive and backtrack_ratio must lie in (0, 1)");
}

std::string_view to_string(Certificate c) {
  switch (c) {
    case Certificate::GlobalMinimumCertified:
      return "GlobalMinimumCertified";
    case Certificate::BoundaryCritical:
      return "BoundaryCritical";
    case Certificate::NotConverged:
      return "NotConverged";
  }
  return "NotConverged";
}

std::string_view to_string(AscentStatus s) {
  switch (s) {
    case AscentStatus::Converged:
      return "Converged";
    case AscentStatus::MaxIterations:
      return "MaxIterations";
    case AscentStatus::LineSearchStalled:
      return "LineSearchStalled";
  }
  return "MaxIterations";
}

Vec finite_difference_gradient(const ValueFn& fn, const Vec& x, double fd_step) {
  Vec g(x.size());
  Probe center{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    double h = step_for(x[i], fd_step);
    Vec up = x;
    Vec down = x;
    up[i] += h;
    down[i] -= h;
    Probe pu = try_value(fn, up);
    Probe pd = try_value(fn, down);
    if (pu.ok && pd.ok) {
      g[i] = (pu.value - pd.value) / (2.0 * h);
      continue;
    }
    if (!center.ok) center = try_value(fn, x);
    if (!center.ok) throw DomainViolation("finite-difference gradient: function undefined at the base point");
    if (pu.ok) {
      g[i] = (pu.value - center.value) / h;
    } else if (pd.ok) {
      g[i] = (center.value - pd.value) / h;
    } else {
      throw DomainViolation("finite-difference gradient: function undefined on both sides");
    }
  }
  return g;
}

Vec find_interior_start(const ValueFn& value_fn, const FeasibilityFn& feasibility_fn, std::size_t m, double delta) {
  if (m == 0 || m > kMaxDim) throw DimensionError("dual dimension must be in [1, 4]");
  auto accept = [&](const Vec& s) {
    try {
      PsdCheck chk = feasibility_fn(s);
      return chk.psd && chk.margin >= delta && try_value(value_fn, s).ok;
    } catch (const Error&) {
      return false;
    }
  };

  Vec origin(m);
  if (accept(origin)) return origin;

  std::vector<Vec> directions;
  for (std::size_t k = 0; k < m; ++k) {
    Vec e(m);
    e[k] = 1.0;
    directions.push_back(e);
  }
  if (m > 1) directions.emplace_back(m, 1.0);

  for (double tau = 1e-3; tau <= 1e6; tau *= 2.0) {
    for (const Vec& u : directions) {
      for (double sign : {1.0, -1.0}) {
        Vec s = u * (sign * tau);
        if (accept(s)) return s;
      }
    }
  }
  throw NoInteriorPoint("no strictly feasible dual point found on the search grid");
}

AscentResult maximize_concave(const ValueFn& value_fn, const std::optional<GradientFn>& gradient_fn,
                              const FeasibilityFn& feasibility_fn, const Vec& start, const SolverConfig& cfg) {
  cfg.validate();
  const double delta = cfg.interior_margin;
  GradientFn grad = gradient_fn ? *gradient_fn
                                : GradientFn([&](const Vec& s) { return finite_difference_gradient(value_fn, s, cfg.fd_step); });

  AscentResult out;
  out.sigma = start;
  out.margin = feasibility_fn(start).margin;
  if (out.margin < delta) throw NoInteriorPoint("maximize_concave: starting point is not strictly feasible");
  out.value = value_fn(start);
  out.values.push_back(out.value);

  for (;;) {
    Vec g = grad(out.sigma);
    out.grad_norm = g.norm();
    if (out.grad_norm <= cfg.grad_tol) {
      out.status = AscentStatus::Converged;
      return out;
    }
    if (out.iterations >= cfg.max_iter) {
      out.status = AscentStatus::MaxIterations;
      return out;
    }

    Vec direction = g;
    SymMatrix H = fd_hessian(grad, out.sigma, cfg.fd_step);
    Vec h_eigs = eigenvalues(H);
    if (h_eigs[h_eigs.size() - 1] < -kNegDefTol) {
      try {
        direction = solve_sym(-H, g, 1e-6);
      } catch (const Error&) {
        direction = g;
      }
    }
    double slope = g.dot(direction);
    if (!(slope > 0.0)) {
      direction = g;
      slope = g.dot(g);
    }

    bool accepted = false;
    for (double alpha = 1.0; alpha >= kMinStep; alpha *= cfg.backtrack_ratio) {
      Vec trial = out.sigma + direction * alpha;
      PsdCheck chk{};
      try {
        chk = feasibility_fn(trial);
      } catch (const Error&) {
        continue;
      }
      if (chk.margin < delta) continue;
      Probe p = try_value(value_fn, trial);
      if (!p.ok) continue;
      if (p.value >= out.value + cfg.armijo_c * alpha * slope) {
        out.sigma = trial;
        out.value = p.value;
        out.margin = chk.margin;
        out.values.push_back(p.value);
        ++out.iterations;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.status = AscentStatus::LineSearchStalled;
      return out;
    }
  }
}

bool gap_within_bound(double gap, double primal) { return gap <= 1e-8 * (1.0 + std::abs(primal)); }

Certificate classify(AscentStatus status, double grad_norm, double psd_margin, double gap, double primal,
                     const SolverConfig& cfg) {
  if (status == AscentStatus::Converged && grad_norm <= cfg.grad_tol && psd_margin >= cfg.interior_margin &&
      gap_within_bound(gap, primal))
    return Certificate::GlobalMinimumCertified;
  if (status != AscentStatus::Converged && psd_margin >= -kPsdTol && psd_margin < cfg.boundary_band)
    return Certificate::BoundaryCritical;
  return Certificate::NotConverged;
}

CriticalReport solve_canonical(const CanonicalProblem& pr, const SolverConfig& cfg) {
  cfg.validate();
  ValueFn value = [&](const Vec& s) { return dual_value(pr, s); };
  GradientFn gradient = [&](const Vec& s) { return dual_gradient(pr, s); };
  FeasibilityFn feasible = [&](const Vec& s) { return in_positive_domain(pr, s, kPsdTol); };

  Vec start = find_interior_start(value, feasible, pr.m(), cfg.interior_margin);
  AscentResult ascent = maximize_concave(value, gradient, feasible, start, cfg);

  CriticalReport rep;
  rep.sigma_star = ascent.sigma;
  rep.grad_norm = ascent.grad_norm;
  rep.psd_margin = ascent.margin;
  rep.iterations = ascent.iterations;
  rep.status = ascent.status;
  rep.x_bar = recover_primal(pr, ascent.sigma);
  rep.primal = primal_value(pr, rep.x_bar);
  rep.complementary = complementary_value(pr, rep.x_bar, ascent.sigma);
  rep.dual = dual_value(pr, ascent.sigma);
  rep.gap_primal_complementary = std::abs(rep.primal - rep.complementary);
  rep.gap_complementary_dual = std::abs(rep.complementary - rep.dual);
  rep.gap = std::max(rep.gap_primal_complementary, rep.gap_complementary_dual);
  rep.certificate = classify(rep.status, rep.grad_norm, rep.psd_margin, rep.gap, rep.primal, cfg);
  return rep;
}

}  // namespace cdual
