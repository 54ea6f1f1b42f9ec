#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "cdual/canonical.hpp"
#include "cdual/smallmat.hpp"

namespace cdual {

struct SolverConfig {
  double grad_tol = 1e-10;
  std::size_t max_iter = 200;
  double interior_margin = 1e-9;  // delta: accepted iterates keep min eig(G) >= delta
  double fd_step = 1e-5;          // scaled by (1 + |sigma_k|)
  double armijo_c = 1e-4;
  double backtrack_ratio = 0.5;
  // A non-converged run that stalls with margin below this band is
  // classified as boundary-critical rather than not-converged.
  double boundary_band = 1e-6;

  /// Throws ValidationError unless every field is positive and
  /// backtrack_ratio < 1.
  void validate() const;
};

enum class Certificate { GlobalMinimumCertified, BoundaryCritical, NotConverged };

std::string_view to_string(Certificate c);

enum class AscentStatus { Converged, MaxIterations, LineSearchStalled };

std::string_view to_string(AscentStatus s);

using ValueFn = std::function<double(const Vec&)>;
using GradientFn = std::function<Vec(const Vec&)>;
using FeasibilityFn = std::function<PsdCheck(const Vec&)>;

struct AscentResult {
  Vec sigma;
  double value = 0.0;
  double grad_norm = 0.0;
  double margin = 0.0;
  std::size_t iterations = 0;
  AscentStatus status = AscentStatus::MaxIterations;
  std::vector<double> values;  // objective at every accepted iterate, starting point first
};

/// Searches sigma = tau * u over tau in {0} then +/- a geometric grid up to
/// 1e6, for u each coordinate direction and the all-ones direction, and
/// returns the first point with margin >= delta and a finite value.
/// Throws NoInteriorPoint when the grid is exhausted.
Vec find_interior_start(const ValueFn& value_fn, const FeasibilityFn& feasibility_fn, std::size_t m,
                        double delta = 1e-9);

/// Damped Newton ascent for a concave function over {sigma : margin >= delta}.
///
/// The gradient is analytic when `gradient_fn` is given, central differences
/// otherwise; the Hessian is always central differences of the gradient.
/// Newton steps fall back to steepest ascent when the Hessian is not
/// negative definite. Steps are backtracked until the trial point is
/// interior and satisfies the Armijo ascent condition.
AscentResult maximize_concave(const ValueFn& value_fn, const std::optional<GradientFn>& gradient_fn,
                              const FeasibilityFn& feasibility_fn, const Vec& start, const SolverConfig& cfg);

/// Central-difference gradient with per-coordinate step fd_step * (1 + |x_k|).
/// Falls back to a one-sided difference when one side cannot be evaluated.
Vec finite_difference_gradient(const ValueFn& fn, const Vec& x, double fd_step);

struct CriticalReport {
  Vec sigma_star;
  Vec x_bar;
  double primal = 0.0;         // P(x_bar)
  double complementary = 0.0;  // Xi(x_bar, sigma_star)
  double dual = 0.0;           // P^d(sigma_star)
  double gap = 0.0;            // max of the two duality gaps
  double gap_primal_complementary = 0.0;
  double gap_complementary_dual = 0.0;
  double grad_norm = 0.0;
  double psd_margin = 0.0;
  Certificate certificate = Certificate::NotConverged;
  AscentStatus status = AscentStatus::MaxIterations;
  std::size_t iterations = 0;
};

/// Gap bound for certification: 1e-8 * (1 + |primal|).
bool gap_within_bound(double gap, double primal);

/// Certificate from ascent outcome and duality gap.
Certificate classify(AscentStatus status, double grad_norm, double psd_margin, double gap, double primal,
                     const SolverConfig& cfg);

/// Full dual pipeline for a quadratic-operator canonical problem: interior
/// start, concave ascent with the analytic dual gradient, primal recovery,
/// and duality-gap certification.
CriticalReport solve_canonical(const CanonicalProblem& pr, const SolverConfig& cfg = {});

}  // namespace cdual
