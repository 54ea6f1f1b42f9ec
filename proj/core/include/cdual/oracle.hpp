#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cdual/multipoly.hpp"
#include "cdual/smallmat.hpp"

namespace cdual {

/// Axis-aligned search region, lower < upper componentwise.
struct Box {
  Vec lower;
  Vec upper;

  Box() = default;
  Box(Vec lo, Vec hi);  // throws ValidationError on lo >= hi or dim mismatch

  std::size_t dim() const { return lower.size(); }
};

struct OracleResult {
  Vec x_best;
  double value = 0.0;
  std::size_t n_evaluations = 0;
  bool refined = false;
};

/// 64-bit linear congruential generator (multiplier 6364136223846793005,
/// increment 1442695040888963407), emitting the top 33 bits.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_bits();
  /// Uniform in [0, 1): next_bits() / 2^33.
  double next_unit();

 private:
  std::uint64_t state_;
};

/// Evaluates p on the regular lattice (endpoints included) and returns the
/// lexicographically smallest minimizing node.
OracleResult grid_scan(const MultiPoly& p, const Box& box, std::size_t n_per_axis);

/// Newton descent with exact polynomial derivatives and backtracking,
/// gradient descent when the Hessian is not positive definite. Throws
/// NotConverged after 500 iterations or when no descent step is found.
Vec local_refine(const MultiPoly& p, const Vec& start, double tol);

/// Refines `k_starts` seeded pseudo-random points in the box and keeps the
/// best; ties go to the lowest start index. Starts that fail to converge
/// are skipped. Results do not depend on `threads`.
OracleResult multistart(const MultiPoly& p, const Box& box, std::size_t k_starts, std::uint64_t seed,
                        unsigned threads = 1, double tol = 1e-9);

struct UnivariateResult {
  OracleResult best;
  std::vector<double> critical_points;  // ascending
  std::vector<double> critical_values;
};

/// Real roots of p' in [lo, hi]: sign-change scan at (hi - lo) / 1e4 (one
/// retry at 10x resolution), bisection to width 1e-13, Newton polish.
std::vector<double> derivative_roots(const MultiPoly& p, double lo, double hi);

/// Global minimum of a univariate polynomial over [lo, hi] among the
/// critical points and both endpoints.
UnivariateResult univariate_global(const MultiPoly& p, double lo, double hi);

/// Cauchy bound on the magnitude of every real root of a univariate p.
double cauchy_root_bound(const MultiPoly& p);

}  // namespace cdual
