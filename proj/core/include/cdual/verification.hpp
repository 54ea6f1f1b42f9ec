#pragma once

#include <string>
#include <vector>

#include "cdual/canonical.hpp"
#include "cdual/dual_solver.hpp"

namespace cdual {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// |a - b| <= rel * max(1, |a|, |b|).
bool close_mixed(double a, double b, double rel);

/// Symbolic decoupling, canonical form of g, closed-form dual reproduction,
/// critical-point enumeration of h, certificate triage and the zero-gap
/// equality at the solved point.
std::vector<CheckResult> verify_gp(const SolverConfig& cfg = {});

/// Both transformation levels, the final complementary function, closed-form
/// dual against elimination, dual concavity, and the duality gap at the solution.
std::vector<CheckResult> verify_thc(const SolverConfig& cfg = {});

/// Conjugate relations, gradient against finite differences, and the
/// solver's certificate for a user-supplied problem.
std::vector<CheckResult> verify_problem(const CanonicalProblem& pr, const SolverConfig& cfg = {});

}  // namespace cdual
