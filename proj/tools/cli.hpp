#pragma once

#include <iosfwd>
#include <string>

#include "cdual/benchmark_problems.hpp"

namespace cdual::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNotCertified = 2, kVerificationFailed = 3 };

/// Full dual pipeline for a user problem; the oracle (if enabled) runs
/// multistart on the primal polynomial, default box [-5, 5]^n.
SolveReport solve_problem(const CanonicalProblem& pr, const std::string& name, const SolverConfig& cfg,
                          const OracleOptions& oracle);

/// Entry point behind the `cdual` executable. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cdual::cli
