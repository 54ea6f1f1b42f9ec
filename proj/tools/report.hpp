#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdual/benchmark_problems.hpp"
#include "cdual/dual_solver.hpp"
#include "cdual/verification.hpp"

namespace cdual::cli {

/// Same keys, same order, for every problem. "oracle" is null when the
/// oracle was disabled. Negative zero is written as 0.
nlohmann::ordered_json report_json(const SolveReport& rep, const SolverConfig& cfg);

/// Human-readable form; lists the primal/complementary/dual triple.
std::string report_text(const SolveReport& rep, const SolverConfig& cfg);

nlohmann::ordered_json oracle_json(const std::string& problem, const OracleResult& multi,
                                   const std::optional<OracleResult>& grid, const Box& box, std::size_t starts,
                                   std::uint64_t seed);

/// One "PASS name  detail" / "FAIL name  detail" line per check.
std::string checks_text(const std::vector<CheckResult>& checks);

}  // namespace cdual::cli
