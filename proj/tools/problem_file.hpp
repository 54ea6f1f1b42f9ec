#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cdual/canonical.hpp"

namespace cdual::cli {

/// Problem file schema (JSON):
///
///   {
///     "n": 1, "m": 1,
///     "A": [["106/3"]],
///     "f": ["56"],
///     "operators": [{"C": [["2"]], "b": ["-8/3"], "c": "-2"}],
///     "V": [{"a": "3", "beta": "-9"}]
///   }
///
/// Scalars are "p/q" strings, decimal strings, or JSON numbers. "c" is
/// optional and defaults to 0.
CanonicalProblem parse_problem(std::string_view text, std::string_view source = "<input>");
CanonicalProblem load_problem_file(const std::filesystem::path& path);

/// Serializes with every scalar as an exact "p/q" string.
nlohmann::ordered_json problem_to_json(const CanonicalProblem& pr);
void save_problem_file(const CanonicalProblem& pr, const std::filesystem::path& path);

}  // namespace cdual::cli
