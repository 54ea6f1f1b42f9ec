#pragma once

#include <filesystem>
#include <iosfwd>

#include "cdual/multipoly.hpp"
#include "cdual/oracle.hpp"

namespace cdual::cli {

/// Samples p on an n-per-axis lattice over `box` (endpoints included).
/// Header is `x,y,f` (`x,f` for univariate p); rows go x-major, y-minor;
/// values are printed with 17 significant digits. Throws ValidationError
/// for n < 2 or arity > 2.
void write_grid_csv(const MultiPoly& p, const Box& box, std::size_t n, std::ostream& out);
void write_grid_csv(const MultiPoly& p, const Box& box, std::size_t n, const std::filesystem::path& path);

}  // namespace cdual::cli
