#include "grid_csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "cdual/errors.hpp"

namespace cdual::cli {
namespace {

void put(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  out << buf;
}

double node(double lo, double hi, std::size_t i, std::size_t n) {
  // Hit the upper endpoint exactly.
  return i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

void write_grid_csv(const MultiPoly& p, const Box& box, std::size_t n, std::ostream& out) {
  if (n < 2) throw ValidationError("grid needs at least 2 nodes per axis (got " + std::to_string(n) + ")");
  if (p.arity() > 2) throw ValidationError("grid export supports at most 2 variables");
  if (box.dim() != p.arity()) throw DimensionError("box dimension does not match polynomial arity");

  if (p.arity() == 1) {
    out << "x,f\n";
    for (std::size_t i = 0; i < n; ++i) {
      double x = node(box.lower[0], box.upper[0], i, n);
      put(out, x);
      out << ',';
      put(out, p.eval(std::span<const double>(&x, 1)));
      out << '\n';
    }
    return;
  }

  out << "x,y,f\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double pt[2] = {node(box.lower[0], box.upper[0], i, n), node(box.lower[1], box.upper[1], j, n)};
      put(out, pt[0]);
      out << ',';
      put(out, pt[1]);
      out << ',';
      put(out, p.eval(pt));
      out << '\n';
    }
  }
}

void write_grid_csv(const MultiPoly& p, const Box& box, std::size_t n, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  write_grid_csv(p, box, n, out);
  if (!out) throw Error(path.string() + ": write failed");
}

}  // namespace cdual::cli
