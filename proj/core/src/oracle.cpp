#include "cdual/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <thread>

#include "cdual/errors.hpp"

namespace cdual {
namespace {

constexpr std::size_t kScanNodes = 10000;
constexpr std::size_t kMaxRefineIter = 500;

bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool better(double value, const Vec& x, double best_value, const Vec& best_x) {
  return value < best_value || (value == best_value && lex_less(x, best_x));
}

struct Derivatives {
  std::vector<MultiPoly> grad;
  std::vector<std::vector<MultiPoly>> hess;
};

Derivatives derivatives_of(const MultiPoly& p) {
  Derivatives d;
  const std::size_t n = p.arity();
  for (std::size_t i = 0; i < n; ++i) d.grad.push_back(p.partial_derivative(i));
  d.hess.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d.hess[i].push_back(d.grad[i].partial_derivative(j));
  return d;
}

Vec eval_grad(const Derivatives& d, const Vec& x) {
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = d.grad[i].eval(x.span());
  return g;
}

SymMatrix eval_hess(const Derivatives& d, const Vec& x) {
  SymMatrix H(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i; j < x.size(); ++j) H.set(i, j, d.hess[i][j].eval(x.span()));
  return H;
}

double eval1(const MultiPoly& p, double x) { return p.eval(std::span<const double>(&x, 1)); }

std::vector<double> scan_roots(const MultiPoly& q, const MultiPoly& dq, double lo, double hi, std::size_t nodes,
                               std::vector<double>& suspicious) {
  std::vector<double> xs(nodes + 1);
  std::vector<double> qs(nodes + 1);
  for (std::size_t i = 0; i <= nodes; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(nodes);
    qs[i] = eval1(q, xs[i]);
  }
  double qmax = 0.0;
  for (double v : qs) qmax = std::max(qmax, std::abs(v));

  std::vector<double> roots;
  for (std::size_t i = 0; i <= nodes; ++i) {
    if (qs[i] == 0.0) {
      roots.push_back(xs[i]);
      continue;
    }
    if (i < nodes && qs[i + 1] != 0.0 && std::signbit(qs[i]) != std::signbit(qs[i + 1])) {
      double a = xs[i];
      double b = xs[i + 1];
      double qa = qs[i];
      while (b - a > 1e-13) {
        double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        double qm = eval1(q, mid);
        if (qm == 0.0) {
          a = b = mid;
          break;
        }
        if (std::signbit(qm) == std::signbit(qa)) {
          a = mid;
          qa = qm;
        } else {
          b = mid;
        }
      }
      double r = 0.5 * (a + b);
      // Newton polish, kept inside the bracket.
      for (int k = 0; k < 5; ++k) {
        double qr = eval1(q, r);
        double dr = eval1(dq, r);
        if (qr == 0.0 || dr == 0.0) break;
        double next = r - qr / dr;
        if (next < xs[i] || next > xs[i + 1] || std::abs(eval1(q, next)) >= std::abs(qr)) break;
        r = next;
      }
      roots.push_back(r);
      continue;
    }
    // A local minimum of |q| close to zero where q' changes sign may be a
    // tangential root the sign-change scan cannot bracket.
    if (i > 0 && i < nodes && std::abs(qs[i]) <= std::abs(qs[i - 1]) && std::abs(qs[i]) <= std::abs(qs[i + 1]) &&
        std::abs(qs[i]) <= 1e-6 * qmax &&
        std::signbit(eval1(dq, xs[i - 1])) != std::signbit(eval1(dq, xs[i + 1])) &&
        std::signbit(qs[i - 1]) == std::signbit(qs[i + 1]))
      suspicious.push_back(xs[i]);
  }
  return roots;
}

}  // namespace

Box::Box(Vec lo, Vec hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size() || lower.size() == 0) throw ValidationError("box bounds must have equal, nonzero dimension");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!(lower[i] < upper[i])) throw ValidationError("box lower bound must be below upper bound on axis " + std::to_string(i));
}

std::uint64_t Lcg::next_bits() {
  state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
  return state_ >> 31U;
}

double Lcg::next_unit() { return static_cast<double>(next_bits()) / 8589934592.0; }

OracleResult grid_scan(const MultiPoly& p, const Box& box, std::size_t n_per_axis) {
  if (p.arity() != box.dim() || box.dim() > 2)
    throw DimensionError("grid_scan needs a box of the polynomial's arity (at most 2)");
  if (n_per_axis < 2) throw ValidationError("grid_scan needs at least 2 nodes per axis");

  auto node = [&](std::size_t axis, std::size_t i) {
    return box.lower[axis] +
           (box.upper[axis] - box.lower[axis]) * static_cast<double>(i) / static_cast<double>(n_per_axis - 1);
  };

  OracleResult res;
  res.value = std::numeric_limits<double>::infinity();
  const std::size_t ny = box.dim() == 2 ? n_per_axis : 1;
  for (std::size_t i = 0; i < n_per_axis; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      Vec x = box.dim() == 2 ? Vec{node(0, i), node(1, j)} : Vec{node(0, i)};
      double v = p.eval(x.span());
      ++res.n_evaluations;
      if (res.x_best.size() == 0 || better(v, x, res.value, res.x_best)) {
        res.value = v;
        res.x_best = x;
      }
    }
  }
  return res;
}

Vec local_refine(const MultiPoly& p, const Vec& start, double tol) {
  if (start.size() != p.arity() || p.arity() > 2) throw DimensionError("local_refine needs a start point of the polynomial's arity (at most 2)");
  const Derivatives d = derivatives_of(p);
  Vec x = start;
  double fx = p.eval(x.span());

  for (std::size_t iter = 0; iter < kMaxRefineIter; ++iter) {
    Vec g = eval_grad(d, x);
    double gnorm = g.norm();
    if (gnorm <= tol) return x;

    SymMatrix H = eval_hess(d, x);
    std::optional<Vec> newton;
    if (min_eigenvalue(H) > 0.0) {
      try {
        newton = solve_sym(H, g, 1e-6) * -1.0;
      } catch (const Error&) {
      }
    }

    bool moved = false;
    if (newton) {
      // Full Newton step that shrinks the gradient is taken even when the
      // objective change is lost in rounding.
      Vec trial = x + *newton;
      double ft = p.eval(trial.span());
      if (ft <= fx + 1e-14 * (1.0 + std::abs(fx)) && eval_grad(d, trial).norm() < 0.5 * gnorm) {
        x = trial;
        fx = ft;
        moved = true;
      }
    }
    if (!moved) {
      Vec dir = newton ? *newton : g * -1.0;
      double slope = g.dot(dir);
      if (!(slope < 0.0)) {
        dir = g * -1.0;
        slope = -gnorm * gnorm;
      }
      for (double alpha = 1.0; alpha >= 1e-16; alpha *= 0.5) {
        Vec trial = x + dir * alpha;
        double ft = p.eval(trial.span());
        if (ft <= fx + 1e-4 * alpha * slope) {
          x = trial;
          fx = ft;
          moved = true;
          break;
        }
      }
    }
    if (!moved) throw NotConverged("local_refine: no descent step found (gradient norm " + std::to_string(gnorm) + ")");
  }
  throw NotConverged("local_refine: iteration limit reached");
}

OracleResult multistart(const MultiPoly& p, const Box& box, std::size_t k_starts, std::uint64_t seed,
                        unsigned threads, double tol) {
  if (p.arity() != box.dim() || box.dim() > 2)
    throw DimensionError("multistart needs a box of the polynomial's arity (at most 2)");

  Lcg rng(seed);
  std::vector<Vec> starts;
  starts.reserve(k_starts);
  for (std::size_t k = 0; k < k_starts; ++k) {
    Vec s(box.dim());
    for (std::size_t i = 0; i < box.dim(); ++i)
      s[i] = box.lower[i] + (box.upper[i] - box.lower[i]) * rng.next_unit();
    starts.push_back(s);
  }

  std::vector<std::optional<Vec>> refined(k_starts);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < k_starts; k += stride) {
      try {
        refined[k] = local_refine(p, starts[k], tol);
      } catch (const NotConverged&) {
      }
    }
  };
  const unsigned n_threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(k_starts, 1))));
  if (n_threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work, t, n_threads);
    for (auto& th : pool) th.join();
  }

  OracleResult res;
  res.refined = true;
  res.value = std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t k = 0; k < k_starts; ++k) {
    if (!refined[k]) continue;
    double v = p.eval(refined[k]->span());
    ++res.n_evaluations;
    if (!found || v < res.value) {
      res.value = v;
      res.x_best = *refined[k];
      found = true;
    }
  }
  if (!found) {
    // Every start failed; fall back to the best raw start.
    for (const Vec& s : starts) {
      double v = p.eval(s.span());
      ++res.n_evaluations;
      if (!found || v < res.value) {
        res.value = v;
        res.x_best = s;
        found = true;
      }
    }
    res.refined = false;
  }
  return res;
}

std::vector<double> derivative_roots(const MultiPoly& p, double lo, double hi) {
  if (p.arity() != 1) throw DimensionError("derivative_roots needs a univariate polynomial");
  if (!(lo < hi)) throw ValidationError("derivative_roots needs lo < hi");
  const MultiPoly q = p.partial_derivative(0);
  if (q.is_zero()) return {};
  const MultiPoly dq = q.partial_derivative(0);

  std::vector<double> suspicious;
  std::vector<double> roots = scan_roots(q, dq, lo, hi, kScanNodes, suspicious);
  if (!suspicious.empty()) {
    std::vector<double> still;
    roots = scan_roots(q, dq, lo, hi, kScanNodes * 10, still);
    if (!still.empty())
      throw RootIsolationFailure("derivative has a root near " + std::to_string(still.front()) +
                                 " that cannot be bracketed by a sign change");
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

UnivariateResult univariate_global(const MultiPoly& p, double lo, double hi) {
  UnivariateResult out;
  out.critical_points = derivative_roots(p, lo, hi);
  out.best.value = std::numeric_limits<double>::infinity();
  auto consider = [&](double x) {
    double v = eval1(p, x);
    ++out.best.n_evaluations;
    Vec xv{x};
    if (out.best.x_best.size() == 0 || better(v, xv, out.best.value, out.best.x_best)) {
      out.best.value = v;
      out.best.x_best = xv;
    }
    return v;
  };
  for (double r : out.critical_points) out.critical_values.push_back(consider(r));
  consider(lo);
  consider(hi);
  out.best.refined = true;
  return out;
}

double cauchy_root_bound(const MultiPoly& p) {
  if (p.arity() != 1) throw DimensionError("cauchy_root_bound needs a univariate polynomial");
  int deg = p.total_degree();
  if (deg <= 0) return 0.0;
  double lead = std::abs(p.coefficient(Exponents{static_cast<std::uint16_t>(deg), 0, 0, 0}).to_double());
  double worst = 0.0;
  for (const auto& [e, c] : p.terms())
    if (e[0] != deg) worst = std::max(worst, std::abs(c.to_double()) / lead);
  return 1.0 + worst;
}

}  // namespace cdual
