#include "cdual/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cdual/errors.hpp"

namespace cdual {
namespace {

using Dense = std::array<std::array<double, kMaxDim>, kMaxDim>;

void check_dim(std::size_t n) {
  if (n > kMaxDim) throw DimensionError("dimension " + std::to_string(n) + " exceeds the supported maximum of 4");
}

Dense to_dense(const SymMatrix& S) {
  Dense a{};
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = 0; j < S.size(); ++j) a[i][j] = S(i, j);
  return a;
}

double off_diagonal_norm(const Dense& a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) sum += a[i][j] * a[i][j];
  return std::sqrt(sum);
}

// Smaller and larger eigenvalue of [[a, b], [b, d]] without cancellation in
// the smaller one.
std::pair<double, double> eig2(double a, double b, double d) {
  double mean = 0.5 * (a + d);
  double radius = std::hypot(0.5 * (a - d), b);
  double det = a * d - b * b;
  if (mean >= 0.0) {
    double hi = mean + radius;
    double lo = hi != 0.0 ? det / hi : 0.0;
    return {std::min(lo, hi), std::max(lo, hi)};
  }
  double lo = mean - radius;
  double hi = det / lo;
  return {std::min(lo, hi), std::max(lo, hi)};
}

Vec pseudo_solve(const SymMatrix& S, const Vec& v) {
  EigenDecomposition ed = jacobi_eigen(S);
  double largest = 0.0;
  for (double lambda : ed.values) largest = std::max(largest, std::abs(lambda));
  const double cutoff = 1e-12 * std::max(largest, 1e-300);
  Vec x(S.size());
  for (std::size_t k = 0; k < S.size(); ++k) {
    double lambda = ed.values[k];
    if (std::abs(lambda) <= cutoff) continue;
    x += ed.vectors[k] * (ed.vectors[k].dot(v) / lambda);
  }
  return x;
}

Vec eliminate(const SymMatrix& S, const Vec& v, bool& singular) {
  const std::size_t n = S.size();
  Dense a = to_dense(S);
  Vec rhs = v;
  const double scale = std::max(S.max_abs(), 1e-300);
  singular = false;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) <= 1e-14 * scale) {
      singular = true;
      return Vec(n);
    }
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace

Vec::Vec(std::size_t n, double fill) : n_(n) {
  check_dim(n);
  std::fill_n(data_.begin(), n, fill);
}

Vec::Vec(std::initializer_list<double> values) : n_(values.size()) {
  check_dim(n_);
  std::copy(values.begin(), values.end(), data_.begin());
}

Vec::Vec(std::span<const double> values) : n_(values.size()) {
  check_dim(n_);
  std::copy(values.begin(), values.end(), data_.begin());
}

double Vec::norm() const { return std::sqrt(dot(*this)); }

double Vec::dot(const Vec& other) const {
  if (other.n_ != n_) throw DimensionError("vector dot product dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) sum += data_[i] * other.data_[i];
  return sum;
}

Vec& Vec::operator+=(const Vec& rhs) {
  if (rhs.n_ != n_) throw DimensionError("vector addition dimension mismatch");
  for (std::size_t i = 0; i < n_; ++i) data_[i] += rhs.data_[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& rhs) {
  if (rhs.n_ != n_) throw DimensionError("vector subtraction dimension mismatch");
  for (std::size_t i = 0; i < n_; ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Vec& Vec::operator*=(double factor) {
  for (std::size_t i = 0; i < n_; ++i) data_[i] *= factor;
  return *this;
}

bool operator==(const Vec& lhs, const Vec& rhs) {
  return lhs.n_ == rhs.n_ && std::equal(lhs.begin(), lhs.end(), rhs.begin());
}

SymMatrix::SymMatrix(std::size_t n) : n_(n) { check_dim(n); }

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  SymMatrix m(rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw DimensionError("symmetric matrix literal must be square");
    std::size_t j = 0;
    for (double value : row) {
      if (j >= i) {
        m.set(i, j, value);
      } else if (m(i, j) != value) {
        throw DimensionError("matrix literal is not symmetric at (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
      }
      ++j;
    }
    ++i;
  }
  return m;
}

std::size_t SymMatrix::index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  return i * n_ - i * (i + 1) / 2 + j;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (std::size_t k = 0; k < n_ * (n_ + 1) / 2; ++k) m = std::max(m, std::abs(data_[k]));
  return m;
}

Vec SymMatrix::operator*(const Vec& v) const {
  if (v.size() != n_) throw DimensionError("matrix-vector product dimension mismatch");
  Vec out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& rhs) {
  if (rhs.n_ != n_) throw DimensionError("matrix addition dimension mismatch");
  for (std::size_t k = 0; k < n_ * (n_ + 1) / 2; ++k) data_[k] += rhs.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double factor) {
  for (std::size_t k = 0; k < n_ * (n_ + 1) / 2; ++k) data_[k] *= factor;
  return *this;
}

EigenDecomposition jacobi_eigen(const SymMatrix& S) {
  const std::size_t n = S.size();
  Dense a = to_dense(S);
  Dense v{};
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) frob += a[i][j] * a[i][j];
  const double threshold = 1e-12 * std::max(1.0, std::sqrt(frob));

  for (int sweep = 0; sweep < 100 && off_diagonal_norm(a, n) > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p];
          double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k];
          double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v[k][p];
          double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<std::size_t, kMaxDim> order{};
  std::iota(order.begin(), order.begin() + n, std::size_t{0});
  std::sort(order.begin(), order.begin() + n, [&](std::size_t l, std::size_t r) { return a[l][l] < a[r][r]; });

  EigenDecomposition out;
  out.values = Vec(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t src = order[k];
    out.values[k] = a[src][src];
    out.vectors[k] = Vec(n);
    for (std::size_t i = 0; i < n; ++i) out.vectors[k][i] = v[i][src];
  }
  return out;
}

Vec eigenvalues(const SymMatrix& S) {
  switch (S.size()) {
    case 0:
      return Vec();
    case 1:
      return Vec{S(0, 0)};
    case 2: {
      auto [lo, hi] = eig2(S(0, 0), S(0, 1), S(1, 1));
      return Vec{lo, hi};
    }
    default:
      return jacobi_eigen(S).values;
  }
}

double min_eigenvalue(const SymMatrix& S) {
  if (S.size() == 0) throw DimensionError("min_eigenvalue of an empty matrix");
  return eigenvalues(S)[0];
}

PsdCheck is_psd(const SymMatrix& S, double tol) {
  double margin = min_eigenvalue(S);
  return {margin >= -tol, margin};
}

Vec solve_sym(const SymMatrix& S, const Vec& v, double residual_tol) {
  const std::size_t n = S.size();
  if (v.size() != n) throw DimensionError("solve_sym: right-hand side dimension mismatch");
  const double scale = std::max(S.max_abs(), 1e-300);

  Vec x(n);
  bool singular = false;
  if (n == 1) {
    singular = S(0, 0) == 0.0;
    if (!singular) x[0] = v[0] / S(0, 0);
  } else if (n == 2) {
    double det = S(0, 0) * S(1, 1) - S(0, 1) * S(0, 1);
    singular = std::abs(det) <= 1e-14 * scale * scale;
    if (!singular) {
      x[0] = (S(1, 1) * v[0] - S(0, 1) * v[1]) / det;
      x[1] = (S(0, 0) * v[1] - S(0, 1) * v[0]) / det;
    }
  } else {
    x = eliminate(S, v, singular);
  }
  if (singular) x = pseudo_solve(S, v);

  double residual = (S * x - v).norm();
  if (!(residual <= residual_tol * (1.0 + v.norm())))
    throw ColumnSpaceViolation("right-hand side is not in the column space (residual " + std::to_string(residual) +
                               ")");
  return x;
}

}  // namespace cdual
