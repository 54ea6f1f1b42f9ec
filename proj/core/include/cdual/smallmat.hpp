#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>

namespace cdual {

inline constexpr std::size_t kMaxDim = 4;

/// Fixed-capacity dense vector of at most kMaxDim doubles.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n, double fill = 0.0);
  Vec(std::initializer_list<double> values);
  explicit Vec(std::span<const double> values);

  std::size_t size() const { return n_; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<const double> span() const { return {data_.data(), n_}; }
  const double* begin() const { return data_.data(); }
  const double* end() const { return data_.data() + n_; }

  double norm() const;
  double dot(const Vec& other) const;

  Vec& operator+=(const Vec& rhs);
  Vec& operator-=(const Vec& rhs);
  Vec& operator*=(double factor);
  friend Vec operator+(Vec lhs, const Vec& rhs) { return lhs += rhs; }
  friend Vec operator-(Vec lhs, const Vec& rhs) { return lhs -= rhs; }
  friend Vec operator*(Vec lhs, double factor) { return lhs *= factor; }
  friend Vec operator*(double factor, Vec rhs) { return rhs *= factor; }

  friend bool operator==(const Vec& lhs, const Vec& rhs);

 private:
  std::size_t n_ = 0;
  std::array<double, kMaxDim> data_{};
};

/// Symmetric n x n matrix (n <= kMaxDim) with packed upper-triangular
/// storage, so symmetry holds structurally.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n);

  static SymMatrix identity(std::size_t n);
  /// Builds from full rows; throws DimensionError if the rows are not
  /// exactly symmetric.
  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double value) { data_[index(i, j)] = value; }

  double max_abs() const;

  Vec operator*(const Vec& v) const;
  SymMatrix& operator+=(const SymMatrix& rhs);
  SymMatrix& operator*=(double factor);
  friend SymMatrix operator+(SymMatrix lhs, const SymMatrix& rhs) { return lhs += rhs; }
  friend SymMatrix operator*(SymMatrix lhs, double factor) { return lhs *= factor; }
  friend SymMatrix operator*(double factor, SymMatrix rhs) { return rhs *= factor; }
  SymMatrix operator-() const { return *this * -1.0; }

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t n_ = 0;
  std::array<double, kMaxDim*(kMaxDim + 1) / 2> data_{};
};

struct EigenDecomposition {
  Vec values;                          // ascending
  std::array<Vec, kMaxDim> vectors{};  // vectors[k] pairs with values[k]
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
/// below 1e-12 (relative to max(1, ||S||_F)).
EigenDecomposition jacobi_eigen(const SymMatrix& S);

/// All eigenvalues in ascending order. Closed form for n <= 2.
Vec eigenvalues(const SymMatrix& S);
double min_eigenvalue(const SymMatrix& S);

struct PsdCheck {
  bool psd = false;
  double margin = 0.0;  // the minimum eigenvalue
};

PsdCheck is_psd(const SymMatrix& S, double tol);

/// Membership tolerance for S_a+: margin >= -kPsdTol counts as PSD.
inline constexpr double kPsdTol = 1e-9;
/// Relative residual bound for column-space membership checks.
inline constexpr double kColumnSpaceTol = 1e-9;

/// Solves S x = v. Nonsingular systems use a closed form (n <= 2) or
/// partially pivoted elimination; singular ones fall back to the
/// minimum-norm least-squares solution. Throws ColumnSpaceViolation when
/// ||S x - v|| > residual_tol * (1 + ||v||).
Vec solve_sym(const SymMatrix& S, const Vec& v, double residual_tol = kColumnSpaceTol);

}  // namespace cdual
