#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "cdual/rational.hpp"

namespace cdual {

inline constexpr std::size_t kMaxArity = 4;

/// Exponent tuple; entries at positions >= arity are always zero.
using Exponents = std::array<std::uint16_t, kMaxArity>;

/// Graded-lex ordering: higher total degree first, ties broken by
/// lexicographically larger exponent tuple.
struct GradedLexGreater {
  bool operator()(const Exponents& lhs, const Exponents& rhs) const;
};

/// Exact multivariate polynomial over the rationals in up to four variables.
///
/// Zero coefficients are never stored, so structural equality of the term
/// maps is polynomial equality.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexGreater>;

  explicit MultiPoly(std::size_t arity = 1);

  static MultiPoly constant(std::size_t arity, const Rational& value);
  static MultiPoly variable(std::size_t arity, std::size_t index);
  static MultiPoly monomial(std::size_t arity, const Exponents& exponents, const Rational& coeff);

  std::size_t arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  Rational coefficient(const Exponents& exponents) const;

  double eval(std::span<const double> point) const;
  Rational eval_exact(std::span<const Rational> point) const;

  MultiPoly partial_derivative(std::size_t var) const;

  /// Returns p(M u + d) expanded in the new variables u, where M has
  /// arity() rows and one column per new variable.
  MultiPoly substitute_linear(const RationalMatrix& M, std::span<const Rational> d) const;
  MultiPoly substitute_linear(const RationalMatrix& M) const;

  MultiPoly scale(const Rational& factor) const;
  MultiPoly pow(unsigned exponent) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);

  friend MultiPoly operator+(MultiPoly lhs, const MultiPoly& rhs) { return lhs += rhs; }
  friend MultiPoly operator-(MultiPoly lhs, const MultiPoly& rhs) { return lhs -= rhs; }
  friend MultiPoly operator*(MultiPoly lhs, const MultiPoly& rhs) { return lhs *= rhs; }
  friend MultiPoly operator*(MultiPoly lhs, const Rational& rhs) { return lhs.scale(rhs); }
  friend MultiPoly operator*(const Rational& lhs, MultiPoly rhs) { return rhs.scale(lhs); }

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  /// One term per line, "num/den e1 ... ek", graded-lex order. The zero
  /// polynomial serializes to the empty string.
  std::string to_text() const;
  static MultiPoly from_text(std::string_view text, std::size_t arity);

  /// Human-readable form such as "3*x0^4 - 8*x0^3 + 20".
  std::string to_string() const;

 private:
  void add_term(const Exponents& exponents, const Rational& coeff);
  void check_same_arity(const MultiPoly& other, const char* op) const;

  std::size_t arity_;
  TermMap terms_;
};

/// Formats a single monomial for diagnostics, e.g. "x0^2*x1".
std::string format_monomial(const Exponents& exponents, std::size_t arity);

}  // namespace cdual
