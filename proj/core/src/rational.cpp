#include "cdual/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>

#include "cdual/errors.hpp"

namespace cdual {
namespace {

using Wide = WideInt;

constexpr Wide kMax = std::numeric_limits<std::int64_t>::max();
constexpr Wide kMin = std::numeric_limits<std::int64_t>::min();
// Bound on intermediate magnitudes while parsing; keeps products inside 128 bits.
constexpr Wide kParseLimit = static_cast<Wide>(1) << 100;

Wide abs_wide(Wide v) { return v < 0 ? -v : v; }

Wide gcd_wide(Wide a, Wide b) {
  a = abs_wide(a);
  b = abs_wide(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(Wide v) { return v >= kMin && v <= kMax; }

[[noreturn]] void overflow(const char* what) {
  throw OverflowError(std::string("rational overflow in ") + what);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

Rational Rational::from_wide(Wide num, Wide den) {
  if (den == 0) throw DomainViolation("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  if (!fits(num) || !fits(den)) overflow("normalization");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&](const char* why) -> Rational {
    throw ParseError("invalid rational '" + std::string(text) + "': " + why);
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return fail("empty");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t p = 0;
    std::int64_t q = 0;
    auto num_part = text.substr(0, slash);
    auto den_part = text.substr(slash + 1);
    auto r1 = std::from_chars(num_part.data(), num_part.data() + num_part.size(), p);
    auto r2 = std::from_chars(den_part.data(), den_part.data() + den_part.size(), q);
    if (r1.ec != std::errc() || r1.ptr != num_part.data() + num_part.size()) return fail("bad numerator");
    if (r2.ec != std::errc() || r2.ptr != den_part.data() + den_part.size()) return fail("bad denominator");
    if (q == 0) return fail("zero denominator");
    return Rational(p, q);
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  Wide mantissa = 0;
  int scale = 0;  // value = mantissa * 10^scale
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch >= '0' && ch <= '9') {
      mantissa = mantissa * 10 + (ch - '0');
      if (mantissa > kParseLimit) return fail("too many digits");
      if (seen_point) --scale;
      any_digit = true;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) return fail("no digits");
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') return fail("unexpected character");
    ++i;
    int exponent = 0;
    auto rest = text.substr(i);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto r = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (r.ec != std::errc() || r.ptr != rest.data() + rest.size()) return fail("bad exponent");
    scale += exponent;
  }
  if (scale > 38 || scale < -38) return fail("exponent out of range");
  Wide num = negative ? -mantissa : mantissa;
  Wide den = 1;
  for (; scale > 0; --scale) {
    num *= 10;
    if (abs_wide(num) > kParseLimit) overflow("parse");
  }
  for (; scale < 0; ++scale) {
    den *= 10;
    if (den > kParseLimit) {
      // Reduce early so long decimal expansions of small fractions survive.
      Wide g = gcd_wide(num, den);
      num /= g;
      den /= g;
      if (den > kParseLimit) overflow("parse");
    }
  }
  return from_wide(num, den);
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw ParseError("non-finite number cannot be converted to a rational");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

Rational Rational::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) overflow("negation");
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  Wide num = static_cast<Wide>(num_) * rhs.den_ + static_cast<Wide>(rhs.num_) * den_;
  Wide den = static_cast<Wide>(den_) * rhs.den_;
  return *this = from_wide(num, den);
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  // Cross-reduce first so the 128-bit product stays small.
  Wide g1 = gcd_wide(num_, rhs.den_);
  Wide g2 = gcd_wide(rhs.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  Wide num = (static_cast<Wide>(num_) / g1) * (static_cast<Wide>(rhs.num_) / g2);
  Wide den = (static_cast<Wide>(den_) / g2) * (static_cast<Wide>(rhs.den_) / g1);
  return *this = from_wide(num, den);
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw DomainViolation("rational division by zero");
  Wide num = static_cast<Wide>(num_) * rhs.den_;
  Wide den = static_cast<Wide>(den_) * rhs.num_;
  return *this = from_wide(num, den);
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  Wide l = static_cast<Wide>(lhs.num_) * rhs.den_;
  Wide r = static_cast<Wide>(rhs.num_) * lhs.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  os << r.num();
  if (r.den() != 1) os << '/' << r.den();
  return os;
}

Rational pow(Rational base, unsigned exponent) {
  Rational result(1);
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged rational matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RationalMatrix operator*(const RationalMatrix& lhs, const RationalMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw DimensionError("rational matrix product shape mismatch");
  RationalMatrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
      Rational acc;
      for (std::size_t k = 0; k < lhs.cols_; ++k) acc += lhs(i, k) * rhs(k, j);
      out(i, j) = acc;
    }
  return out;
}

}  // namespace cdual
