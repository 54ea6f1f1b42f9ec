#include "cdual/multipoly.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <vector>

#include "cdual/errors.hpp"

namespace cdual {
namespace {

int degree_of(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

double int_pow(double base, unsigned exponent) {
  double result = 1.0;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

}  // namespace

bool GradedLexGreater::operator()(const Exponents& lhs, const Exponents& rhs) const {
  int dl = degree_of(lhs);
  int dr = degree_of(rhs);
  if (dl != dr) return dl > dr;
  return lhs > rhs;
}

MultiPoly::MultiPoly(std::size_t arity) : arity_(arity) {
  if (arity == 0 || arity > kMaxArity)
    throw DimensionError("polynomial arity must be in [1, " + std::to_string(kMaxArity) + "]");
}

MultiPoly MultiPoly::constant(std::size_t arity, const Rational& value) {
  return monomial(arity, Exponents{}, value);
}

MultiPoly MultiPoly::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw DimensionError("variable index out of range");
  Exponents e{};
  e[index] = 1;
  return monomial(arity, e, Rational(1));
}

MultiPoly MultiPoly::monomial(std::size_t arity, const Exponents& exponents, const Rational& coeff) {
  MultiPoly p(arity);
  for (std::size_t i = arity; i < kMaxArity; ++i)
    if (exponents[i] != 0) throw DimensionError("exponent set beyond polynomial arity");
  p.add_term(exponents, coeff);
  return p;
}

void MultiPoly::add_term(const Exponents& exponents, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::check_same_arity(const MultiPoly& other, const char* op) const {
  if (arity_ != other.arity_)
    throw DimensionError(std::string("arity mismatch in ") + op + ": " + std::to_string(arity_) +
                         " vs " + std::to_string(other.arity_));
}

int MultiPoly::total_degree() const {
  // Graded order puts the highest degree first.
  return terms_.empty() ? -1 : degree_of(terms_.begin()->first);
}

int MultiPoly::degree_in(std::size_t var) const {
  if (var >= arity_) throw DimensionError("variable index out of range");
  int deg = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) deg = std::max(deg, static_cast<int>(e[var]));
  return deg;
}

Rational MultiPoly::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Rational(0) : it->second;
}

double MultiPoly::eval(std::span<const double> point) const {
  if (point.size() != arity_)
    throw DimensionError("eval: point has " + std::to_string(point.size()) + " coordinates, polynomial arity is " +
                         std::to_string(arity_));
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.to_double();
    for (std::size_t i = 0; i < arity_; ++i)
      if (e[i] != 0) term *= int_pow(point[i], e[i]);
    sum += term;
  }
  return sum;
}

Rational MultiPoly::eval_exact(std::span<const Rational> point) const {
  if (point.size() != arity_) throw DimensionError("eval_exact: point dimension does not match arity");
  Rational sum;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < arity_; ++i)
      if (e[i] != 0) term *= cdual::pow(point[i], e[i]);
    sum += term;
  }
  return sum;
}

MultiPoly MultiPoly::partial_derivative(std::size_t var) const {
  if (var >= arity_) throw DimensionError("partial_derivative: variable index out of range");
  MultiPoly out(arity_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    --d[var];
    out.add_term(d, c * Rational(e[var]));
  }
  return out;
}

MultiPoly MultiPoly::substitute_linear(const RationalMatrix& M, std::span<const Rational> d) const {
  if (M.rows() != arity_)
    throw DimensionError("substitute_linear: matrix has " + std::to_string(M.rows()) + " rows, expected " +
                         std::to_string(arity_));
  if (d.size() != arity_) throw DimensionError("substitute_linear: offset length does not match arity");
  const std::size_t new_arity = M.cols();

  // powers[i][k] = (row i of M . u + d_i)^k
  std::vector<std::vector<MultiPoly>> powers(arity_);
  for (std::size_t i = 0; i < arity_; ++i) {
    MultiPoly linear = MultiPoly::constant(new_arity, d[i]);
    for (std::size_t j = 0; j < new_arity; ++j)
      linear += MultiPoly::variable(new_arity, j).scale(M(i, j));
    int max_deg = std::max(degree_in(i), 0);
    powers[i].reserve(static_cast<std::size_t>(max_deg) + 1);
    powers[i].push_back(MultiPoly::constant(new_arity, Rational(1)));
    for (int k = 1; k <= max_deg; ++k) powers[i].push_back(powers[i].back() * linear);
  }

  MultiPoly out(new_arity);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(new_arity, c);
    for (std::size_t i = 0; i < arity_; ++i)
      if (e[i] != 0) term *= powers[i][e[i]];
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::substitute_linear(const RationalMatrix& M) const {
  std::vector<Rational> zero(arity_);
  return substitute_linear(M, zero);
}

MultiPoly MultiPoly::scale(const Rational& factor) const {
  MultiPoly out(arity_);
  if (factor.is_zero()) return out;
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, c * factor);
  return out;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
  MultiPoly result = MultiPoly::constant(arity_, Rational(1));
  MultiPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::operator-() const { return scale(Rational(-1)); }

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  check_same_arity(rhs, "add");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  check_same_arity(rhs, "sub");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) {
  check_same_arity(rhs, "mul");
  MultiPoly out(arity_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : rhs.terms_) {
      Exponents e{};
      for (std::size_t i = 0; i < arity_; ++i) e[i] = static_cast<std::uint16_t>(e1[i] + e2[i]);
      out.add_term(e, c1 * c2);
    }
  *this = std::move(out);
  return *this;
}

std::string MultiPoly::to_text() const {
  std::string out;
  for (const auto& [e, c] : terms_) {
    out += c.to_string();
    for (std::size_t i = 0; i < arity_; ++i) {
      out += ' ';
      out += std::to_string(e[i]);
    }
    out += '\n';
  }
  return out;
}

MultiPoly MultiPoly::from_text(std::string_view text, std::size_t arity) {
  MultiPoly p(arity);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string coeff_text;
    fields >> coeff_text;
    Exponents e{};
    for (std::size_t i = 0; i < arity; ++i) {
      long v = -1;
      if (!(fields >> v) || v < 0 || v > 65535)
        throw ParseError("polynomial text line " + std::to_string(line_no) + ": expected " +
                         std::to_string(arity) + " nonnegative exponents");
      e[i] = static_cast<std::uint16_t>(v);
    }
    std::string extra;
    if (fields >> extra)
      throw ParseError("polynomial text line " + std::to_string(line_no) + ": trailing field '" + extra + "'");
    p.add_term(e, Rational::parse(coeff_text));
  }
  return p;
}

std::string format_monomial(const Exponents& exponents, std::size_t arity) {
  std::string out;
  for (std::size_t i = 0; i < arity; ++i) {
    if (exponents[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(i);
    if (exponents[i] > 1) out += '^' + std::to_string(exponents[i]);
  }
  return out.empty() ? "1" : out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool is_const = degree_of(e) == 0;
    if (is_const) {
      os << mag;
    } else {
      if (mag != Rational(1)) os << mag << '*';
      os << format_monomial(e, arity_);
    }
  }
  return os.str();
}

}  // namespace cdual
