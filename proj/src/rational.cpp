#include "gmra/rational.hpp"

#include "gmra/errors.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <ostream>

namespace gmra {

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty integer in '" + std::string(whole) + "'");
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw Error(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
  BigInt value = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw Error(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
    value = value * 10 + (s[i] - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  v_ = Rep(num, den);
}

Rational Rational::parse(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
  auto den = parse_integer(trim(s.substr(slash + 1)), text);
  if (den <= 0) throw Error(ErrorCode::ParseError, "denominator must be positive in '" + std::string(text) + "'");
  return Rational(parse_integer(trim(s.substr(0, slash)), text), den);
}

BigInt Rational::num() const { return boost::multiprecision::numerator(v_); }
BigInt Rational::den() const { return boost::multiprecision::denominator(v_); }

bool Rational::is_integer() const { return den() == 1; }

BigInt Rational::floor() const {
  BigInt n = num();
  BigInt d = den();
  BigInt q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

BigInt Rational::ceil() const {
  BigInt f = floor();
  return f * den() == num() ? f : BigInt(f + 1);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::ParseError, "division by zero");
  v_ /= o.v_;
  return *this;
}

double Rational::to_double() const { return v_.convert_to<double>(); }

std::string Rational::to_string() const {
  if (is_integer()) return num().str();
  return num().str() + "/" + den().str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational reduce_to_cube(const Rational& x) {
  static const Rational half(1, 2);
  return x - Rational((x + half).floor());
}

std::complex<double> unit_phase(const Rational& t) {
  double angle = 2.0 * std::numbers::pi * reduce_to_cube(t).to_double();
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace gmra
