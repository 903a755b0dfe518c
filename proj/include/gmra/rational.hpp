#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace gmra {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number, always kept in lowest terms with a positive
// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

  // Accepts "p", "p/q", "-p/q" with optional surrounding whitespace.
  static Rational parse(std::string_view text);

  BigInt num() const;
  BigInt den() const;

  bool is_zero() const { return v_.is_zero(); }
  bool is_integer() const;
  int sign() const { return v_.sign(); }

  BigInt floor() const;
  BigInt ceil() const;
  Rational frac() const { return *this - Rational(floor()); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const;
  std::string to_string() const;

  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  using Rep = boost::multiprecision::cpp_rational;
  explicit Rational(Rep v) : v_(std::move(v)) {}
  Rep v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// Representative of x modulo 1 in [-1/2, 1/2).
Rational reduce_to_cube(const Rational& x);

// exp(2 pi i t), with t reduced exactly modulo 1 before the float evaluation.
std::complex<double> unit_phase(const Rational& t);

}  // namespace gmra
