#pragma once

#include "gmra/rational.hpp"

#include <complex>
#include <optional>
#include <string>

namespace gmra {

// (re + i*im) * sqrt(radicand) with Gaussian-rational coefficient and a
// squarefree radicand. Closed under multiplication and conjugation; sums stay
// exact when the radicands agree.
class Surd {
 public:
  Surd() = default;
  Surd(Rational re, Rational im = Rational(), long long radicand = 1);

  static Surd sqrt(long long n);  // sqrt(n) for n >= 1
  static Surd i() { return Surd(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  long long radicand() const { return radicand_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  Surd conj() const { return Surd(re_, -im_, radicand_); }
  Rational abs2() const { return (re_ * re_ + im_ * im_) * Rational(radicand_); }
  std::complex<double> to_complex() const;
  std::string to_string() const;

  friend Surd operator*(const Surd& a, const Surd& b);
  friend Surd operator-(const Surd& a) { return Surd(-a.re_, -a.im_, a.radicand_); }
  friend bool operator==(const Surd& a, const Surd& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.re_ == b.re_ && a.im_ == b.im_ && a.radicand_ == b.radicand_;
  }

  // nullopt when the radicands differ and neither side is zero.
  static std::optional<Surd> add(const Surd& a, const Surd& b);

 private:
  Rational re_, im_;
  long long radicand_ = 1;
};

// A complex number carried in double precision, plus its exact form when one
// is known. Arithmetic keeps the exact track alive as long as it stays closed.
class Value {
 public:
  Value() : num_(0.0), exact_(Surd()) {}
  Value(std::complex<double> z) : num_(z) {}  // NOLINT(google-explicit-constructor)
  Value(double x) : num_(x) {}  // NOLINT(google-explicit-constructor)
  Value(const Surd& s) : num_(s.to_complex()), exact_(s) {}  // NOLINT(google-explicit-constructor)

  static Value zero() { return Value(); }
  static Value one() { return Value(Surd(Rational(1))); }
  static Value rational(const Rational& r) { return Value(Surd(r)); }
  static Value sqrt(long long n) { return Value(Surd::sqrt(n)); }

  std::complex<double> num() const { return num_; }
  const std::optional<Surd>& exact() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }
  bool is_exact_zero() const { return exact_ && exact_->is_zero(); }
  bool is_zero() const { return exact_ ? exact_->is_zero() : num_ == std::complex<double>(0.0); }

  Value conj() const;
  double abs() const { return std::abs(num_); }

  Value& operator+=(const Value& o);
  Value& operator-=(const Value& o) { return *this += -o; }
  Value& operator*=(const Value& o);

  friend Value operator-(const Value& a);
  friend Value operator+(Value a, const Value& b) { return a += b; }
  friend Value operator-(Value a, const Value& b) { return a -= b; }
  friend Value operator*(Value a, const Value& b) { return a *= b; }

  // Exact equality when both sides are exact, otherwise float comparison.
  friend bool operator==(const Value& a, const Value& b);

  std::string to_string() const;

 private:
  std::complex<double> num_;
  std::optional<Surd> exact_;
};

// Magnitude of a residual; exactly 0.0 when the exact track proves zero.
double residual_abs(const Value& v);

// exp(2 pi i t); exact for t in {0, 1/2, +-1/4} modulo 1.
Value unit_phase_value(const Rational& t);

}  // namespace gmra
