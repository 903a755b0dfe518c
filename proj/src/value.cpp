#include "gmra/value.hpp"

#include "gmra/errors.hpp"

#include <cmath>
#include <numeric>

namespace gmra {

namespace {

// n = s^2 * r with r squarefree.
void split_square(long long n, long long& s, long long& r) {
  s = 1;
  r = 1;
  for (long long p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      s *= p;
    }
    if (n % p == 0) {
      n /= p;
      r *= p;
    }
  }
  r *= n;
}

}  // namespace

Surd::Surd(Rational re, Rational im, long long radicand)
    : re_(std::move(re)), im_(std::move(im)), radicand_(radicand) {
  if (radicand_ < 1) throw Error(ErrorCode::Unsupported, "radicand must be positive");
  long long s = 1, r = 1;
  split_square(radicand_, s, r);
  if (s != 1) {
    re_ *= Rational(s);
    im_ *= Rational(s);
  }
  radicand_ = r;
  if (is_zero()) radicand_ = 1;
}

Surd Surd::sqrt(long long n) { return Surd(Rational(1), Rational(0), n); }

std::complex<double> Surd::to_complex() const {
  if (radicand_ == 1) return {re_.to_double(), im_.to_double()};
  double r = std::sqrt(static_cast<double>(radicand_));
  return {re_.to_double() * r, im_.to_double() * r};
}

std::string Surd::to_string() const {
  std::string c = im_.is_zero() ? re_.to_string() : "(" + re_.to_string() + (im_.sign() < 0 ? "" : "+") + im_.to_string() + "i)";
  if (radicand_ == 1) return c;
  return c + "*sqrt(" + std::to_string(radicand_) + ")";
}

Surd operator*(const Surd& a, const Surd& b) {
  if (a.is_zero() || b.is_zero()) return Surd();
  Rational re = a.re_ * b.re_ - a.im_ * b.im_;
  Rational im = a.re_ * b.im_ + a.im_ * b.re_;
  // radicands are squarefree, so their gcd carries the whole square part
  long long g = std::gcd(a.radicand_, b.radicand_);
  long long r = (a.radicand_ / g) * (b.radicand_ / g);
  re *= Rational(g);
  im *= Rational(g);
  return Surd(re, im, r);
}

std::optional<Surd> Surd::add(const Surd& a, const Surd& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.radicand_ != b.radicand_) return std::nullopt;
  return Surd(a.re_ + b.re_, a.im_ + b.im_, a.radicand_);
}

Value Value::conj() const {
  Value v(std::conj(num_));
  if (exact_) v.exact_ = exact_->conj();
  return v;
}

Value& Value::operator+=(const Value& o) {
  if (exact_ && o.exact_) {
    if (auto s = Surd::add(*exact_, *o.exact_)) {
      exact_ = *s;
      num_ = s->to_complex();
      return *this;
    }
  } else if (is_exact_zero()) {
    return *this = o;
  } else if (o.is_exact_zero()) {
    return *this;
  }
  num_ += o.num_;
  exact_.reset();
  return *this;
}

Value& Value::operator*=(const Value& o) {
  if (exact_ && o.exact_) {
    exact_ = *exact_ * *o.exact_;
    num_ = exact_->to_complex();
    return *this;
  }
  if (is_exact_zero() || o.is_exact_zero()) return *this = Value();
  num_ *= o.num_;
  exact_.reset();
  return *this;
}

Value operator-(const Value& a) {
  Value v(-a.num_);
  if (a.exact_) v.exact_ = -*a.exact_;
  return v;
}

bool operator==(const Value& a, const Value& b) {
  if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
  return a.num_ == b.num_;
}

std::string Value::to_string() const {
  if (exact_) return exact_->to_string();
  return "(" + std::to_string(num_.real()) + "," + std::to_string(num_.imag()) + ")";
}

double residual_abs(const Value& v) {
  if (v.exact()) return v.exact()->is_zero() ? 0.0 : std::abs(v.exact()->to_complex());
  return std::abs(v.num());
}

Value unit_phase_value(const Rational& t) {
  Rational r = reduce_to_cube(t);
  if (r.is_zero()) return Value::one();
  if (r == Rational(-1, 2)) return Value(Surd(Rational(-1)));
  if (r == Rational(1, 4)) return Value(Surd::i());
  if (r == Rational(-1, 4)) return Value(-Surd::i());
  return Value(unit_phase(t));
}

}  // namespace gmra
