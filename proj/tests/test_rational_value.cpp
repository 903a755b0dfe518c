#include "gmra/rational.hpp"
#include "gmra/value.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace gmra;

TEST_CASE("rationals parse and reduce to the cube") {
  CHECK(Rational::parse("6/8") == Rational(3, 4));
  CHECK(Rational::parse("-2") == Rational(-2));
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(reduce_to_cube(Rational(1, 2)) == Rational(-1, 2));
  CHECK(reduce_to_cube(Rational(-1, 2)) == Rational(-1, 2));
  CHECK(reduce_to_cube(Rational(13, 4)) == Rational(1, 4));
  CHECK(Rational(1, 3).to_string() == "1/3");
}

TEST_CASE("surds normalize and multiply exactly") {
  Surd r8 = Surd::sqrt(8);
  CHECK(r8.radicand() == 2);
  CHECK(r8.re() == Rational(2));
  Value r2 = Value::sqrt(2);
  CHECK((r2 * r2) == Value::rational(Rational(2)));
  Value inv = Value(Surd(Rational(1, 2), Rational(0), 2));  // 1/sqrt2
  CHECK((r2 * inv) == Value::one());
  CHECK((r2 * inv).num() == std::complex<double>(1.0, 0.0));
}

TEST_CASE("exact residuals are exactly zero, mixed radicands fall back to floats") {
  Value a = Value::sqrt(2) + Value::sqrt(2);
  CHECK(a.is_exact());
  CHECK(residual_abs(a - Value::sqrt(8)) == 0.0);
  Value b = Value::sqrt(2) + Value::sqrt(3);
  CHECK_FALSE(b.is_exact());
  CHECK(b.abs() == doctest::Approx(std::sqrt(2.0) + std::sqrt(3.0)));
}

TEST_CASE("unit phases at quarter turns are exact") {
  CHECK(unit_phase_value(Rational(0)) == Value::one());
  CHECK(unit_phase_value(Rational(1, 2)) == Value::rational(Rational(-1)));
  CHECK(unit_phase_value(Rational(1, 4)) == Value(Surd::i()));
  CHECK(unit_phase_value(Rational(-1, 4)) == Value(Surd::i().conj()));
  CHECK_FALSE(unit_phase_value(Rational(1, 3)).is_exact());
  CHECK(std::abs(unit_phase_value(Rational(1, 3)).num() - std::polar(1.0, 2.0 * M_PI / 3.0)) < 1e-15);
}
