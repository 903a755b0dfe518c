#pragma once

#include "gmra/interval.hpp"
#include "gmra/lattice.hpp"
#include "gmra/value.hpp"

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gmra {

struct PcPiece {
  Interval iv;
  Value value;
};

// Piecewise-constant function with rational breakpoints. Periodic functions
// live on [-1/2, 1/2) and are reduced modulo 1 before lookup.
class PiecewiseFn {
 public:
  PiecewiseFn() = default;
  PiecewiseFn(std::vector<PcPiece> pieces, bool periodic);

  Value operator()(const Rational& x) const;

  const std::vector<PcPiece>& pieces() const { return pieces_; }
  bool periodic() const { return periodic_; }
  bool is_exact() const;
  bool is_zero() const { return pieces_.empty(); }

  // Sorted distinct endpoints of all pieces.
  std::vector<Rational> breakpoints() const;
  IntervalSet support() const;

  PiecewiseFn conj() const;
  PiecewiseFn times(const Value& v) const;
  // g(x) = f(x / k), k > 0; non-periodic only.
  PiecewiseFn dilate(const Rational& k) const;
  // Non-periodic copy of a periodic function on the window [lo, hi).
  PiecewiseFn unroll(const Interval& window) const;

  std::string to_string() const;

 private:
  std::vector<PcPiece> pieces_;
  bool periodic_ = false;
};

struct PieceSpec {
  Rational lo, hi;
  Value value;
  bool symmetric = false;  // expands to [-hi,-lo) u [lo,hi)
};

PiecewiseFn pc_from_pieces(const std::vector<PieceSpec>& spec, bool periodic = true);
PiecewiseFn pc_indicator(const IntervalSet& set, const Value& v = Value::one(), bool periodic = true);

// Builds the function that is constant on each cell between consecutive
// breakpoints, taking the value `eval(left endpoint)`. Cells outside
// [front, back) are zero. Adjacent equal cells are merged and zero cells dropped.
PiecewiseFn pc_from_cells(std::vector<Rational> breakpoints,
                          const std::function<Value(const Rational&)>& eval, bool periodic);

Value pc_eval(const PiecewiseFn& f, const TorusPoint& x);

// Products and sums of two non-periodic functions (or two periodic ones).
PiecewiseFn pc_product(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn pc_sum(const PiecewiseFn& f, const PiecewiseFn& g);

// Integral of |f|^2 over the line (non-periodic) or the torus (periodic).
double pc_integral_abs2(const PiecewiseFn& f);

// Integral over the real line of f(x) exp(-2 pi i a x).
std::complex<double> pc_integral_against_exponential(const PiecewiseFn& f, const Rational& a);

// C-infinity ramp: 0 on (-inf, a], 1 on [b, inf).
std::function<double(double)> smooth_step(const Rational& a, const Rational& b);
// The underlying unit ramp theta on [0, 1].
double unit_ramp(double u);

// A smooth, 1-periodic function of one variable with known flat regions.
class SmoothFilter {
 public:
  struct Flat {
    Rational lo, hi;  // closed interval in R, not reduced
    Value value;
  };

  SmoothFilter(std::string kind, Rational epsilon, std::function<Value(const Rational&)> eval,
               std::vector<Flat> flats);

  Value operator()(const Rational& x) const { return eval_(x); }
  const std::string& kind() const { return kind_; }
  const Rational& epsilon() const { return epsilon_; }
  const std::vector<Flat>& flats() const { return flats_; }

  // Largest r with f constant on (c - r, c + r); 0 if c is not interior to a flat.
  Rational flat_radius_at(const Rational& c) const;

 private:
  std::string kind_;
  Rational epsilon_;
  std::function<Value(const Rational&)> eval_;
  std::vector<Flat> flats_;
};

using SmoothPtr = std::shared_ptr<const SmoothFilter>;

Rational default_epsilon();
SmoothPtr make_qmf_lowpass(const Rational& epsilon);
SmoothPtr highpass_from_lowpass_classical(const SmoothPtr& p0);

// Entry of a filter matrix: a function on the torus.
class FilterFn {
 public:
  struct Smooth {
    SmoothPtr base;
    Rational shift;
    std::optional<PiecewiseFn> mask;  // periodic; absent means 1
    Value factor = Value::one();
  };
  struct Sampled {
    std::map<TorusPoint, Value> values;
  };
  struct Callable {
    std::function<Value(const TorusPoint&)> fn;
    std::string label;
  };

  FilterFn() : rep_(PiecewiseFn({}, true)) {}
  static FilterFn zero() { return FilterFn(); }
  static FilterFn piecewise(PiecewiseFn f);
  static FilterFn smooth(SmoothPtr base, Rational shift = Rational(), std::optional<PiecewiseFn> mask = {},
                         Value factor = Value::one());
  static FilterFn sampled(std::map<TorusPoint, Value> values);
  static FilterFn callable(std::function<Value(const TorusPoint&)> fn, std::string label = "callable");

  Value operator()(const TorusPoint& x) const;
  Value at(const Rational& x) const { return (*this)(TorusPoint{x}); }

  const PiecewiseFn* as_piecewise() const { return std::get_if<PiecewiseFn>(&rep_); }
  const Smooth* as_smooth() const { return std::get_if<Smooth>(&rep_); }
  const Sampled* as_sampled() const { return std::get_if<Sampled>(&rep_); }
  bool is_zero_function() const;

  // Radius of a neighborhood of 0 on which the function is constant; 0 when
  // no such neighborhood is known (d = 1 only).
  Rational flat_radius_at_zero() const;

  std::string describe() const;

 private:
  using Rep = std::variant<PiecewiseFn, Smooth, Sampled, Callable>;
  explicit FilterFn(Rep r) : rep_(std::move(r)) {}
  Rep rep_;
};

}  // namespace gmra
