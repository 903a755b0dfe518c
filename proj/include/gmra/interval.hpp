#pragma once

#include "gmra/rational.hpp"

#include <string>
#include <vector>

namespace gmra {

// Half-open interval [lo, hi).
struct Interval {
  Rational lo, hi;

  bool contains(const Rational& x) const { return lo <= x && x < hi; }
  bool empty() const { return !(lo < hi); }
  Rational length() const { return hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite union of half-open intervals, kept sorted and merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);

  static IntervalSet single(const Rational& lo, const Rational& hi);
  // [-b,-a) u [a,b)
  static IntervalSet symmetric(const Rational& a, const Rational& b);
  static IntervalSet torus();  // [-1/2, 1/2)

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(const Rational& x) const;
  Rational measure() const;

  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet intersect(const IntervalSet& o) const;
  IntervalSet subtract(const IntervalSet& o) const;
  IntervalSet translate(const Rational& t) const;
  // Image under x -> k x for k > 0.
  IntervalSet scale(const Rational& k) const;

  // Image of this set under reduction modulo 1 into [-1/2, 1/2).
  IntervalSet fold_to_torus() const;

  bool covers(const Interval& box) const;
  // Smallest point of the box not covered, if any.
  bool first_gap(const Interval& box, Rational& witness) const;

  std::string to_string() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> parts_;
};

}  // namespace gmra
