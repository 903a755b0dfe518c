#include "gmra/interval.hpp"

#include "gmra/errors.hpp"

#include <algorithm>

namespace gmra {

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  parts.erase(std::remove_if(parts.begin(), parts.end(), [](const Interval& i) { return i.empty(); }),
              parts.end());
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (auto& p : parts) {
    if (!parts_.empty() && p.lo <= parts_.back().hi) {
      if (parts_.back().hi < p.hi) parts_.back().hi = p.hi;
    } else {
      parts_.push_back(std::move(p));
    }
  }
}

IntervalSet IntervalSet::single(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidInterval, "[" + lo.to_string() + "," + hi.to_string() + ")");
  return IntervalSet({Interval{lo, hi}});
}

IntervalSet IntervalSet::symmetric(const Rational& a, const Rational& b) {
  if (!(a < b)) throw Error(ErrorCode::InvalidInterval, "+-[" + a.to_string() + "," + b.to_string() + ")");
  return IntervalSet({Interval{-b, -a}, Interval{a, b}});
}

IntervalSet IntervalSet::torus() { return single(Rational(-1, 2), Rational(1, 2)); }

bool IntervalSet::contains(const Rational& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rational& v, const Interval& i) { return v < i.lo; });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x);
}

Rational IntervalSet::measure() const {
  Rational m;
  for (const auto& p : parts_) m += p.length();
  return m;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), o.parts_.begin(), o.parts_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < o.parts_.size()) {
    Rational lo = max(parts_[i].lo, o.parts_[j].lo);
    Rational hi = min(parts_[i].hi, o.parts_[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (parts_[i].hi < o.parts_[j].hi) ++i; else ++j;
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::subtract(const IntervalSet& o) const {
  std::vector<Interval> out;
  for (const auto& p : parts_) {
    Rational cur = p.lo;
    for (const auto& q : o.parts_) {
      if (q.hi <= cur || q.lo >= p.hi) continue;
      if (cur < q.lo) out.push_back({cur, q.lo});
      cur = max(cur, q.hi);
      if (cur >= p.hi) break;
    }
    if (cur < p.hi) out.push_back({cur, p.hi});
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::translate(const Rational& t) const {
  std::vector<Interval> out;
  for (const auto& p : parts_) out.push_back({p.lo + t, p.hi + t});
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::scale(const Rational& k) const {
  if (k.sign() <= 0) throw Error(ErrorCode::Unsupported, "interval scaling needs a positive factor");
  std::vector<Interval> out;
  for (const auto& p : parts_) out.push_back({p.lo * k, p.hi * k});
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::fold_to_torus() const {
  static const Rational half(1, 2);
  std::vector<Interval> out;
  for (const auto& p : parts_) {
    if (p.length() >= Rational(1)) return torus();
    // shift so the left end lands in the cube; the piece may wrap once
    Rational shift = p.lo - reduce_to_cube(p.lo);
    Rational lo = p.lo - shift, hi = p.hi - shift;
    if (hi <= half) {
      out.push_back({lo, hi});
    } else {
      out.push_back({lo, half});
      out.push_back({-half, hi - Rational(1)});
    }
  }
  return IntervalSet(std::move(out));
}

bool IntervalSet::first_gap(const Interval& box, Rational& witness) const {
  Rational cur = box.lo;
  for (const auto& p : parts_) {
    if (p.hi <= cur) continue;
    if (p.lo > cur) break;
    cur = p.hi;
    if (cur >= box.hi) return false;
  }
  if (cur >= box.hi) return false;
  witness = cur;
  return true;
}

bool IntervalSet::covers(const Interval& box) const {
  Rational w;
  return !first_gap(box, w);
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::string s;
  for (const auto& p : parts_) {
    if (!s.empty()) s += " u ";
    s += "[" + p.lo.to_string() + "," + p.hi.to_string() + ")";
  }
  return s;
}

}  // namespace gmra
