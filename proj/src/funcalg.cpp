#include "gmra/funcalg.hpp"

#include "gmra/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gmra {

namespace {

const Rational kHalf(1, 2);

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

PiecewiseFn::PiecewiseFn(std::vector<PcPiece> pieces, bool periodic) : periodic_(periodic) {
  for (const auto& p : pieces) {
    if (!(p.iv.lo < p.iv.hi))
      throw Error(ErrorCode::InvalidInterval, "[" + p.iv.lo.to_string() + "," + p.iv.hi.to_string() + ")");
    if (periodic && (p.iv.lo < -kHalf || p.iv.hi > kHalf))
      throw Error(ErrorCode::InvalidInterval, "periodic piece outside [-1/2,1/2]: [" + p.iv.lo.to_string() +
                                                  "," + p.iv.hi.to_string() + ")");
  }
  std::sort(pieces.begin(), pieces.end(), [](const PcPiece& a, const PcPiece& b) { return a.iv.lo < b.iv.lo; });
  for (std::size_t i = 1; i < pieces.size(); ++i)
    if (pieces[i].iv.lo < pieces[i - 1].iv.hi)
      throw Error(ErrorCode::OverlappingPieces, "[" + pieces[i - 1].iv.lo.to_string() + "," +
                                                    pieces[i - 1].iv.hi.to_string() + ") and [" +
                                                    pieces[i].iv.lo.to_string() + "," + pieces[i].iv.hi.to_string() + ")");
  for (auto& p : pieces)
    if (!p.value.is_zero()) pieces_.push_back(std::move(p));
}

Value PiecewiseFn::operator()(const Rational& x0) const {
  const Rational x = periodic_ ? reduce_to_cube(x0) : x0;
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Rational& v, const PcPiece& p) { return v < p.iv.lo; });
  if (it == pieces_.begin()) return Value::zero();
  --it;
  return it->iv.contains(x) ? it->value : Value::zero();
}

bool PiecewiseFn::is_exact() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const PcPiece& p) { return p.value.is_exact(); });
}

std::vector<Rational> PiecewiseFn::breakpoints() const {
  std::vector<Rational> b;
  for (const auto& p : pieces_) {
    b.push_back(p.iv.lo);
    b.push_back(p.iv.hi);
  }
  sort_unique(b);
  return b;
}

IntervalSet PiecewiseFn::support() const {
  std::vector<Interval> parts;
  for (const auto& p : pieces_) parts.push_back(p.iv);
  return IntervalSet(std::move(parts));
}

PiecewiseFn PiecewiseFn::conj() const {
  auto out = *this;
  for (auto& p : out.pieces_) p.value = p.value.conj();
  return out;
}

PiecewiseFn PiecewiseFn::times(const Value& v) const {
  std::vector<PcPiece> out;
  for (const auto& p : pieces_) out.push_back({p.iv, p.value * v});
  return PiecewiseFn(std::move(out), periodic_);
}

PiecewiseFn PiecewiseFn::dilate(const Rational& k) const {
  if (periodic_) throw Error(ErrorCode::Unsupported, "dilate needs a non-periodic function");
  if (k.sign() <= 0) throw Error(ErrorCode::Unsupported, "dilation factor must be positive");
  std::vector<PcPiece> out;
  for (const auto& p : pieces_) out.push_back({{p.iv.lo * k, p.iv.hi * k}, p.value});
  return PiecewiseFn(std::move(out), false);
}

PiecewiseFn PiecewiseFn::unroll(const Interval& window) const {
  if (!periodic_) throw Error(ErrorCode::Unsupported, "unroll needs a periodic function");
  std::vector<Rational> b{window.lo, window.hi};
  BigInt n0 = (window.lo + kHalf).floor();
  BigInt n1 = (window.hi + kHalf).ceil();
  for (BigInt n = n0; n <= n1; ++n) {
    Rational shift(n);
    b.push_back(shift - kHalf);
    for (const auto& p : pieces_) {
      b.push_back(p.iv.lo + shift);
      b.push_back(p.iv.hi + shift);
    }
  }
  std::vector<Rational> inside;
  for (auto& x : b)
    if (window.lo <= x && x <= window.hi) inside.push_back(x);
  return pc_from_cells(std::move(inside), [this](const Rational& x) { return (*this)(x); }, false);
}

std::string PiecewiseFn::to_string() const {
  if (pieces_.empty()) return "0";
  std::string s;
  for (const auto& p : pieces_) {
    if (!s.empty()) s += " + ";
    s += p.value.to_string() + "*[" + p.iv.lo.to_string() + "," + p.iv.hi.to_string() + ")";
  }
  return s;
}

PiecewiseFn pc_from_pieces(const std::vector<PieceSpec>& spec, bool periodic) {
  std::vector<PcPiece> pieces;
  for (const auto& s : spec) {
    if (!(s.lo < s.hi))
      throw Error(ErrorCode::InvalidInterval, "[" + s.lo.to_string() + "," + s.hi.to_string() + ")");
    if (s.symmetric) {
      if (s.lo.sign() < 0)
        throw Error(ErrorCode::InvalidInterval, "+-[a,b) needs a >= 0, got a=" + s.lo.to_string());
      pieces.push_back({{-s.hi, -s.lo}, s.value});
      pieces.push_back({{s.lo, s.hi}, s.value});
    } else {
      pieces.push_back({{s.lo, s.hi}, s.value});
    }
  }
  return PiecewiseFn(std::move(pieces), periodic);
}

PiecewiseFn pc_indicator(const IntervalSet& set, const Value& v, bool periodic) {
  std::vector<PcPiece> pieces;
  for (const auto& iv : set.parts()) pieces.push_back({iv, v});
  return PiecewiseFn(std::move(pieces), periodic);
}

PiecewiseFn pc_from_cells(std::vector<Rational> bps, const std::function<Value(const Rational&)>& eval,
                          bool periodic) {
  sort_unique(bps);
  std::vector<PcPiece> out;
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    Value v = eval(bps[i]);
    if (v.is_zero()) continue;
    if (!out.empty() && out.back().iv.hi == bps[i] && out.back().value == v) {
      out.back().iv.hi = bps[i + 1];
    } else {
      out.push_back({{bps[i], bps[i + 1]}, v});
    }
  }
  return PiecewiseFn(std::move(out), periodic);
}

Value pc_eval(const PiecewiseFn& f, const TorusPoint& x) { return f(x.at(0)); }

namespace {

std::vector<Rational> merged_breakpoints(const PiecewiseFn& f, const PiecewiseFn& g) {
  if (f.periodic() != g.periodic()) throw Error(ErrorCode::Unsupported, "mixing periodic and non-periodic functions");
  auto b = f.breakpoints();
  auto bg = g.breakpoints();
  b.insert(b.end(), bg.begin(), bg.end());
  if (f.periodic()) {
    b.push_back(-kHalf);
    b.push_back(kHalf);
  }
  return b;
}

}  // namespace

PiecewiseFn pc_product(const PiecewiseFn& f, const PiecewiseFn& g) {
  if (f.is_zero() || g.is_zero()) return PiecewiseFn({}, f.periodic());
  return pc_from_cells(merged_breakpoints(f, g), [&](const Rational& x) { return f(x) * g(x); }, f.periodic());
}

PiecewiseFn pc_sum(const PiecewiseFn& f, const PiecewiseFn& g) {
  return pc_from_cells(merged_breakpoints(f, g), [&](const Rational& x) { return f(x) + g(x); }, f.periodic());
}

double pc_integral_abs2(const PiecewiseFn& f) {
  double s = 0.0;
  for (const auto& p : f.pieces()) s += std::norm(p.value.num()) * p.iv.length().to_double();
  return s;
}

std::complex<double> pc_integral_against_exponential(const PiecewiseFn& f, const Rational& a) {
  if (f.periodic()) throw Error(ErrorCode::Unsupported, "exponential integral needs a non-periodic function");
  std::complex<double> total = 0.0;
  if (a.is_zero()) {
    for (const auto& p : f.pieces()) total += p.value.num() * p.iv.length().to_double();
    return total;
  }
  const std::complex<double> denom(0.0, -2.0 * std::numbers::pi * a.to_double());
  for (const auto& p : f.pieces())
    total += p.value.num() * (unit_phase(-(a * p.iv.hi)) - unit_phase(-(a * p.iv.lo)));
  return total / denom;
}

double unit_ramp(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  // phi(u) / (phi(u) + phi(1-u)) with phi(u) = exp(-1/u), rewritten to avoid underflow
  double e = 1.0 / u - 1.0 / (1.0 - u);
  if (e > 700.0) return 0.0;
  if (e < -700.0) return 1.0;
  return 1.0 / (1.0 + std::exp(e));
}

std::function<double(double)> smooth_step(const Rational& a, const Rational& b) {
  if (!(a < b)) throw Error(ErrorCode::InvalidInterval, "smooth_step needs a < b");
  const double lo = a.to_double();
  const double width = (b - a).to_double();
  return [lo, width](double x) { return unit_ramp((x - lo) / width); };
}

SmoothFilter::SmoothFilter(std::string kind, Rational epsilon, std::function<Value(const Rational&)> eval,
                           std::vector<Flat> flats)
    : kind_(std::move(kind)), epsilon_(std::move(epsilon)), eval_(std::move(eval)), flats_(std::move(flats)) {}

Rational SmoothFilter::flat_radius_at(const Rational& c0) const {
  Rational c = reduce_to_cube(c0);
  Rational best;
  for (const auto& f : flats_) {
    for (int shift = -1; shift <= 1; ++shift) {
      Rational x = c + Rational(shift);
      if (f.lo < x && x < f.hi) best = max(best, min(x - f.lo, f.hi - x));
    }
  }
  return best;
}

Rational default_epsilon() { return Rational(1, 100); }

SmoothPtr make_qmf_lowpass(const Rational& eps) {
  if (eps.sign() <= 0) throw Error(ErrorCode::InvalidInterval, "epsilon must be positive");
  if (eps >= Rational(1, 28))
    throw Error(ErrorCode::EpsilonTooLarge, "epsilon " + eps.to_string() + " makes the flat regions meet (need < 1/28)");

  // Region boundaries on [0, 1/2]; the function is even and 1-periodic.
  const Rational a1 = Rational(1, 14) + eps, b1 = Rational(1, 7) - eps;
  const Rational a2 = Rational(3, 14) + eps, b2 = Rational(2, 7) - eps;
  const Rational a3 = Rational(5, 14) + eps, b3 = Rational(3, 7) - eps;
  const Value root2 = Value::sqrt(2);
  const double r2 = std::sqrt(2.0);
  const double quarter_turn = std::numbers::pi / 2.0;

  auto eval = [=](const Rational& x) -> Value {
    const Rational y = reduce_to_cube(x).abs();
    if (y <= a1) return root2;
    if (y < b1) return Value(r2 * std::cos(quarter_turn * unit_ramp(((y - a1) / (b1 - a1)).to_double())));
    if (y <= a2) return Value::zero();
    if (y < b2) return Value(r2 * std::sin(quarter_turn * unit_ramp(((y - a2) / (b2 - a2)).to_double())));
    if (y <= a3) return root2;
    // mirror of the first band through 1/4: |p(y)|^2 + |p(1/2 - y)|^2 = 2
    if (y < b3) return Value(r2 * std::sin(quarter_turn * unit_ramp(((kHalf - y - a1) / (b1 - a1)).to_double())));
    return Value::zero();
  };

  std::vector<SmoothFilter::Flat> flats{
      {-a1, a1, root2},
      {b1, a2, Value::zero()},
      {-a2, -b1, Value::zero()},
      {b2, a3, root2},
      {-a3, -b2, root2},
      {b3, Rational(1) - b3, Value::zero()},
      {b3 - Rational(1), -b3, Value::zero()},
  };
  return std::make_shared<SmoothFilter>("qmf_lowpass", eps, eval, std::move(flats));
}

SmoothPtr highpass_from_lowpass_classical(const SmoothPtr& p0) {
  auto eval = [p0](const Rational& x) -> Value { return unit_phase_value(x) * (*p0)(x + kHalf).conj(); };
  // p1 vanishes exactly where p0(x + 1/2) does
  std::vector<SmoothFilter::Flat> flats;
  for (const auto& f : p0->flats())
    if (f.value.is_exact_zero()) flats.push_back({f.lo - kHalf, f.hi - kHalf, Value::zero()});
  return std::make_shared<SmoothFilter>("qmf_highpass", p0->epsilon(), eval, std::move(flats));
}

FilterFn FilterFn::piecewise(PiecewiseFn f) {
  if (!f.periodic()) throw Error(ErrorCode::Unsupported, "filter entries must be periodic");
  return FilterFn(Rep(std::move(f)));
}

FilterFn FilterFn::smooth(SmoothPtr base, Rational shift, std::optional<PiecewiseFn> mask, Value factor) {
  return FilterFn(Rep(Smooth{std::move(base), std::move(shift), std::move(mask), std::move(factor)}));
}

FilterFn FilterFn::sampled(std::map<TorusPoint, Value> values) { return FilterFn(Rep(Sampled{std::move(values)})); }

FilterFn FilterFn::callable(std::function<Value(const TorusPoint&)> fn, std::string label) {
  return FilterFn(Rep(Callable{std::move(fn), std::move(label)}));
}

namespace {

Rational torus_dist2(const TorusPoint& a, const TorusPoint& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational d = reduce_to_cube(a[i] - b[i]).abs();
    s += d * d;
  }
  return s;
}

}  // namespace

Value FilterFn::operator()(const TorusPoint& x) const {
  return std::visit(
      [&](const auto& r) -> Value {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PiecewiseFn>) {
          return r(x.at(0));
        } else if constexpr (std::is_same_v<T, Smooth>) {
          if (r.mask) {
            Value m = (*r.mask)(x.at(0));
            if (m.is_exact_zero()) return Value::zero();
            return r.factor * m * (*r.base)(x.at(0) + r.shift);
          }
          return r.factor * (*r.base)(x.at(0) + r.shift);
        } else if constexpr (std::is_same_v<T, Sampled>) {
          TorusPoint key = reduce(x);
          auto it = r.values.find(key);
          if (it != r.values.end()) return it->second;
          if (r.values.empty()) return Value::zero();
          // nearest sample on the torus
          const Value* best = nullptr;
          Rational bestd;
          for (const auto& [p, v] : r.values) {
            Rational dd = torus_dist2(p, key);
            if (!best || dd < bestd) {
              best = &v;
              bestd = dd;
            }
          }
          return *best;
        } else {
          return r.fn(x);
        }
      },
      rep_);
}

bool FilterFn::is_zero_function() const {
  if (auto p = as_piecewise()) return p->is_zero();
  return false;
}

Rational FilterFn::flat_radius_at_zero() const {
  if (auto p = as_piecewise()) {
    // distance from 0 to the nearest breakpoint, counting the wrap at +-1/2
    Rational r = kHalf;
    for (const auto& b : p->breakpoints()) {
      if (b.is_zero()) return Rational();
      r = min(r, b.abs());
    }
    return r;
  }
  if (auto s = as_smooth()) {
    Rational r = s->base->flat_radius_at(s->shift);
    if (s->mask) {
      Rational m = FilterFn::piecewise(*s->mask).flat_radius_at_zero();
      // a vanishing mask near 0 makes the entry flat regardless of the base
      if (s->mask->operator()(Rational(0)).is_exact_zero()) return m;
      r = min(r, m);
    }
    return r;
  }
  return Rational();
}

std::string FilterFn::describe() const {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PiecewiseFn>) {
          return "piecewise " + r.to_string();
        } else if constexpr (std::is_same_v<T, Smooth>) {
          return r.base->kind() + "(x+" + r.shift.to_string() + ")" + (r.mask ? " masked" : "");
        } else if constexpr (std::is_same_v<T, Sampled>) {
          return "sampled at " + std::to_string(r.values.size()) + " points";
        } else {
          return r.label;
        }
      },
      rep_);
}

}  // namespace gmra
