#include "gmra/multiplicity.hpp"

#include "gmra/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace gmra {

namespace {

const Rational kHalf(1, 2);

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Breakpoints of x -> m(omega_l(x)) for every l: the images under alpha of
// the breakpoints of m.
std::vector<Rational> preimage_breakpoints(const DilationScheme& s, const MultiplicityFn& m) {
  std::vector<Rational> b = m.breakpoints();
  std::vector<Rational> out = b;
  for (const auto& x : b) out.push_back(reduce_to_cube(Rational(s.a()) * x));
  out.push_back(-kHalf);
  out.push_back(kHalf);
  sort_unique(out);
  return out;
}

bool exact_line_case(const DilationScheme& s, const MultiplicityFn& m) { return s.d == 1 && s.a() > 0 && m.exact(); }

int preimage_sum(const DilationScheme& s, const MultiplicityFn& m, const TorusPoint& w) {
  int sum = 0;
  for (const auto& p : preimages(s, w)) sum += m(p);
  return sum;
}

int scan_max(int d, const std::function<int(const TorusPoint&)>& rule) {
  int c = 0;
  for (const auto& w : rational_grid(d, d == 1 ? 7 * 64 : 16)) c = std::max(c, rule(w));
  return c;
}

}  // namespace

MultiplicityFn MultiplicityFn::from_pieces(std::vector<IntPiece> pieces) {
  for (const auto& p : pieces) {
    if (!(p.iv.lo < p.iv.hi))
      throw Error(ErrorCode::InvalidInterval, "[" + p.iv.lo.to_string() + "," + p.iv.hi.to_string() + ")");
    if (p.iv.lo < -kHalf || p.iv.hi > kHalf)
      throw Error(ErrorCode::InvalidInterval, "multiplicity piece outside the torus");
    if (p.value < 0) throw Error(ErrorCode::ConfigError, "multiplicity values must be nonnegative");
  }
  std::sort(pieces.begin(), pieces.end(), [](const IntPiece& a, const IntPiece& b) { return a.iv.lo < b.iv.lo; });
  for (std::size_t i = 1; i < pieces.size(); ++i)
    if (pieces[i].iv.lo < pieces[i - 1].iv.hi)
      throw Error(ErrorCode::OverlappingPieces, "multiplicity pieces overlap at " + pieces[i].iv.lo.to_string());
  MultiplicityFn f;
  f.d_ = 1;
  for (auto& p : pieces) {
    if (p.value == 0) continue;
    if (!f.pieces_.empty() && f.pieces_.back().iv.hi == p.iv.lo && f.pieces_.back().value == p.value)
      f.pieces_.back().iv.hi = p.iv.hi;
    else
      f.pieces_.push_back(p);
    f.c_ = std::max(f.c_, p.value);
  }
  return f;
}

MultiplicityFn MultiplicityFn::constant(int d, int value) {
  if (d == 1) return value == 0 ? from_pieces({}) : from_pieces({{{-kHalf, kHalf}, value}});
  return from_rule(d, [value](const TorusPoint&) { return value; }, value);
}

MultiplicityFn MultiplicityFn::from_rule(int d, std::function<int(const TorusPoint&)> rule, int max_value) {
  MultiplicityFn f;
  f.d_ = d;
  f.c_ = max_value;
  f.rule_ = std::move(rule);
  return f;
}

MultiplicityFn MultiplicityFn::from_cells(std::vector<Rational> bps, const std::function<int(const Rational&)>& eval) {
  bps.push_back(-kHalf);
  bps.push_back(kHalf);
  sort_unique(bps);
  std::vector<IntPiece> pieces;
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    if (bps[i] < -kHalf || bps[i + 1] > kHalf) continue;
    pieces.push_back({{bps[i], bps[i + 1]}, eval(bps[i])});
  }
  return from_pieces(std::move(pieces));
}

int MultiplicityFn::operator()(const TorusPoint& w) const {
  if (rule_) return rule_(reduce(w));
  const Rational x = reduce_to_cube(w.at(0));
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Rational& v, const IntPiece& p) { return v < p.iv.lo; });
  if (it == pieces_.begin()) return 0;
  --it;
  return it->iv.contains(x) ? it->value : 0;
}

std::vector<Rational> MultiplicityFn::breakpoints() const {
  std::vector<Rational> b{-kHalf, kHalf};
  for (const auto& p : pieces_) {
    b.push_back(p.iv.lo);
    b.push_back(p.iv.hi);
  }
  sort_unique(b);
  return b;
}

IntervalSet MultiplicityFn::s_set(int i) const {
  if (i < 1 || i > c_) throw Error(ErrorCode::IndexOutOfRange, "S_" + std::to_string(i) + " with c=" + std::to_string(c_));
  if (rule_) throw Error(ErrorCode::Unsupported, "exact S_i sets need a one-dimensional piecewise multiplicity");
  std::vector<Interval> parts;
  for (const auto& p : pieces_)
    if (p.value >= i) parts.push_back(p.iv);
  return IntervalSet(std::move(parts));
}

std::string MultiplicityFn::to_string() const {
  if (rule_) return "pointwise rule (max " + std::to_string(c_) + ")";
  if (pieces_.empty()) return "0";
  std::string s;
  for (const auto& p : pieces_) {
    if (!s.empty()) s += " + ";
    s += std::to_string(p.value) + "*[" + p.iv.lo.to_string() + "," + p.iv.hi.to_string() + ")";
  }
  return s;
}

bool operator==(const MultiplicityFn& a, const MultiplicityFn& b) {
  if (a.rule_ || b.rule_) return false;
  if (a.pieces_.size() != b.pieces_.size()) return false;
  for (std::size_t i = 0; i < a.pieces_.size(); ++i)
    if (!(a.pieces_[i].iv == b.pieces_[i].iv) || a.pieces_[i].value != b.pieces_[i].value) return false;
  return true;
}

IntervalSet s_set(const MultiplicityFn& m, int i) { return m.s_set(i); }

MultiplicityFn conjugate_multiplicity(const DilationScheme& s, const MultiplicityFn& m) {
  if (m.d() != s.d) throw Error(ErrorCode::DimensionMismatch, "multiplicity dimension differs from the scheme");
  auto value_at = [&s, m](const TorusPoint& w) {
    int v = preimage_sum(s, m, w) - m(w);
    if (v < 0)
      throw Error(ErrorCode::ConsistencyViolated, "m(w) > sum of m over preimages at w=" + to_string(w));
    return v;
  };
  if (exact_line_case(s, m)) {
    auto bps = preimage_breakpoints(s, m);
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
      // preimages move monotonically inside one cell, so the left end and the
      // midpoint must agree
      int left = value_at(torus_point(bps[i]));
      int mid = value_at(torus_point((bps[i] + bps[i + 1]) / Rational(2)));
      if (left != mid) throw std::logic_error("conjugate multiplicity is not constant on a refined cell");
    }
    return MultiplicityFn::from_cells(bps, [&](const Rational& x) { return value_at(torus_point(x)); });
  }
  DilationScheme scheme = s;
  auto rule = [scheme, m](const TorusPoint& w) {
    int v = preimage_sum(scheme, m, w) - m(w);
    if (v < 0) throw Error(ErrorCode::ConsistencyViolated, "m(w) > sum of m over preimages at w=" + to_string(w));
    return v;
  };
  return MultiplicityFn::from_rule(s.d, rule, scan_max(s.d, rule));
}

MultiplicityPair make_multiplicity_pair(const DilationScheme& s, const MultiplicityFn& m) {
  return MultiplicityPair{m, conjugate_multiplicity(s, m)};
}

MultiplicityFn preimage_pullback(const DilationScheme& s, const MultiplicityFn& m, int l) {
  if (l < 0 || l >= s.N) throw Error(ErrorCode::IndexOutOfRange, "preimage index");
  if (!exact_line_case(s, m)) throw Error(ErrorCode::Unsupported, "exact pullback needs d = 1, A > 0");
  return MultiplicityFn::from_cells(preimage_breakpoints(s, m), [&](const Rational& x) {
    return m(preimages(s, torus_point(x))[static_cast<std::size_t>(l)]);
  });
}

MultiplicityFn alpha_pullback(const DilationScheme& s, const MultiplicityFn& m) {
  if (!exact_line_case(s, m)) throw Error(ErrorCode::Unsupported, "exact pullback needs d = 1, A > 0");
  std::vector<Rational> bps;
  for (const auto& b : m.breakpoints())
    for (const auto& p : preimages(s, torus_point(b))) bps.push_back(p[0]);
  return MultiplicityFn::from_cells(bps, [&](const Rational& x) { return m(alpha(s, torus_point(x))); });
}

ConsistencyReport check_consistency_inequality(const DilationScheme& s, const MultiplicityFn& m, long long Q) {
  ConsistencyReport r;
  for (const auto& w : rational_grid(s, Q)) {
    ++r.points;
    int lhs = m(w);
    int rhs = preimage_sum(s, m, w);
    if (lhs > rhs) r.violations.push_back({w, lhs, rhs});
  }
  return r;
}

ConsistencyReport check_consistency_equation(const DilationScheme& s, const MultiplicityPair& mp, long long Q) {
  ConsistencyReport r;
  for (const auto& w : rational_grid(s, Q)) {
    ++r.points;
    int lhs = mp.m(w) + mp.m_tilde(w);
    int rhs = preimage_sum(s, mp.m, w);
    if (lhs != rhs) r.violations.push_back({w, lhs, rhs});
  }
  return r;
}

namespace {

// Image of a set under x -> a^k x, any nonzero integer a.
IntervalSet dilate_set(const IntervalSet& set, long long a, int k) {
  Rational f(1);
  for (int i = 0; i < std::abs(k); ++i) f *= Rational(std::abs(a));
  if (k < 0) f = Rational(1) / f;
  IntervalSet out = set.scale(f);
  if (a < 0 && (k % 2 != 0)) {
    std::vector<Interval> parts;
    for (const auto& p : out.parts()) parts.push_back({-p.hi, -p.lo});
    out = IntervalSet(std::move(parts));
  }
  return out;
}

}  // namespace

DeltaReport check_delta_conditions(const DilationScheme& s, const MultiplicityFn& m, int K, int n_max, int P,
                                   long long Q) {
  if (K < 1 || n_max < 1 || P < 1) throw Error(ErrorCode::IndexOutOfRange, "K, nMax, P must be >= 1");
  if (s.d != 1 || !m.exact()) throw Error(ErrorCode::Unsupported, "delta conditions are checked in dimension 1");
  DeltaReport r;
  r.K = K;
  r.n_max = n_max;
  r.P = P;
  r.Q = Q;

  IntervalSet S1 = m.max() >= 1 ? m.s_set(1) : IntervalSet();
  IntervalSet T;
  for (int n = -n_max; n <= n_max; ++n) T = T.unite(S1.translate(Rational(n)));
  IntervalSet delta;
  for (int k = 0; k <= K; ++k) delta = delta.unite(dilate_set(T, s.a(), k));
  r.delta = delta;

  // number of integers n with w + n in delta, counted part by part
  r.translate_ok = true;
  for (const auto& w : rational_grid(s, Q)) {
    BigInt count = 0;
    for (const auto& p : delta.parts()) {
      BigInt lo = (p.lo - w[0]).ceil();
      BigInt hi = (p.hi - w[0]).ceil();  // exclusive
      if (hi > lo) count += hi - lo;
    }
    if (count < m(w)) {
      r.translate_ok = false;
      r.translate_witness = w;
      break;
    }
  }

  IntervalSet cover;
  for (int p = -P; p <= P; ++p) cover = cover.unite(dilate_set(delta, s.a(), p));
  Rational half_box(1, 2);
  for (int i = 0; i < P; ++i) half_box *= Rational(std::abs(s.a()));
  Rational gap;
  if (cover.first_gap({-half_box, half_box}, gap)) {
    r.coverage_ok = false;
    r.coverage_witness = Point{gap};
  } else {
    r.coverage_ok = true;
  }
  return r;
}

std::string DeltaReport::summary() const {
  std::string depth = "(K=" + std::to_string(K) + ",nMax=" + std::to_string(n_max) + ",P=" + std::to_string(P) + ")";
  if (verified()) return "verified at depth " + depth;
  std::string s = "failed at depth " + depth + ":";
  if (!translate_ok) s += " translate count below m at w=" + (translate_witness ? to_string(*translate_witness) : "?");
  if (!coverage_ok) s += " dilates of delta miss x=" + (coverage_witness ? to_string(*coverage_witness) : "?");
  return s;
}

}  // namespace gmra
