#include "gmra/cascade.hpp"

#include "gmra/errors.hpp"
#include "gmra/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace gmra {

namespace {

Value inv_sqrt(long long N) { return Value(Surd(Rational(1, N), Rational(0), N)); }

double max_abs(const Eigen::MatrixXcd& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

bool can_shortcut(const FilterSystem& sys, const Rational& r) { return sys.scheme->d == 1 && r.sign() > 0; }

Rational power(long long a, int k) {
  Rational f(1);
  for (int i = 0; i < k; ++i) f *= Rational(a);
  return f;
}

// H(w) / sqrt(N), through the exact track where it exists so that flat
// factors come out as exactly E_11.
Eigen::MatrixXcd scaled_factor(const FilterSystem& sys, const TorusPoint& w) {
  const Value scale = inv_sqrt(sys.N());
  ValueMatrix V = sys.H_values(w);
  Eigen::MatrixXcd F(sys.c(), sys.c());
  for (int i = 0; i < sys.c(); ++i)
    for (int j = 0; j < sys.c(); ++j) F(i, j) = (V[i][j] * scale).num();
  return F;
}

bool all_piecewise(const FilterSystem& sys) {
  for (const auto& row : sys.H)
    for (const auto& f : row)
      if (!f.as_piecewise()) return false;
  return true;
}

}  // namespace

Rational lowpass_flat_radius(const FilterSystem& sys) {
  if (sys.scheme->d != 1) return Rational();
  Rational r(1, 2);
  for (const auto& row : sys.H)
    for (const auto& f : row) r = min(r, f.flat_radius_at_zero());
  return r;
}

PartialProduct partial_product(const FilterSystem& sys, const Point& x, int k, bool shortcut) {
  const auto& s = *sys.scheme;
  const int c = sys.c();
  const Rational r = shortcut ? lowpass_flat_radius(sys) : Rational();
  PartialProduct pp;
  pp.x = x;
  pp.k = k;
  pp.matrix = Eigen::MatrixXcd::Identity(c, c);
  int last_change = 0;
  Point y = x;
  for (int q = 1; q <= k; ++q) {
    y = apply_B_inv(s, y);
    Eigen::MatrixXcd next;
    if (can_shortcut(sys, r) && y[0].abs() < r) {
      next = pp.matrix;
      for (int j = 1; j < c; ++j) next.col(j).setZero();
      if (max_abs(next - pp.matrix) > 1e-15) last_change = q;
      pp.matrix = next;
      break;  // every later factor is E_11 as well
    }
    next = pp.matrix * scaled_factor(sys, reduce(y));
    if (max_abs(next - pp.matrix) > 1e-15) last_change = q;
    pp.matrix = std::move(next);
  }
  if (last_change < k) pp.stabilized_at = last_change;
  return pp;
}

std::vector<Eigen::MatrixXcd> partial_product_history(const FilterSystem& sys, const Point& x, int k) {
  const auto& s = *sys.scheme;
  std::vector<Eigen::MatrixXcd> out{Eigen::MatrixXcd::Identity(sys.c(), sys.c())};
  Point y = x;
  for (int q = 1; q <= k; ++q) {
    y = apply_B_inv(s, y);
    out.push_back(out.back() * scaled_factor(sys, reduce(y)));
  }
  return out;
}

ValueMatrix partial_product_values(const FilterSystem& sys, const Point& x, int k) {
  const auto& s = *sys.scheme;
  const int c = sys.c();
  const Value scale = inv_sqrt(s.N);
  const Rational r = lowpass_flat_radius(sys);
  ValueMatrix P(c, std::vector<Value>(c, Value::zero()));
  for (int i = 0; i < c; ++i) P[i][i] = Value::one();
  Point y = x;
  for (int q = 1; q <= k; ++q) {
    y = apply_B_inv(s, y);
    if (can_shortcut(sys, r) && y[0].abs() < r) {
      for (auto& row : P)
        for (int j = 1; j < c; ++j) row[j] = Value::zero();
      break;
    }
    ValueMatrix F = sys.H_values(reduce(y));
    ValueMatrix next(c, std::vector<Value>(c, Value::zero()));
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < c; ++j) {
        Value acc;
        for (int t = 0; t < c; ++t) acc += P[i][t] * F[t][j];
        next[i][j] = acc * scale;
      }
    P = std::move(next);
  }
  return P;
}

bool ScalingVector::in_box(const Point& x) const {
  return sys->scheme->d == 1 && box.contains(x[0]);
}

Eigen::VectorXcd ScalingVector::evaluate(const Point& x) const {
  const int cc = c();
  if (exact && in_box(x)) {
    Eigen::VectorXcd v(cc);
    for (int i = 0; i < cc; ++i) v[i] = (*exact)[i](x[0]).num();
    return v;
  }
  if (compact) return Eigen::VectorXcd::Zero(cc);
  return partial_product(*sys, x, k_max).matrix.col(0);
}

ScalingVector scaling_vector(SystemPtr sys, int K, long long Q, int k_max) {
  if (K < 0 || Q < 1) throw Error(ErrorCode::IndexOutOfRange, "K >= 0 and Q >= 1 required");
  if (k_max < K + 10) throw Error(ErrorCode::IndexOutOfRange, "kMax must be at least K + 10");
  const auto& s = *sys->scheme;
  ScalingVector phi;
  phi.sys = sys;
  phi.K = K;
  phi.Q = Q;
  phi.k_max = k_max;

  if (s.d == 1) {
    const long long a = std::llabs(s.a());
    Rational half_width = power(a, K) / Rational(2);
    phi.box = {-half_width, half_width};
    BigInt jlo = (-half_width * Rational(Q)).ceil();
    BigInt jhi = (half_width * Rational(Q)).ceil();
    for (BigInt j = jlo; j < jhi; ++j) phi.points.push_back(Point{Rational(j, BigInt(Q))});
  } else {
    for (const auto& y : rational_grid(s, Q)) phi.points.push_back(apply_B_power(s, y, K));
  }

  struct Sample {
    Eigen::VectorXcd v;
    double inc;
    std::optional<int> stab;
  };
  auto samples = parallel_map<Sample>(phi.points.size(), [&](std::size_t idx) {
    PartialProduct pk = partial_product(*sys, phi.points[idx], k_max);
    double inc = 0.0;
    if (!pk.stabilized_at || *pk.stabilized_at >= k_max) {
      PartialProduct prev = partial_product(*sys, phi.points[idx], k_max - 1);
      inc = max_abs(pk.matrix - prev.matrix);
    }
    return Sample{pk.matrix.col(0), inc, pk.stabilized_at};
  });
  for (std::size_t i = 0; i < samples.size(); ++i) {
    phi.values.push_back(samples[i].v);
    phi.increments.push_back(samples[i].inc);
    phi.stabilized_at.push_back(samples[i].stab);
    if (samples[i].inc > 1e-8)
      throw Error(ErrorCode::NonConvergent, "increment " + std::to_string(samples[i].inc) + " at x=" +
                                                to_string(phi.points[i]) + " after kMax=" + std::to_string(k_max));
  }

  // Exact pieces: for A > 0 and piecewise H, phi is constant between the
  // points a^q (b + n) where a filter breakpoint b is hit before B^-q x
  // enters the flat neighborhood of 0.
  const Rational r = lowpass_flat_radius(*sys);
  if (s.d == 1 && s.a() > 0 && all_piecewise(*sys) && r.sign() > 0) {
    const long long a = s.a();
    std::vector<Rational> filter_bps{Rational(-1, 2), Rational(1, 2)};
    for (const auto& row : sys->H)
      for (const auto& f : row)
        for (const auto& b : f.as_piecewise()->breakpoints()) filter_bps.push_back(b);
    std::vector<Rational> bps{phi.box.lo, phi.box.hi};
    for (int q = 1;; ++q) {
      Rational aq = power(a, q);
      Rational reach = phi.box.hi / aq;  // max |B^-q x| over the box
      for (const auto& b : filter_bps) {
        BigInt n0 = (-reach - b).floor();
        BigInt n1 = (reach - b).ceil();
        for (BigInt n = n0; n <= n1; ++n) {
          Rational x = aq * (b + Rational(n));
          if (phi.box.lo <= x && x <= phi.box.hi) bps.push_back(x);
        }
      }
      if (reach < r) break;
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    auto cols = parallel_map<std::vector<Value>>(bps.size(), [&](std::size_t idx) {
      ValueMatrix P = partial_product_values(*sys, Point{bps[idx]}, k_max);
      std::vector<Value> col;
      for (const auto& row : P) col.push_back(row[0]);
      return col;
    });
    std::vector<PiecewiseFn> comps;
    for (int i = 0; i < sys->c(); ++i) {
      std::map<Rational, Value> at;
      for (std::size_t idx = 0; idx < bps.size(); ++idx) at.emplace(bps[idx], cols[idx][i]);
      comps.push_back(pc_from_cells(bps, [&](const Rational& x) { return at.at(x); }, false));
    }
    // phi(x) = H(x/a) phi(x/a) / sqrt(N): zero on the outer shell of the box
    // propagates to every |x| beyond it.
    IntervalSet inner = IntervalSet::single(phi.box.lo / Rational(a), phi.box.hi / Rational(a));
    IntervalSet shell = IntervalSet::single(phi.box.lo, phi.box.hi).subtract(inner);
    phi.compact = true;
    for (const auto& f : comps)
      if (!f.support().intersect(shell).empty()) phi.compact = false;
    phi.exact = std::move(comps);
  }
  return phi;
}

double refinement_residual(const ScalingVector& phi, const std::vector<Point>& xs) {
  const auto& sys = *phi.sys;
  const double rootN = std::sqrt(static_cast<double>(sys.N()));
  auto res = parallel_map<double>(xs.size(), [&](std::size_t idx) {
    const Point& x = xs[idx];
    Eigen::VectorXcd lhs = rootN * phi.evaluate(apply_B(*sys.scheme, x));
    Eigen::VectorXcd rhs = sys.H_at(reduce(x)) * phi.evaluate(x);
    return (lhs - rhs).cwiseAbs().maxCoeff();
  });
  return res.empty() ? 0.0 : *std::max_element(res.begin(), res.end());
}

L2Bound l2_bound_check(const FilterSystem& sys, int i, int k, long long Q) {
  if (i < 1 || i > sys.c()) throw Error(ErrorCode::IndexOutOfRange, "row index");
  const auto& s = *sys.scheme;
  std::vector<Point> mids;
  double cell = 0.0;
  if (s.d == 1) {
    const long long a = std::llabs(s.a());
    Rational half = power(a, k) / Rational(2);
    BigInt n = (half * Rational(2) * Rational(Q)).ceil();
    for (BigInt j = 0; j < n; ++j)
      mids.push_back(Point{-half + (Rational(j) + Rational(1, 2)) / Rational(Q)});
    cell = 1.0 / static_cast<double>(Q);
  } else {
    for (const auto& y : rational_grid(s, Q)) {
      Point m = y;
      for (auto& v : m) v += Rational(1, 2 * Q);
      mids.push_back(apply_B_power(s, reduce(m), k));
    }
    double vol = std::pow(static_cast<double>(s.N), k);
    cell = vol / std::pow(static_cast<double>(Q), s.d);
  }
  auto terms = parallel_map<double>(mids.size(), [&](std::size_t idx) {
    return partial_product(sys, mids[idx], k).matrix.row(i - 1).squaredNorm();
  });
  L2Bound b;
  for (double t : terms) b.value += t * cell;
  b.slack = 10.0 / static_cast<double>(Q);
  return b;
}

std::vector<double> translate_norm_profile(const ScalingVector& phi, int i, int z_max,
                                           const std::vector<TorusPoint>& grid) {
  if (i < 1 || i > phi.c()) throw Error(ErrorCode::IndexOutOfRange, "component index");
  return parallel_map<double>(grid.size(), [&](std::size_t idx) {
    double s = 0.0;
    for (int z = -z_max; z <= z_max; ++z) {
      Point x = grid[idx];
      x[0] += Rational(z);
      s += std::norm(phi.component(i - 1, x));
    }
    return s;
  });
}

}  // namespace gmra
