#include "gmra/wavelet.hpp"

#include "gmra/errors.hpp"
#include "gmra/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gmra {

namespace {

Value inv_sqrt(long long N) { return Value(Surd(Rational(1, N), Rational(0), N)); }

Rational power(const Rational& a, int k) {
  Rational f(1);
  for (int i = 0; i < std::abs(k); ++i) f *= a;
  return k < 0 ? Rational(1) / f : f;
}

bool all_piecewise(const FilterMatrix& M) {
  for (const auto& row : M)
    for (const auto& f : row)
      if (!f.as_piecewise()) return false;
  return true;
}

void require_line(const WaveletSystem& ws) {
  if (ws.sys->scheme->d != 1) throw Error(ErrorCode::Unsupported, "frame sums are implemented for d = 1");
}

// psi_k(x / a^n) with a^n = scale > 0, conjugated, times f.
PiecewiseFn analysis_integrand(const WaveletSystem& ws, const PiecewiseFn& f_hat, int k, const Rational& scale) {
  return pc_product(f_hat, (*ws.exact)[k].dilate(scale).conj());
}

std::complex<double> quadrature(const std::function<std::complex<double>(const Rational&)>& g,
                                const IntervalSet& where, long long q) {
  std::complex<double> acc = 0.0;
  for (const auto& iv : where.parts()) {
    BigInt cells = (iv.length() * Rational(q)).ceil();
    if (cells < 1) cells = 1;
    Rational h = iv.length() / Rational(cells);
    double hd = h.to_double();
    for (BigInt t = 0; t < cells; ++t) acc += g(iv.lo + (Rational(t) + Rational(1, 2)) * h) * hd;
  }
  return acc;
}

}  // namespace

std::complex<double> WaveletSystem::psi_hat(int k, const Point& x) const {
  if (k < 0 || k >= c_tilde()) throw Error(ErrorCode::IndexOutOfRange, "wavelet index");
  if (exact && sys->scheme->d == 1) {
    if (box.contains(x[0])) return (*exact)[k](x[0]).num();
    if (compact) return 0.0;
  }
  const auto& s = *sys->scheme;
  Point y = apply_B_inv(s, x);
  TorusPoint w = reduce(y);
  Eigen::VectorXcd ph = phi->evaluate(y);
  std::complex<double> acc = 0.0;
  for (int j = 0; j < sys->c(); ++j) acc += sys->G[k][j](w).num() * ph[j];
  return acc / std::sqrt(static_cast<double>(s.N));
}

WaveletSystem synthesize_wavelets(SystemPtr sys, PhiPtr phi, std::optional<int> target_level) {
  const auto& s = *sys->scheme;
  const int target = target_level.value_or(phi->K + 1);
  if (target > phi->K + 1)
    throw Error(ErrorCode::BoxTooSmall, "wavelet level " + std::to_string(target) + " needs Phi on level " +
                                            std::to_string(target - 1) + ", have K=" + std::to_string(phi->K));
  WaveletSystem ws;
  ws.sys = sys;
  ws.phi = phi;
  if (s.d != 1) return ws;
  const long long a = s.a();
  ws.box = {-power(Rational(std::llabs(a)), target) / Rational(2), power(Rational(std::llabs(a)), target) / Rational(2)};
  if (!phi->exact || a <= 0 || !all_piecewise(sys->G)) return ws;

  const Rational ar(a);
  const Interval full{phi->box.lo * ar, phi->box.hi * ar};
  std::vector<Rational> bps{full.lo, full.hi};
  for (const auto& f : *phi->exact)
    for (const auto& b : f.breakpoints()) bps.push_back(b * ar);
  std::vector<Rational> gbps{Rational(-1, 2), Rational(1, 2)};
  for (const auto& row : sys->G)
    for (const auto& f : row)
      for (const auto& b : f.as_piecewise()->breakpoints()) gbps.push_back(b);
  const Rational reach = phi->box.hi;
  for (const auto& b : gbps) {
    for (BigInt n = (-reach - b).floor(); n <= (reach - b).ceil(); ++n) {
      Rational x = ar * (b + Rational(n));
      if (full.lo <= x && x <= full.hi) bps.push_back(x);
    }
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  const Value scale = inv_sqrt(s.N);
  std::vector<PiecewiseFn> psi;
  for (int k = 0; k < sys->c_tilde(); ++k) {
    psi.push_back(pc_from_cells(
        bps,
        [&](const Rational& x) {
          Rational y = x / ar;
          TorusPoint w{reduce_to_cube(y)};
          Value acc = Value::zero();
          for (int j = 0; j < sys->c(); ++j) acc += sys->G[k][j](w) * (*phi->exact)[j](y);
          return acc * scale;
        },
        false));
  }
  ws.compact = phi->compact;
  if (ws.compact)
    for (const auto& f : psi)
      for (const auto& p : f.pieces())
        if (p.iv.lo < ws.box.lo || ws.box.hi < p.iv.hi) ws.compact = false;
  ws.exact = std::move(psi);
  return ws;
}

std::complex<double> frame_coefficient(const WaveletSystem& ws, const PiecewiseFn& f_hat, int n, int k,
                                       const BigInt& z, long long quad_q) {
  require_line(ws);
  if (k < 0 || k >= ws.c_tilde()) throw Error(ErrorCode::IndexOutOfRange, "wavelet index");
  const long long a = ws.sys->scheme->a();
  const Rational an = power(Rational(a), n);
  const double norm = std::pow(static_cast<double>(ws.sys->N()), -0.5 * n);
  const Rational freq = Rational(z) / an;
  if (ws.exact && ws.compact && a > 0)
    return norm * pc_integral_against_exponential(analysis_integrand(ws, f_hat, k, an), freq);
  auto g = [&](const Rational& x) {
    return f_hat(x).num() * std::conj(ws.psi_hat(k, Point{x / an})) * unit_phase(-freq * x);
  };
  return norm * quadrature(g, f_hat.support(), quad_q);
}

std::vector<double> frame_sum_direct_layers(const WaveletSystem& ws, const PiecewiseFn& f_hat, int J, int n_min,
                                            long long z_max) {
  require_line(ws);
  const long long a = ws.sys->scheme->a();
  if (!ws.exact || !ws.compact || a <= 0)
    throw Error(ErrorCode::Unsupported, "direct frame sum needs exact, compactly supported wavelets");
  if (J < n_min) return {};
  const double N = static_cast<double>(ws.sys->N());
  return parallel_map<double>(static_cast<std::size_t>(J - n_min + 1), [&](std::size_t idx) {
    const int n = n_min + static_cast<int>(idx);
    const Rational an = power(Rational(a), n);
    const double an_d = an.to_double();
    double layer = 0.0;
    for (int k = 0; k < ws.c_tilde(); ++k) {
      PiecewiseFn g = analysis_integrand(ws, f_hat, k, an);
      if (g.is_zero()) continue;
      // Breakpoints in the variable u = x / a^n; e^{-2 pi i z u} advanced by
      // repeated multiplication, resynchronized exactly every 64 steps.
      std::vector<Rational> us;
      for (const auto& p : g.pieces()) {
        us.push_back(p.iv.lo / an);
        us.push_back(p.iv.hi / an);
      }
      std::sort(us.begin(), us.end());
      us.erase(std::unique(us.begin(), us.end()), us.end());
      auto index_of = [&](const Rational& u) {
        return static_cast<std::size_t>(std::lower_bound(us.begin(), us.end(), u) - us.begin());
      };
      struct Term {
        std::size_t lo, hi;
        std::complex<double> v;
      };
      std::vector<Term> terms;
      std::complex<double> mean = 0.0;
      for (const auto& p : g.pieces()) {
        terms.push_back({index_of(p.iv.lo / an), index_of(p.iv.hi / an), p.value.num()});
        mean += p.value.num() * p.iv.length().to_double();
      }
      layer += std::norm(mean);
      std::vector<std::complex<double>> step(us.size()), cur(us.size());
      for (std::size_t i = 0; i < us.size(); ++i) cur[i] = step[i] = unit_phase(-us[i]);
      for (long long z = 1; z <= z_max; ++z) {
        if (z > 1) {
          if (z % 64 == 0)
            for (std::size_t i = 0; i < us.size(); ++i) cur[i] = unit_phase(-us[i] * Rational(z));
          else
            for (std::size_t i = 0; i < us.size(); ++i) cur[i] *= step[i];
        }
        std::complex<double> plus = 0.0, minus = 0.0;
        for (const auto& t : terms) {
          plus += t.v * (cur[t.hi] - cur[t.lo]);
          minus += t.v * (std::conj(cur[t.hi]) - std::conj(cur[t.lo]));
        }
        // int e^{-2 pi i t x} over [lo, hi) = (E(hi) - E(lo)) / (-2 pi i t), t = z / a^n
        const double denom = 2.0 * std::numbers::pi * static_cast<double>(z) / an_d;
        layer += (std::norm(plus) + std::norm(minus)) / (denom * denom);
      }
    }
    return layer * std::pow(N, -n);
  });
}

double frame_sum_direct(const WaveletSystem& ws, const PiecewiseFn& f_hat, int J, int n_min, long long z_max) {
  double total = 0.0;
  for (double v : frame_sum_direct_layers(ws, f_hat, J, n_min, z_max)) total += v;
  return total;
}

double frame_sum_FJ(const WaveletSystem& ws, const PiecewiseFn& f_hat, int J, long long grid_q) {
  require_line(ws);
  const auto& phi = *ws.phi;
  const long long a = ws.sys->scheme->a();
  const Rational P = power(Rational(std::llabs(a)), 1 + J);
  const Rational Pa = power(Rational(a), 1 + J);
  const Rational half = P / Rational(2);
  auto fold = [&](const Rational& t) { return t - P * Rational((t / P + Rational(1, 2)).floor()); };
  const IntervalSet supp = f_hat.support();
  if (supp.empty()) return 0.0;
  const Rational slo = supp.parts().front().lo, shi = supp.parts().back().hi;

  const bool exact = phi.exact && a > 0 &&
                     (phi.compact || (phi.box.lo <= slo / P && shi / P <= phi.box.hi));
  std::vector<PiecewiseFn> g;
  std::vector<Rational> cuts{-half, half};
  if (exact) {
    for (const auto& comp : *phi.exact) {
      g.push_back(pc_product(f_hat, comp.dilate(P).conj()));
      for (const auto& b : g.back().breakpoints()) cuts.push_back(fold(b));
    }
  } else {
    for (const auto& b : f_hat.breakpoints()) cuts.push_back(fold(b));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  struct Cell {
    Rational lo, hi;
    std::vector<BigInt> shifts;  // zeta with x + P zeta inside supp f
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Cell c{cuts[i], cuts[i + 1], {}};
    for (BigInt zeta = ((slo - c.lo) / P).floor(); zeta <= ((shi - c.lo) / P).ceil(); ++zeta)
      if (supp.contains(c.lo + P * Rational(zeta))) c.shifts.push_back(zeta);
    if (!c.shifts.empty()) cells.push_back(std::move(c));
  }

  auto per_cell = parallel_map<double>(cells.size(), [&](std::size_t idx) {
    const Cell& c = cells[idx];
    double acc = 0.0;
    if (exact) {
      for (const auto& gj : g) {
        Value sum = Value::zero();
        for (const auto& zeta : c.shifts) sum += gj(c.lo + P * Rational(zeta));
        acc += std::norm(sum.num()) * (c.hi - c.lo).to_double();
      }
      return acc;
    }
    BigInt steps = ((c.hi - c.lo) * Rational(grid_q)).ceil();
    if (steps < 1) steps = 1;
    const Rational h = (c.hi - c.lo) / Rational(steps);
    Eigen::VectorXcd sum(phi.c());
    for (BigInt t = 0; t < steps; ++t) {
      Rational x = c.lo + (Rational(t) + Rational(1, 2)) * h;
      sum.setZero();
      for (const auto& zeta : c.shifts) {
        Rational y = x + P * Rational(zeta);
        sum += f_hat(y).num() * phi.evaluate(Point{y / Pa}).conjugate();
      }
      acc += sum.squaredNorm();
    }
    return acc * h.to_double();
  });
  double total = 0.0;
  for (double v : per_cell) total += v;
  return total;
}

HVector mask_hvector(const SystemPtr& sys, HVector f, bool tilde) {
  const MultiplicityFn& m = tilde ? sys->mp.m_tilde : sys->mp.m;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto inner = f[i];
    const int idx = static_cast<int>(i) + 1;
    f[i] = [inner, m, idx](const TorusPoint& w) { return m.in_s(idx, w) ? inner(w) : Value::zero(); };
  }
  return f;
}

namespace {

// out_j(w) = sum_i M_ij(w) f_i(alpha w)
HVector apply_synthesis(const SystemPtr& sys, const FilterMatrix* M, const HVector& f, int out_dim) {
  HVector out;
  for (int j = 0; j < out_dim; ++j) {
    out.push_back([sys, M, f, j](const TorusPoint& w) {
      TorusPoint aw = alpha(*sys->scheme, w);
      Value acc = Value::zero();
      for (std::size_t i = 0; i < f.size(); ++i) {
        Value h = (*M)[i][j](w);
        if (!h.is_exact_zero()) acc += h * f[i](aw);
      }
      return acc;
    });
  }
  return out;
}

// out_i(w) = (1/N) sum_l sum_j conj(M_ij(w_l)) f_j(w_l)
HVector apply_analysis(const SystemPtr& sys, const FilterMatrix* M, const HVector& f) {
  HVector out;
  for (std::size_t i = 0; i < M->size(); ++i) {
    out.push_back([sys, M, f, i](const TorusPoint& w) {
      Value acc = Value::zero();
      for (const auto& wl : preimages(*sys->scheme, w)) {
        for (std::size_t j = 0; j < f.size(); ++j) {
          Value h = (*M)[i][j](wl);
          if (!h.is_exact_zero()) acc += h.conj() * f[j](wl);
        }
      }
      return acc * Value::rational(Rational(1, sys->N()));
    });
  }
  return out;
}

}  // namespace

HVector apply_SH(const SystemPtr& sys, const HVector& f) { return apply_synthesis(sys, &sys->H, f, sys->c()); }
HVector apply_SH_star(const SystemPtr& sys, const HVector& f) { return apply_analysis(sys, &sys->H, f); }
HVector apply_SG(const SystemPtr& sys, const HVector& ft) { return apply_synthesis(sys, &sys->G, ft, sys->c()); }
HVector apply_SG_star(const SystemPtr& sys, const HVector& f) { return apply_analysis(sys, &sys->G, f); }

CuntzResiduals cuntz_residuals(const SystemPtr& sys, const HVector& f, const HVector& ft,
                               const std::vector<TorusPoint>& samples) {
  if (static_cast<int>(f.size()) != sys->c() || static_cast<int>(ft.size()) != sys->c_tilde())
    throw Error(ErrorCode::DimensionMismatch, "test vectors do not match c and c~");
  const HVector hh = apply_SH_star(sys, apply_SH(sys, f));
  const HVector gg = apply_SG_star(sys, apply_SG(sys, ft));
  const HVector hg = apply_SH_star(sys, apply_SG(sys, ft));
  const HVector proj_h = apply_SH(sys, apply_SH_star(sys, f));
  const HVector proj_g = apply_SG(sys, apply_SG_star(sys, f));

  struct Row {
    double r[4] = {0, 0, 0, 0};
    bool exact = true;
  };
  auto rows = parallel_map<Row>(samples.size(), [&](std::size_t idx) {
    const TorusPoint& w = samples[idx];
    Row row;
    auto take = [&](int slot, const Value& v) {
      row.r[slot] = std::max(row.r[slot], residual_abs(v));
      if (!v.is_exact()) row.exact = false;
    };
    for (int i = 0; i < sys->c(); ++i) {
      Value fi = f[i](w);
      take(0, hh[i](w) - fi);
      take(2, hg[i](w));
      take(3, proj_h[i](w) + proj_g[i](w) - fi);
    }
    for (int k = 0; k < sys->c_tilde(); ++k) take(1, gg[k](w) - ft[k](w));
    return row;
  });
  CuntzResiduals res;
  for (const auto& row : rows) {
    res.sh_star_sh = std::max(res.sh_star_sh, row.r[0]);
    res.sg_star_sg = std::max(res.sg_star_sg, row.r[1]);
    res.sh_star_sg = std::max(res.sh_star_sg, row.r[2]);
    res.resolution = std::max(res.resolution, row.r[3]);
    res.exact = res.exact && row.exact;
  }
  return res;
}

HVector random_pc_hvector(const SystemPtr& sys, bool tilde, std::mt19937_64& rng, int pieces) {
  if (sys->scheme->d != 1) throw Error(ErrorCode::Unsupported, "random test vectors are implemented for d = 1");
  const MultiplicityFn& m = tilde ? sys->mp.m_tilde : sys->mp.m;
  const int dim = tilde ? sys->c_tilde() : sys->c();
  std::uniform_int_distribution<long long> den(2, 60), coef(-9, 9);
  HVector out;
  for (int i = 1; i <= dim; ++i) {
    std::vector<Rational> cuts{Rational(-1, 2), Rational(1, 2)};
    for (int t = 0; t + 1 < pieces; ++t) {
      long long q = den(rng);
      std::uniform_int_distribution<long long> num(-q / 2, (q - 1) / 2);
      cuts.push_back(Rational(num(rng), q));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<PcPiece> parts;
    for (std::size_t t = 0; t + 1 < cuts.size(); ++t) {
      Value v(Surd(Rational(coef(rng), 7), Rational(coef(rng), 5)));
      parts.push_back({{cuts[t], cuts[t + 1]}, v});
    }
    PiecewiseFn f = pc_product(PiecewiseFn(parts, true), pc_indicator(m.s_set(i)));
    out.push_back([f](const TorusPoint& w) { return pc_eval(f, w); });
  }
  return out;
}

std::vector<TorusPoint> random_torus_points(int d, std::size_t count, std::mt19937_64& rng, long long max_den) {
  std::uniform_int_distribution<long long> den(1, max_den);
  std::vector<TorusPoint> pts;
  for (std::size_t t = 0; t < count; ++t) {
    TorusPoint w;
    for (int c = 0; c < d; ++c) {
      long long q = den(rng);
      std::uniform_int_distribution<long long> num(0, q - 1);
      w.push_back(reduce_to_cube(Rational(num(rng), q)));
    }
    pts.push_back(std::move(w));
  }
  return pts;
}

}  // namespace gmra
