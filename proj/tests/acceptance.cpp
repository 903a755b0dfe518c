// Runs the ten acceptance criteria and prints one PASS/FAIL line per criterion.
#include "gmra/config.hpp"
#include "gmra/errors.hpp"
#include "gmra/parallel.hpp"
#include "gmra/wavelet.hpp"

#include "smoothness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <iomanip>
#include <random>
#include <sstream>

using namespace gmra;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

const long long kGrid = 7 * 256;

Rational random_in(const IntervalSet& set, std::mt19937_64& rng) {
  const auto& parts = set.parts();
  std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
  const Interval& iv = parts[pick(rng)];
  std::uniform_int_distribution<long long> den(50, 5000);
  long long q = den(rng);
  std::uniform_int_distribution<long long> k(0, q - 1);
  return iv.lo + iv.length() * Rational(k(rng), q);
}

double indicator(const IntervalSet& s, const Rational& x) { return s.contains(x) ? 1.0 : 0.0; }

// max |got - want| with the high-pass rows of `want` multiplied by `phase`
double filter_deviation(const FilterSystem& got, const FilterSystem& want, const Value& phase,
                        const std::vector<TorusPoint>& pts) {
  double dev = 0.0;
  for (const auto& w : pts) {
    for (int i = 0; i < got.c(); ++i)
      for (int j = 0; j < got.c(); ++j) dev = std::max(dev, residual_abs(got.H[i][j](w) - want.H[i][j](w)));
    for (int k = 0; k < got.c_tilde(); ++k)
      for (int j = 0; j < got.c(); ++j) dev = std::max(dev, residual_abs(got.G[k][j](w) - phase * want.G[k][j](w)));
  }
  return dev;
}

void ac1(Outcome& o) {
  auto sys = dyadic_box_system();
  SweepReport sw = sweep_equations(*sys, rational_grid(1, kGrid));
  o.detail << "points=" << sw.points << " filter=" << sw.filter_eq << " highpass=" << sw.highpass_eq
           << " cross=" << sw.cross_orth << " exact=" << sw.exact;
  o.require(sw.points == kGrid, "grid size");
  o.require(sw.max() == 0.0, "nonzero residual");
  o.require(sw.exact, "exact track lost");
}

void ac2(Outcome& o) {
  auto sys = dyadic_box_system();
  auto phi = std::make_shared<const ScalingVector>(scaling_vector(sys, 3, 256, 40));
  const IntervalSet box = IntervalSet::single(Rational(-1, 4), Rational(1, 4));
  double err = 0.0;
  for (std::size_t k = 0; k < phi->points.size(); ++k) {
    const Rational& x = phi->points[k][0];
    if (x == Rational(-1, 4) || x == Rational(1, 4)) continue;  // breakpoints
    err = std::max(err, std::abs(phi->values[k][0] - indicator(box, x)));
  }
  WaveletSystem ws = synthesize_wavelets(sys, phi);
  const IntervalSet want = IntervalSet::symmetric(Rational(1, 4), Rational(1, 2));
  bool exact_psi = ws.exact && (*ws.exact)[0].support() == want;
  if (exact_psi)
    for (const auto& p : (*ws.exact)[0].pieces()) exact_psi = exact_psi && p.value == Value::one();
  o.detail << "phi max error=" << sci(err) << " psi=" << (ws.exact ? (*ws.exact)[0].to_string() : "none");
  o.require(err < 1e-12, "phi error");
  o.require(exact_psi, "psi not chi of +-[1/4,1/2)");
}

void ac3(Outcome& o) {
  auto sys = dyadic_box_system();
  auto phi = std::make_shared<const ScalingVector>(scaling_vector(sys, 3, 256, 40));
  WaveletSystem ws = synthesize_wavelets(sys, phi);
  const PiecewiseFn f = pc_indicator(IntervalSet::single(Rational(-1, 4), Rational(1, 4)), Value::one(), false);
  const double fj20 = frame_sum_FJ(ws, f, 20);
  const double fj10 = frame_sum_FJ(ws, f, 10);
  const double d10 = frame_sum_direct(ws, f, 10, -30, 1 << 14);
  bool mono_fj = true, mono_direct = true;
  double prev_fj = -1.0, prev_d = -1.0;
  for (int J = 0; J <= 10; ++J) {
    double a = frame_sum_FJ(ws, f, J), b = frame_sum_direct(ws, f, J, -30, 1 << 14);
    mono_fj = mono_fj && a >= prev_fj;
    mono_direct = mono_direct && b >= prev_d;
    prev_fj = a;
    prev_d = b;
  }
  o.detail << "FJ(20)=" << fj20 << " FJ(10)=" << fj10 << " direct(10)=" << d10 << " |diff|=" << sci(std::abs(d10 - fj10));
  o.require(fj20 >= 0.5 - 1e-5 && fj20 <= 0.5, "FJ(20) outside [0.5-1e-5, 0.5]");
  o.require(std::abs(d10 - fj10) < 1e-3, "direct vs FJ");
  o.require(mono_fj && mono_direct, "monotonicity in J");
}

void ac4(Outcome& o) {
  auto sys = journe_canonical_system();
  SweepReport sw = sweep_equations(*sys, rational_grid(1, kGrid));
  auto phi = std::make_shared<const ScalingVector>(scaling_vector(sys, 4, 256, 40));
  const IntervalSet s1 = journe_phi1_support(), s2 = journe_phi2_support();
  double err_phi = 0.0;
  for (std::size_t k = 0; k < phi->points.size(); ++k) {
    const Rational& x = phi->points[k][0];
    err_phi = std::max(err_phi, std::abs(phi->values[k][0] - indicator(s1, x)));
    err_phi = std::max(err_phi, std::abs(phi->values[k][1] - indicator(s2, x)));
  }
  WaveletSystem ws = synthesize_wavelets(sys, phi);
  const IntervalSet wset = journe_wavelet_set();
  double err_psi = 0.0;
  for (BigInt t = -16 * 256; t < 16 * 256; ++t) {
    Rational x(t, BigInt(256));
    err_psi = std::max(err_psi, std::abs(ws.psi_hat(0, Point{x}) - indicator(wset, x)));
  }
  const MultiplicityFn& m = sys->mp.m;
  auto grid = rational_grid(1, kGrid);
  double err_profile = 0.0;
  for (int i = 1; i <= 2; ++i) {
    auto prof = translate_norm_profile(*phi, i, 4, grid);
    for (std::size_t k = 0; k < grid.size(); ++k)
      err_profile = std::max(err_profile, std::abs(prof[k] - (m.in_s(i, grid[k]) ? 1.0 : 0.0)));
  }
  o.detail << "equations=" << sw.max() << " exact=" << sw.exact << " phi err=" << sci(err_phi)
           << " psi err=" << sci(err_psi) << " profile err=" << sci(err_profile);
  o.require(sw.max() == 0.0 && sw.exact, "filter equations not exact");
  o.require(err_phi < 1e-12, "phi");
  o.require(err_psi < 1e-12, "psi");
  o.require(err_profile < 1e-10, "translate profile");
}

void ac5(Outcome& o) {
  const Rational eps = default_epsilon();
  SmoothPtr p0 = make_qmf_lowpass(eps);
  std::mt19937_64 rng(5);
  double qmf = 0.0;
  for (const auto& w : random_torus_points(1, 10000, rng, 100000)) {
    double s = std::norm((*p0)(w[0]).num()) + std::norm((*p0)(w[0] + Rational(1, 2)).num());
    qmf = std::max(qmf, std::abs(s - 2.0));
  }
  auto sys = journe_smooth_system(eps);
  SweepReport sw = sweep_equations(*sys, rational_grid(1, kGrid));

  // P^k(x) stops changing once |x| / 2^k is inside the flat region around 0.
  const int kmax = 40;
  bool stable = true;
  long long checked = 0;
  std::vector<Rational> xs;
  for (long long j = -8 * 64; j < 8 * 64; ++j) xs.push_back(Rational(j, 64));
  for (const auto& w : random_torus_points(1, 200, rng)) xs.push_back(w[0] * Rational(16));
  for (const auto& x : xs) {
    auto hist = partial_product_history(*sys, Point{x}, kmax);
    const double bound = x.is_zero() ? 0.0 : std::log2(14.0 * std::abs(x.to_double())) + 2.0;
    // iterates start at k = 1; P^0 is the empty product
    int k0 = std::max(1, static_cast<int>(std::floor(bound)) + 1);
    for (int k = k0 + 1; k <= kmax; ++k) {
      stable = stable && (hist[k].array() == hist[k0].array()).all();
      ++checked;
    }
  }

  auto phi = std::make_shared<const ScalingVector>(scaling_vector(sys, 3, 256, 40));
  WaveletSystem ws = synthesize_wavelets(sys, phi);
  const PiecewiseFn f = pc_indicator(IntervalSet::single(Rational(-1, 4), Rational(1, 4)), Value::one(), false);
  const double fj = frame_sum_FJ(ws, f, 12);

  // Second differences of psi on [-3, 3) at three step sizes; a jump would
  // grow them by 4 per halving.
  double d8 = second_difference_max(ws, Rational(-3), Rational(3), Rational(1, 256));
  double d9 = second_difference_max(ws, Rational(-3), Rational(3), Rational(1, 512));
  double d10 = second_difference_max(ws, Rational(-3), Rational(3), Rational(1, 1024));

  o.detail << "qmf=" << sci(qmf) << " equations=" << sci(sw.max()) << " stable checks=" << checked
           << " FJ(12)=" << fj << " D2 max at h=2^-8,-9,-10: " << sci(d8) << " " << sci(d9) << " " << sci(d10);
  o.require(qmf < 1e-12, "qmf residual");
  o.require(sw.max() < 1e-10, "filter equations");
  o.require(stable, "cascade changed after the flat region");
  o.require(std::abs(fj - 0.5) < 1e-3, "FJ(12)");
  o.require(d10 <= 2.0 * d8 && d9 <= 2.0 * d8, "second differences blow up");
}

void ac6(Outcome& o) {
  std::mt19937_64 rng(6);
  auto pts = random_torus_points(1, 1000, rng);
  double worst = 0.0;
  for (const auto& sys : {dyadic_box_system(), journe_canonical_system(), journe_smooth_system()}) {
    MSystem M = msystem_from_filters(sys);
    double d = 0.0;
    for (const auto& w : pts) d = std::max(d, msystem_to_unitary_section(M, w).defect);
    o.detail << sys->name << "=" << sci(d) << " ";
    worst = std::max(worst, d);
  }
  UnitarySection u = msystem_to_unitary_section(canonical_journe_msystem(), TorusPoint{Rational()});
  const int lc[3][3] = {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
  bool equal = u.values.size() == 3;
  for (int i = 0; equal && i < 3; ++i)
    for (int j = 0; j < 3; ++j) equal = equal && u.values[i][j] == Value::rational(Rational(lc[i][j]));
  o.detail << "L(0) equals the canonical section exactly: " << equal;
  o.require(worst < 1e-10, "unitarity defect");
  o.require(equal, "L(0) differs from the canonical section");
}

void ac7(Outcome& o) {
  std::mt19937_64 rng(7);
  auto samples = random_torus_points(1, 1000, rng);
  for (const auto& sys : {dyadic_box_system(), journe_canonical_system(), journe_smooth_system()}) {
    const bool pc = sys->name != "journe-smooth";
    CuntzResiduals worst;
    for (int v = 0; v < 10; ++v) {
      CuntzResiduals c =
          cuntz_residuals(sys, random_pc_hvector(sys, false, rng), random_pc_hvector(sys, true, rng), samples);
      worst.sh_star_sh = std::max(worst.sh_star_sh, c.sh_star_sh);
      worst.sg_star_sg = std::max(worst.sg_star_sg, c.sg_star_sg);
      worst.sh_star_sg = std::max(worst.sh_star_sg, c.sh_star_sg);
      worst.resolution = std::max(worst.resolution, c.resolution);
      worst.exact = worst.exact && c.exact;
    }
    o.detail << sys->name << "=" << sci(worst.max()) << (worst.exact ? "(exact) " : " ");
    if (pc)
      o.require(worst.max() == 0.0 && worst.exact, sys->name + " not exactly 0");
    else
      o.require(worst.max() < 1e-12, sys->name + " above 1e-12");
  }
}

void ac8(Outcome& o) {
  auto grid = rational_grid(1, kGrid);
  for (const auto& sys : {dyadic_box_system(), journe_canonical_system()}) {
    FilterMatrix G1 = complete_highpass(*sys->scheme, sys->mp, sys->H, grid);
    FilterMatrix G2 = complete_highpass(*sys->scheme, sys->mp, sys->H, grid);
    FilterSystem done = assemble_filter_system(sys->scheme, sys->mp, sys->H, G1, sys->name);
    SweepReport sw = sweep_equations(done, grid);
    bool same = G1.size() == G2.size();
    for (std::size_t k = 0; same && k < G1.size(); ++k)
      for (std::size_t j = 0; j < G1[k].size(); ++j) {
        const auto* a = G1[k][j].as_sampled();
        const auto* b = G2[k][j].as_sampled();
        same = same && a && b && a->values.size() == b->values.size();
        if (!same) break;
        for (auto ia = a->values.begin(), ib = b->values.begin(); ia != a->values.end(); ++ia, ++ib)
          same = same && ia->first == ib->first && ia->second.num() == ib->second.num();
      }
    o.detail << sys->name << " eqs=" << sci(sw.max()) << " deterministic=" << same << " ";
    o.require(sw.max() < 1e-10, sys->name + " equations");
    o.require(same, sys->name + " differs between runs");
  }
}

void ac9(Outcome& o) {
  const MSystem MJ = canonical_journe_msystem();
  const LoopElement Lp = journe_loop_element();
  const MSystem MpJ = loop_act(Lp, MJ);
  const FilterSystem acted = filters_from_msystem(MpJ);
  auto smooth = journe_smooth_system();
  std::mt19937_64 rng(9);
  double dev = 0.0;
  std::vector<TorusPoint> all;
  for (const auto& piece : journe_t_pieces()) {
    std::vector<TorusPoint> pts;
    for (int t = 0; t < 1000; ++t) pts.push_back(TorusPoint{random_in(piece.set, rng)});
    dev = std::max(dev, filter_deviation(acted, *smooth, Value(Surd(Rational(-1))), pts));
    all.insert(all.end(), pts.begin(), pts.end());
  }
  const LoopElement Lq = loop_quotient(MJ, MpJ);
  const double round_trip = msystem_distance(loop_act(Lq, MJ), MpJ, all);
  const LoopElement id = identity_loop(MJ.scheme, MJ.mp);
  auto samples = random_torus_points(1, 1000, rng);
  const double free_j = loop_distance(loop_quotient(MJ, MJ), id, samples);
  const double free_p = loop_distance(loop_quotient(MpJ, MpJ), id, samples);
  const LoopElement L2 = journe_loop_element(Rational(1, 50));
  const double assoc = msystem_distance(loop_act(compose(Lp, L2), MJ), loop_act(Lp, loop_act(L2, MJ)), all);
  o.detail << "L_p.M_J vs smooth (g rows x -1)=" << sci(dev) << " round trip=" << sci(round_trip)
           << " quotient(M,M)-Id=" << sci(std::max(free_j, free_p)) << " associativity=" << sci(assoc);
  o.require(dev < 1e-12, "loop action vs smooth filters");
  o.require(round_trip < 1e-12, "quotient round trip");
  o.require(free_j < 1e-12 && free_p < 1e-12, "free action");
  o.require(assoc < 1e-12, "associativity");
}

void ac10(Outcome& o) {
  const auto& s = *dyadic_scheme();
  const MultiplicityFn m = journe_multiplicity();
  const MultiplicityFn mt = conjugate_multiplicity(s, m);
  const bool one = mt == MultiplicityFn::constant(1, 1) && mt.exact();
  ConsistencyReport cr = check_consistency_equation(s, make_multiplicity_pair(s, m), kGrid);
  DeltaReport dr = check_delta_conditions(s, m, 4, 8, 3, kGrid);
  o.detail << "m~=" << mt.to_string() << " consistency points=" << cr.points << " violations=" << cr.violations.size()
           << " delta: " << dr.summary();
  o.require(one, "conjugate multiplicity is not 1");
  o.require(cr.ok() && cr.points == kGrid, "consistency equation");
  o.require(dr.verified(), "delta conditions");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"dyadic box filter equations exact on the 7*2^8 grid", ac1},
      {"dyadic box cascade and wavelet", ac2},
      {"dyadic box Parseval frame sums", ac3},
      {"Journe canonical: equations, cascade, wavelet set, translate profile", ac4},
      {"Journe smooth: QMF, equations, stabilization, FJ, smoothness", ac5},
      {"unitary section defect and canonical section at 0", ac6},
      {"Cuntz relations", ac7},
      {"high-pass completion", ac8},
      {"loop action, quotient, freeness, associativity", ac9},
      {"multiplicity machinery", ac10},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " | " << o.detail.str() << " | " << std::fixed
              << std::setprecision(1) << secs << "s" << std::defaultfloat << std::setprecision(6) << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
