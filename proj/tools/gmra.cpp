// Batch driver: reads JSON configs, runs checks, writes report.txt, report.json
// and CSV data with gnuplot stubs into --out.
#include "gmra/config.hpp"
#include "gmra/errors.hpp"
#include "gmra/report.hpp"
#include "gmra/wavelet.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

using namespace gmra;

namespace {

// Errors raised while reading configs map to exit code 2.
struct ConfigStageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
auto load_stage(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw ConfigStageError(e.what());
  } catch (const json::exception& e) {
    throw ConfigStageError(e.what());
  }
}

struct Options {
  std::string system, loop, from, to, compare, f = "boxquarter", out = "gmra-out", highpass_phase = "1";
  long long Q = 0, zmax = 1 << 14, gridq = 4096, samples = 1000;
  int K = 4, kmax = 64, J = 10, nmin = -30, vectors = 10, delta_K = 4, delta_nmax = 8, delta_P = 3;
  unsigned long long seed = 1;
  double tol = 1e-10;
  bool check_profile = false;
};

std::vector<TorusPoint> torus_grid(const FilterSystem& sys, long long Q) {
  return rational_grid(*sys.scheme, Q > 0 ? Q : default_grid(sys.scheme->d));
}

PiecewiseFn parse_f(const std::string& spec) {
  if (spec == "boxquarter") return pc_indicator(IntervalSet::single(Rational(-1, 4), Rational(1, 4)), Value::one(), false);
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::ConfigError, "--f expects boxquarter or lo:hi");
  return pc_indicator(IntervalSet::single(Rational::parse(spec.substr(0, colon)), Rational::parse(spec.substr(colon + 1))),
                      Value::one(), false);
}

json system_config_json(const std::string& path) { return read_json_file(path); }

SystemPtr load_system(const std::string& path) {
  return load_stage([&] { return assemble_system(parse_system_config(read_json_file(path))); });
}

void structure_checks(Report& r, const FilterSystem& sys, double lipschitz = 1e6) {
  StructureReport s = check_structure(sys);
  r.check_flag("support conditions", s.support_violations.empty(),
               s.support_violations.empty() ? "" : s.support_violations.front());
  r.check("low-pass condition h(0) = sqrt(N) E11", s.lowpass_defect, 0.0);
  r.check("Lipschitz estimate near 0", s.lipschitz_estimate, lipschitz);
}

void equation_checks(Report& r, const FilterSystem& sys, const std::vector<TorusPoint>& grid, double tol) {
  SweepReport sw = sweep_equations(sys, grid);
  std::string where = sw.worst ? to_string(*sw.worst) : "";
  r.check("filter equation", sw.filter_eq, tol, where);
  r.check("high-pass equation", sw.highpass_eq, tol, where);
  r.check("cross orthogonality", sw.cross_orth, tol, where);
  r.value("grid_points", sw.points);
  r.value("equations_exact", sw.exact);
}

int finish(const Report& r, const Options& o) {
  r.write(o.out);
  std::cout << r.to_text();
  return r.ok() ? 0 : 1;
}

int cmd_validate(const Options& o) {
  json cfgj = load_stage([&] { return system_config_json(o.system); });
  SystemConfig cfg = load_stage([&] { return parse_system_config(cfgj); });
  SystemPtr sys = load_stage([&] { return assemble_system(cfg); });
  Report r("validate", cfgj);
  structure_checks(r, *sys);
  auto grid = torus_grid(*sys, o.Q);
  equation_checks(r, *sys, grid, o.tol);
  if (sys->mp.m.exact() || sys->scheme->d > 1) {
    ConsistencyReport cr = check_consistency_equation(*sys->scheme, sys->mp, o.Q > 0 ? o.Q : default_grid(sys->scheme->d));
    r.check_flag("consistency equation m + m~ = sum m(w_l)", cr.ok(),
                 cr.ok() ? "" : to_string(cr.violations.front().omega));
  }
  if (sys->scheme->d == 1 && sys->scheme->a() > 0 && sys->mp.m.exact()) {
    r.value("m", sys->mp.m.to_string());
    r.value("m_tilde", sys->mp.m_tilde.to_string());
    DeltaReport dr = check_delta_conditions(*sys->scheme, sys->mp.m, o.delta_K, o.delta_nmax, o.delta_P,
                                            o.Q > 0 ? o.Q : default_grid(1));
    r.check_flag("delta conditions (K=" + std::to_string(o.delta_K) + ", nMax=" + std::to_string(o.delta_nmax) +
                     ", P=" + std::to_string(o.delta_P) + ")",
                 dr.verified(), dr.summary());
  }
  MSystem M = msystem_from_filters(sys);
  std::mt19937_64 rng(o.seed);
  double defect = 0.0;
  for (const auto& w : random_torus_points(sys->scheme->d, static_cast<std::size_t>(o.samples), rng))
    defect = std::max(defect, msystem_to_unitary_section(M, w).defect);
  r.check("unitary section defect", defect, o.tol);
  if (cfg.section_at_zero) {
    UnitarySection u = msystem_to_unitary_section(M, TorusPoint(sys->scheme->d, Rational()));
    double dev = 0.0;
    bool shape = u.values.size() == cfg.section_at_zero->size();
    for (std::size_t i = 0; shape && i < u.values.size(); ++i)
      for (std::size_t j = 0; j < u.values.size(); ++j)
        dev = std::max(dev, residual_abs(u.values[i][j] - (*cfg.section_at_zero)[i][j]));
    r.check("unitary section at 0 equals the listed matrix", shape ? dev : 1.0, 0.0);
  }
  return finish(r, o);
}

int cmd_cascade(const Options& o) {
  json cfgj = load_stage([&] { return system_config_json(o.system); });
  SystemPtr sys = load_system(o.system);
  Report r("cascade", cfgj);
  r.value("K", o.K);
  r.value("Q", o.Q > 0 ? o.Q : 256);
  r.value("kMax", o.kmax);
  ScalingVector phi = scaling_vector(sys, o.K, o.Q > 0 ? o.Q : 256, o.kmax);
  double inc = 0.0;
  for (double v : phi.increments) inc = std::max(inc, v);
  r.check("last cascade increment", inc, 1e-8);
  r.check("refinement equation residual", refinement_residual(phi, phi.points), 1e-8);
  r.value("exact_pieces", phi.exact.has_value());
  if (phi.exact)
    for (int i = 0; i < phi.c(); ++i) r.value("phi_" + std::to_string(i + 1), (*phi.exact)[i].to_string());
  if (sys->scheme->d == 1) {
    std::vector<Rational> xs;
    std::vector<CsvColumn> cols(phi.c());
    for (int i = 0; i < phi.c(); ++i) cols[i].name = "phi" + std::to_string(i + 1);
    for (std::size_t k = 0; k < phi.points.size(); ++k) {
      xs.push_back(phi.points[k][0]);
      for (int i = 0; i < phi.c(); ++i) cols[i].values.push_back(phi.values[k][i]);
    }
    write_csv(std::filesystem::path(o.out) / "phi.csv", xs, cols);
    write_plot_stub(std::filesystem::path(o.out) / "phi.gp", "phi.csv", cols);
    if (phi.compact) {
      // the box holds all of phi, so the periodization is complete
      const int z_max = static_cast<int>(phi.box.hi.abs().ceil()) + 1;
      auto grid = torus_grid(*sys, o.Q);
      for (int i = 1; i <= phi.c(); ++i) {
        auto prof = translate_norm_profile(phi, i, z_max, grid);
        double dev = 0.0;
        for (std::size_t g = 0; g < grid.size(); ++g)
          dev = std::max(dev, std::abs(prof[g] - (sys->mp.m.in_s(i, grid[g]) ? 1.0 : 0.0)));
        const std::string name = "translate norm profile of phi_" + std::to_string(i) + " equals chi of S_" + std::to_string(i);
        if (o.check_profile)
          r.check(name, dev, o.tol);
        else
          r.value("profile_deviation_phi_" + std::to_string(i), dev);
      }
    }
  }
  return finish(r, o);
}

int cmd_wavelet(const Options& o) {
  json cfgj = load_stage([&] { return system_config_json(o.system); });
  SystemPtr sys = load_system(o.system);
  Report r("wavelet", cfgj);
  const long long Q = o.Q > 0 ? o.Q : 256;
  auto phi = std::make_shared<const ScalingVector>(scaling_vector(sys, o.K, Q, o.kmax));
  WaveletSystem ws = synthesize_wavelets(sys, phi);
  r.value("exact_pieces", ws.exact.has_value());
  r.value("compact", ws.compact);
  if (ws.exact)
    for (int k = 0; k < ws.c_tilde(); ++k) r.value("psi_" + std::to_string(k + 1), (*ws.exact)[k].to_string());
  if (sys->scheme->d == 1) {
    std::vector<Rational> xs;
    std::vector<CsvColumn> cols(ws.c_tilde());
    for (int k = 0; k < ws.c_tilde(); ++k) cols[k].name = "psi" + std::to_string(k + 1);
    BigInt lo = (ws.box.lo * Rational(Q)).ceil(), hi = (ws.box.hi * Rational(Q)).ceil();
    for (BigInt t = lo; t < hi; ++t) {
      Rational x(t, BigInt(Q));
      xs.push_back(x);
      for (int k = 0; k < ws.c_tilde(); ++k) cols[k].values.push_back(ws.psi_hat(k, Point{x}));
    }
    write_csv(std::filesystem::path(o.out) / "psi.csv", xs, cols);
    write_plot_stub(std::filesystem::path(o.out) / "psi.gp", "psi.csv", cols);
    r.check_flag("wavelet samples written", !xs.empty());
  }
  return finish(r, o);
}

int cmd_parseval(const Options& o) {
  json cfgj = load_stage([&] { return system_config_json(o.system); });
  SystemPtr sys = load_system(o.system);
  PiecewiseFn f = load_stage([&] { return parse_f(o.f); });
  json stamp = {{"system", cfgj}, {"f", o.f}, {"J", o.J}, {"zMax", o.zmax}, {"nMin", o.nmin}};
  Report r("parseval", stamp);
  const double norm2 = pc_integral_abs2(f);
  auto phi = std::make_shared<const ScalingVector>(scaling_vector(sys, o.K, o.Q > 0 ? o.Q : 256, o.kmax));
  WaveletSystem ws = synthesize_wavelets(sys, phi);
  const double fj = frame_sum_FJ(ws, f, o.J, o.gridq);
  r.value("norm2", norm2);
  r.value("frame_sum_FJ", fj);
  r.check("Bessel bound FJ <= |f|^2", std::max(0.0, fj - norm2), 1e-12);
  std::cout << "|f|^2  = " << norm2 << "\nFJ     = " << fj << "\n";
  if (ws.exact && ws.compact) {
    const double direct = frame_sum_direct(ws, f, o.J, o.nmin, o.zmax);
    r.value("frame_sum_direct", direct);
    r.check("direct vs FJ", std::abs(direct - fj), 1e-3);
    std::cout << "direct = " << direct << "\n";
  }
  return finish(r, o);
}

int cmd_cuntz(const Options& o) {
  json cfgj = load_stage([&] { return system_config_json(o.system); });
  SystemPtr sys = load_system(o.system);
  Report r("cuntz", cfgj);
  std::mt19937_64 rng(o.seed);
  auto samples = random_torus_points(sys->scheme->d, static_cast<std::size_t>(o.samples), rng);
  CuntzResiduals worst;
  for (int v = 0; v < o.vectors; ++v) {
    HVector f = random_pc_hvector(sys, false, rng);
    HVector ft = random_pc_hvector(sys, true, rng);
    CuntzResiduals c = cuntz_residuals(sys, f, ft, samples);
    worst.sh_star_sh = std::max(worst.sh_star_sh, c.sh_star_sh);
    worst.sg_star_sg = std::max(worst.sg_star_sg, c.sg_star_sg);
    worst.sh_star_sg = std::max(worst.sh_star_sg, c.sh_star_sg);
    worst.resolution = std::max(worst.resolution, c.resolution);
    worst.exact = worst.exact && c.exact;
  }
  r.check("S_H* S_H = I", worst.sh_star_sh, o.tol);
  r.check("S_G* S_G = I", worst.sg_star_sg, o.tol);
  r.check("S_H* S_G = 0", worst.sh_star_sg, o.tol);
  r.check("S_H S_H* + S_G S_G* = I", worst.resolution, o.tol);
  r.value("exact", worst.exact);
  return finish(r, o);
}

int cmd_complete(const Options& o) {
  json cfgj = load_stage([&] { return system_config_json(o.system); });
  SystemPtr sys = load_system(o.system);
  Report r("complete-highpass", cfgj);
  auto grid = torus_grid(*sys, o.Q);
  FilterMatrix G = complete_highpass(*sys->scheme, sys->mp, sys->H, grid);
  auto done = std::make_shared<const FilterSystem>(
      assemble_filter_system(sys->scheme, sys->mp, sys->H, G, sys->name + "-completed"));
  equation_checks(r, *done, grid, o.tol);
  std::ofstream(std::filesystem::path(o.out) / "completed.json") << system_to_json(*done, grid).dump(2) << "\n";
  return finish(r, o);
}

// Largest deviation of `got` from `want` with the high-pass rows of `want` multiplied by `phase`.
double system_deviation(const FilterSystem& got, const FilterSystem& want, const Value& phase,
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

int cmd_loop_act(const Options& o) {
  json loopj = load_stage([&] { return read_json_file(o.loop); });
  json sysj = load_stage([&] { return system_config_json(o.system); });
  LoopElement L = load_stage([&] { return parse_loop_config(loopj); });
  SystemPtr sys = load_system(o.system);
  SystemPtr cmp = o.compare.empty() ? nullptr : load_system(o.compare);
  Report r("loop-act", {{"loop", loopj}, {"system", sysj}});
  MSystem out = loop_act(L, msystem_from_filters(sys));
  auto result = std::make_shared<const FilterSystem>(filters_from_msystem(out));
  auto grid = torus_grid(*sys, o.Q);
  const TorusPoint zero(sys->scheme->d, Rational());
  r.check("L(0) = Id", loop_distance(L, identity_loop(L.scheme, L.mp), {zero}), 1e-12);
  std::mt19937_64 rng(o.seed);
  auto pts = random_torus_points(sys->scheme->d, static_cast<std::size_t>(o.samples), rng);
  double defect = 0.0;
  for (const auto& w : pts) defect = std::max(defect, unitarity_defect(L.numeric(w)));
  r.check("loop unitarity defect", defect, o.tol);
  equation_checks(r, *result, grid, o.tol);
  if (cmp) {
    Value phase = loopj.contains("row_phase") ? parse_value_token(loopj.at("row_phase"), "row_phase") : Value::one();
    pts.insert(pts.end(), grid.begin(), grid.end());
    r.check("result vs comparison system (high-pass rows times row phase)", system_deviation(*result, *cmp, phase, pts),
            1e-12);
  }
  std::ofstream(std::filesystem::path(o.out) / "result.json") << system_to_json(*result, grid).dump(2) << "\n";
  return finish(r, o);
}

int cmd_loop_quotient(const Options& o) {
  json fromj = load_stage([&] { return system_config_json(o.from); });
  json toj = load_stage([&] { return system_config_json(o.to); });
  SystemPtr from = load_system(o.from);
  SystemPtr to = load_system(o.to);
  Value phase = load_stage([&] { return parse_value_token(json(o.highpass_phase), "--highpass-phase"); });
  if (!(phase == Value::one())) {
    FilterMatrix G = to->G;
    for (auto& row : G)
      for (auto& g : row) {
        FilterFn orig = g;
        g = FilterFn::callable([orig, phase](const TorusPoint& w) { return phase * orig(w); }, "phased");
      }
    to = std::make_shared<const FilterSystem>(assemble_filter_system(to->scheme, to->mp, to->H, G, to->name));
  }
  Report r("loop-quotient", {{"from", fromj}, {"to", toj}, {"highpass_phase", o.highpass_phase}});
  MSystem M = msystem_from_filters(from), Mt = msystem_from_filters(to);
  LoopElement L = loop_quotient(M, Mt);
  const TorusPoint zero(from->scheme->d, Rational());
  r.check("L(0) = Id", loop_distance(L, identity_loop(L.scheme, L.mp), {zero}), 1e-12);
  std::mt19937_64 rng(o.seed);
  auto pts = random_torus_points(from->scheme->d, static_cast<std::size_t>(o.samples), rng);
  double defect = 0.0;
  for (const auto& w : pts) defect = std::max(defect, unitarity_defect(L.numeric(w)));
  r.check("quotient unitarity defect", defect, o.tol);
  r.check("round trip L.M = M~", msystem_distance(loop_act(L, M), Mt, pts), 1e-12);
  if (from->scheme->d == 1) {
    std::vector<Rational> xs;
    std::vector<CsvColumn> cols;
    auto grid = torus_grid(*from, o.Q);
    int n = 0;
    for (const auto& w : grid) n = std::max(n, static_cast<int>(L.at(w).size()));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cols.push_back({"L" + std::to_string(i + 1) + std::to_string(j + 1), {}});
    for (const auto& w : grid) {
      ValueMatrix V = L.at(w);
      xs.push_back(w[0]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          cols[i * n + j].values.push_back(i < static_cast<int>(V.size()) && j < static_cast<int>(V.size())
                                               ? V[i][j].num()
                                               : std::complex<double>(std::nan(""), 0.0));
    }
    write_csv(std::filesystem::path(o.out) / "loop.csv", xs, cols);
    write_plot_stub(std::filesystem::path(o.out) / "loop.gp", "loop.csv", cols);
  }
  return finish(r, o);
}

int cmd_export(const Options& o) {
  std::filesystem::create_directories(o.out);
  for (const auto& [name, j] : example_configs()) {
    std::ofstream out(std::filesystem::path(o.out) / name);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + name);
    out << j.dump(2) << "\n";
    std::cout << "wrote " << (std::filesystem::path(o.out) / name).string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized multiresolution analyses: filters, cascades, frames and loop actions"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "output directory");
    c->add_option("--grid,--Q", o.Q, "grid denominator");
    c->add_option("--samples", o.samples, "random sample points");
    c->add_option("--seed", o.seed, "random seed");
    c->add_option("--tol", o.tol, "tolerance for residual checks");
  };
  auto add_cascade = [&](CLI::App* c) {
    c->add_option("--K", o.K, "box level");
    c->add_option("--kmax", o.kmax, "cascade depth");
  };

  auto* validate = app.add_subcommand("validate", "structure, filter equations, multiplicity and unitary section");
  validate->add_option("--system", o.system)->required();
  validate->add_option("--delta-K", o.delta_K, "delta conditions: box level");
  validate->add_option("--delta-nmax", o.delta_nmax, "delta conditions: dilation depth");
  validate->add_option("--delta-P", o.delta_P, "delta conditions: translate range");
  add_common(validate);
  auto* cascade = app.add_subcommand("cascade", "scaling vector by the infinite product");
  cascade->add_option("--system", o.system)->required();
  cascade->add_flag("--check-profile", o.check_profile, "require the translate norm profiles to equal chi of S_i");
  add_common(cascade);
  add_cascade(cascade);
  auto* wavelet = app.add_subcommand("wavelet", "wavelets from the scaling vector");
  wavelet->add_option("--system", o.system)->required();
  add_common(wavelet);
  add_cascade(wavelet);
  auto* parseval = app.add_subcommand("parseval", "frame sums, direct and via F^J");
  parseval->add_option("--system", o.system)->required();
  parseval->add_option("--f", o.f, "boxquarter or lo:hi");
  parseval->add_option("--J", o.J);
  parseval->add_option("--zmax", o.zmax);
  parseval->add_option("--nmin", o.nmin);
  parseval->add_option("--gridq", o.gridq, "quadrature points per unit length");
  add_common(parseval);
  add_cascade(parseval);
  auto* cuntz = app.add_subcommand("cuntz", "Cuntz relations on random piecewise-constant vectors");
  cuntz->add_option("--system", o.system)->required();
  cuntz->add_option("--vectors", o.vectors);
  add_common(cuntz);
  auto* complete = app.add_subcommand("complete-highpass", "complete the low-pass rows to a unitary system");
  complete->add_option("--system", o.system)->required();
  add_common(complete);
  auto* act = app.add_subcommand("loop-act", "apply a loop element to an M-system");
  act->add_option("--loop", o.loop)->required();
  act->add_option("--system", o.system)->required();
  act->add_option("--compare", o.compare, "system the result should equal");
  add_common(act);
  auto* quotient = app.add_subcommand("loop-quotient", "the loop element carrying one M-system to another");
  quotient->add_option("--from", o.from)->required();
  quotient->add_option("--to", o.to)->required();
  quotient->add_option("--highpass-phase", o.highpass_phase, "constant applied to the high-pass rows of --to");
  add_common(quotient);
  auto* exporter = app.add_subcommand("export-examples", "write the shipped example configs");
  exporter->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (o.tol == 1e-10 && (cuntz->parsed())) o.tol = 1e-12;

  try {
    std::filesystem::create_directories(o.out);
    if (validate->parsed()) return cmd_validate(o);
    if (cascade->parsed()) return cmd_cascade(o);
    if (wavelet->parsed()) return cmd_wavelet(o);
    if (parseval->parsed()) return cmd_parseval(o);
    if (cuntz->parsed()) return cmd_cuntz(o);
    if (complete->parsed()) return cmd_complete(o);
    if (act->parsed()) return cmd_loop_act(o);
    if (quotient->parsed()) return cmd_loop_quotient(o);
    if (exporter->parsed()) return cmd_export(o);
  } catch (const ConfigStageError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    Report r(app.get_subcommands().front()->get_name(), json::object());
    r.check_flag("run completed", false, e.what());
    r.write(o.out);
    return 1;
  }
  return 2;
}
