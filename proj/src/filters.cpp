#include "gmra/filters.hpp"

#include "gmra/errors.hpp"
#include "gmra/parallel.hpp"

#include <cmath>
#include <mutex>

namespace gmra {

namespace {

Value inv_sqrt(long long N) { return Value(Surd(Rational(1, N), Rational(0), N)); }

ValueMatrix eval_matrix(const FilterMatrix& F, const TorusPoint& w) {
  ValueMatrix out(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    out[i].reserve(F[i].size());
    for (const auto& f : F[i]) out[i].push_back(f(w));
  }
  return out;
}

struct PreimageValues {
  std::vector<TorusPoint> pre;
  std::vector<ValueMatrix> h;  // per l
  std::vector<ValueMatrix> g;
};

PreimageValues at_preimages(const FilterSystem& sys, const TorusPoint& w) {
  PreimageValues pv;
  pv.pre = preimages(*sys.scheme, w);
  for (const auto& p : pv.pre) {
    pv.h.push_back(sys.H_values(p));
    pv.g.push_back(sys.G_values(p));
  }
  return pv;
}

// sum_j sum_l X_aj(w_l) conj(Y_bj(w_l)) - diag(target) over all (a, b).
EqResidual gram_residual(const std::vector<ValueMatrix>& X, const std::vector<ValueMatrix>& Y, int rows_x, int rows_y,
                         int c, const std::function<Value(int, int)>& target) {
  EqResidual r;
  r.residual = Eigen::MatrixXd::Zero(rows_x, rows_y);
  for (int a = 0; a < rows_x; ++a) {
    for (int b = 0; b < rows_y; ++b) {
      Value acc;
      for (std::size_t l = 0; l < X.size(); ++l)
        for (int j = 0; j < c; ++j) acc += X[l][a][j] * Y[l][b][j].conj();
      Value diff = acc - target(a, b);
      r.exact = r.exact && diff.is_exact();
      r.residual(a, b) = residual_abs(diff);
    }
  }
  return r;
}

}  // namespace

ValueMatrix FilterSystem::H_values(const TorusPoint& w) const { return eval_matrix(H, w); }
ValueMatrix FilterSystem::G_values(const TorusPoint& w) const { return eval_matrix(G, w); }

Eigen::MatrixXcd FilterSystem::H_at(const TorusPoint& w) const {
  Eigen::MatrixXcd M(c(), c());
  for (int i = 0; i < c(); ++i)
    for (int j = 0; j < c(); ++j) M(i, j) = H[i][j](w).num();
  return M;
}

long long default_grid(int d) { return d == 1 ? 7 * 256 : 16; }

FilterSystem assemble_filter_system(SchemePtr scheme, MultiplicityPair mp, FilterMatrix H, FilterMatrix G,
                                    std::string name) {
  const int c = mp.c();
  const int ct = mp.c_tilde();
  if (static_cast<int>(H.size()) != c)
    throw Error(ErrorCode::DimensionMismatch, "H has " + std::to_string(H.size()) + " rows, c=" + std::to_string(c));
  for (const auto& row : H)
    if (static_cast<int>(row.size()) != c) throw Error(ErrorCode::DimensionMismatch, "H must be c x c");
  if (static_cast<int>(G.size()) != ct)
    throw Error(ErrorCode::DimensionMismatch, "G has " + std::to_string(G.size()) + " rows, c~=" + std::to_string(ct));
  for (const auto& row : G)
    if (static_cast<int>(row.size()) != c) throw Error(ErrorCode::DimensionMismatch, "G must be c~ x c");
  if (mp.m.d() != scheme->d) throw Error(ErrorCode::DimensionMismatch, "multiplicity dimension differs from A");
  return FilterSystem{std::move(scheme), std::move(mp), std::move(H), std::move(G), std::move(name)};
}

StructureReport check_structure(const FilterSystem& sys, const StructureOptions& opts) {
  StructureReport rep;
  const auto& s = *sys.scheme;
  const int c = sys.c();
  auto grid = rational_grid(s, opts.grid > 0 ? opts.grid : default_grid(s.d));
  rep.points = static_cast<long long>(grid.size());

  // entries of both H and G in column j vanish off S_j
  auto check_support = [&](const FilterMatrix& F, const char* label) {
    for (std::size_t i = 0; i < F.size(); ++i) {
      for (int j = 0; j < c; ++j) {
        const FilterFn& f = F[i][j];
        std::vector<TorusPoint> pts;
        if (auto sp = f.as_sampled()) {
          for (const auto& [p, v] : sp->values) pts.push_back(p);
        } else {
          pts = grid;
        }
        for (const auto& w : pts) {
          if (sys.mp.m(w) >= j + 1) continue;
          Value v = f(w);
          if (!v.is_zero() && v.abs() > 1e-12) {
            rep.support_violations.push_back(std::string(label) + "_{" + std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + "}(" + to_string(w) + ") = " + v.to_string() +
                                             " off S_" + std::to_string(j + 1));
            break;
          }
        }
      }
    }
  };
  check_support(sys.H, "h");
  check_support(sys.G, "g");

  const TorusPoint zero(s.d, Rational(0));
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) {
      Value target = (i == 0 && j == 0) ? Value::sqrt(s.N) : Value::zero();
      Value diff = sys.H[i][j](zero) - target;
      rep.lowpass_exact = rep.lowpass_exact && diff.is_exact();
      double d = residual_abs(diff);
      if (!diff.is_exact() && d < 1e-12) d = 0.0;
      rep.lowpass_defect = std::max(rep.lowpass_defect, d);
    }
  }

  // difference quotients at +-2^-k along the first axis
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) {
      const FilterFn& f = sys.H[i][j];
      if (f.as_sampled()) continue;
      Value f0 = f(zero);
      Rational step(1, 16);
      for (int k = 4; k <= 20; ++k, step /= Rational(2)) {
        for (int sign : {-1, 1}) {
          TorusPoint x = zero;
          x[0] = step * Rational(sign);
          double q = residual_abs(f(x) - f0) / step.to_double();
          rep.lipschitz_estimate = std::max(rep.lipschitz_estimate, q);
        }
      }
    }
  }
  return rep;
}

FilterSystem make_filter_system(SchemePtr scheme, MultiplicityPair mp, FilterMatrix H, FilterMatrix G,
                                std::string name, const StructureOptions& opts) {
  FilterSystem sys = assemble_filter_system(std::move(scheme), std::move(mp), std::move(H), std::move(G), std::move(name));
  StructureReport rep = check_structure(sys, opts);
  if (!rep.support_violations.empty()) throw Error(ErrorCode::SupportViolation, rep.support_violations.front());
  if (rep.lowpass_defect != 0.0)
    throw Error(ErrorCode::LowPassViolation, "h_ij(0) differs from delta_i1 delta_j1 sqrt(N) by " +
                                                 std::to_string(rep.lowpass_defect));
  if (rep.lipschitz_estimate > opts.lipschitz_threshold)
    throw Error(ErrorCode::LipschitzSuspect, "difference quotient " + std::to_string(rep.lipschitz_estimate) + " near 0");
  return sys;
}

EqResidual verify_filter_eq(const FilterSystem& sys, const TorusPoint& w) {
  auto pv = at_preimages(sys, w);
  const int mw = sys.mp.m(w);
  const long long N = sys.N();
  return gram_residual(pv.h, pv.h, sys.c(), sys.c(), sys.c(), [&](int a, int b) {
    return (a == b && mw >= a + 1) ? Value::rational(Rational(N)) : Value::zero();
  });
}

EqResidual verify_highpass_eq(const FilterSystem& sys, const TorusPoint& w) {
  auto pv = at_preimages(sys, w);
  const int mt = sys.mp.m_tilde(w);
  const long long N = sys.N();
  return gram_residual(pv.g, pv.g, sys.c_tilde(), sys.c_tilde(), sys.c(), [&](int a, int b) {
    return (a == b && mt >= a + 1) ? Value::rational(Rational(N)) : Value::zero();
  });
}

EqResidual verify_cross_orth(const FilterSystem& sys, const TorusPoint& w) {
  auto pv = at_preimages(sys, w);
  return gram_residual(pv.h, pv.g, sys.c(), sys.c_tilde(), sys.c(), [](int, int) { return Value::zero(); });
}

EqResidual verify_column_orth(const FilterSystem& sys, const TorusPoint& w) {
  auto pv = at_preimages(sys, w);
  const int c = sys.c();
  const int n = static_cast<int>(pv.pre.size()) * c;
  const long long N = sys.N();
  EqResidual r;
  r.residual = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    const int l = a / c, j = a % c;
    for (int b = 0; b < n; ++b) {
      const int l2 = b / c, j2 = b % c;
      Value acc;
      for (int i = 0; i < c; ++i) acc += pv.h[l][i][j] * pv.h[l2][i][j2].conj();
      for (int k = 0; k < sys.c_tilde(); ++k) acc += pv.g[l][k][j] * pv.g[l2][k][j2].conj();
      if (a == b && sys.mp.m(pv.pre[l]) >= j + 1) acc -= Value::rational(Rational(N));
      r.exact = r.exact && acc.is_exact();
      r.residual(a, b) = residual_abs(acc);
    }
  }
  return r;
}

double unitarity_defect(const Eigen::MatrixXcd& L) {
  if (L.size() == 0) return 0.0;
  const auto I = Eigen::MatrixXcd::Identity(L.rows(), L.cols());
  double a = (L.adjoint() * L - I).cwiseAbs().maxCoeff();
  double b = (L * L.adjoint() - I).cwiseAbs().maxCoeff();
  return std::max(a, b);
}

KLMatrices build_KL(const FilterSystem& sys, const TorusPoint& w) {
  auto pv = at_preimages(sys, w);
  const int c = sys.c(), ct = sys.c_tilde();
  const int Nn = static_cast<int>(pv.pre.size());
  const Value scale = inv_sqrt(sys.N());
  KLMatrices kl;
  kl.omega = w;
  kl.K = Eigen::MatrixXcd::Zero(c + ct, c * Nn);
  for (int l = 0; l < Nn; ++l) {
    for (int j = 0; j < c; ++j) {
      for (int i = 0; i < c; ++i) kl.K(i, l * c + j) = (pv.h[l][i][j] * scale).num();
      for (int k = 0; k < ct; ++k) kl.K(c + k, l * c + j) = (pv.g[l][k][j] * scale).num();
    }
  }
  const int mw = sys.mp.m(w), mt = sys.mp.m_tilde(w);
  for (int i = 0; i < mw; ++i) kl.rows.push_back(i);
  for (int k = 0; k < mt; ++k) kl.rows.push_back(c + k);
  std::vector<int> colidx;
  for (int l = 0; l < Nn; ++l) {
    const int ml = sys.mp.m(pv.pre[l]);
    for (int j = 1; j <= std::min(ml, c); ++j) {
      kl.cols.emplace_back(l, j);
      colidx.push_back(l * c + j - 1);
    }
  }
  if (kl.rows.size() != kl.cols.size())
    throw Error(ErrorCode::DimensionMismatch, "at w=" + to_string(w) + ": m+m~ = " + std::to_string(kl.rows.size()) +
                                                  " but " + std::to_string(kl.cols.size()) + " columns");
  // everything outside the kept block must vanish
  std::vector<bool> keep_row(c + ct, false), keep_col(c * Nn, false);
  for (int r : kl.rows) keep_row[r] = true;
  for (int cc : colidx) keep_col[cc] = true;
  for (int r = 0; r < c + ct; ++r)
    for (int cc = 0; cc < c * Nn; ++cc)
      if ((!keep_row[r] || !keep_col[cc]) && std::abs(kl.K(r, cc)) > 1e-12)
        throw Error(ErrorCode::DimensionMismatch, "at w=" + to_string(w) + ": nonzero K entry outside L");
  const int n = static_cast<int>(kl.rows.size());
  kl.L.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) kl.L(a, b) = kl.K(kl.rows[a], colidx[b]);
  kl.defect = unitarity_defect(kl.L);
  return kl;
}

SweepReport sweep_equations(const FilterSystem& sys, const std::vector<TorusPoint>& grid) {
  struct Point3 {
    double f, g, x;
    bool exact;
  };
  auto res = parallel_map<Point3>(grid.size(), [&](std::size_t i) {
    auto f = verify_filter_eq(sys, grid[i]);
    auto g = verify_highpass_eq(sys, grid[i]);
    auto x = verify_cross_orth(sys, grid[i]);
    return Point3{f.max(), g.max(), x.max(), f.exact && g.exact && x.exact};
  });
  SweepReport rep;
  rep.points = static_cast<long long>(grid.size());
  double worst = -1.0;
  for (std::size_t i = 0; i < res.size(); ++i) {
    rep.filter_eq = std::max(rep.filter_eq, res[i].f);
    rep.highpass_eq = std::max(rep.highpass_eq, res[i].g);
    rep.cross_orth = std::max(rep.cross_orth, res[i].x);
    rep.exact = rep.exact && res[i].exact;
    double m = std::max({res[i].f, res[i].g, res[i].x});
    if (m > worst) {
      worst = m;
      rep.worst = grid[i];
    }
  }
  return rep;
}

FilterMatrix complete_highpass(const DilationScheme& s, const MultiplicityPair& mp, const FilterMatrix& H,
                               const std::vector<TorusPoint>& grid) {
  using Vec = Eigen::VectorXcd;
  const int c = mp.c();
  const int ct = mp.c_tilde();
  const double rootN = std::sqrt(static_cast<double>(s.N));
  const Value scale = inv_sqrt(s.N);

  struct Local {
    std::vector<TorusPoint> pre;
    std::vector<ValueMatrix> g;  // per l, ct x c
  };

  auto per_point = [&](std::size_t idx) {
    const TorusPoint& w = grid[idx];
    Local out;
    out.pre = preimages(s, w);
    const int Nn = static_cast<int>(out.pre.size());
    std::vector<std::pair<int, int>> cols;
    for (int l = 0; l < Nn; ++l)
      for (int j = 1; j <= std::min(mp.m(out.pre[l]), c); ++j) cols.emplace_back(l, j);
    const int n = static_cast<int>(cols.size());
    const int mw = mp.m(w), mt = mp.m_tilde(w);
    if (n != mw + mt)
      throw Error(ErrorCode::CompletionFailed, "at w=" + to_string(w) + ": column count " + std::to_string(n) +
                                                   " differs from m+m~ = " + std::to_string(mw + mt));
    std::vector<ValueMatrix> hv;
    for (const auto& p : out.pre) hv.push_back(eval_matrix(H, p));

    std::vector<Vec> basis;
    for (int i = 0; i < mw; ++i) {
      Vec v(n);
      for (int t = 0; t < n; ++t) v[t] = (hv[cols[t].first][i][cols[t].second - 1] * scale).num();
      basis.push_back(v);
    }
    for (int a = 0; a < mw; ++a)
      for (int b = 0; b < mw; ++b) {
        std::complex<double> ip = basis[b].dot(basis[a]);  // sum conj(b) a
        if (std::abs(ip - (a == b ? 1.0 : 0.0)) > 1e-10)
          throw Error(ErrorCode::CompletionFailed, "rows of H are not orthonormal at w=" + to_string(w));
      }
    for (int t = 0; t < n && static_cast<int>(basis.size()) < n; ++t) {
      Vec e = Vec::Zero(n);
      e[t] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) e -= b.dot(e) * b;
      double norm = e.norm();
      if (norm > 1e-10) basis.push_back(e / norm);
    }
    if (static_cast<int>(basis.size()) < n)
      throw Error(ErrorCode::CompletionFailed, "rank deficiency at w=" + to_string(w));

    out.g.assign(Nn, ValueMatrix(ct, std::vector<Value>(c, Value::zero())));
    for (int k = 0; k < mt && k < ct; ++k) {
      const Vec& row = basis[mw + k];
      for (int t = 0; t < n; ++t) {
        std::complex<double> v = row[t] * rootN;
        if (std::abs(v) < 1e-15) v = 0.0;
        out.g[cols[t].first][k][cols[t].second - 1] = Value(v);
      }
    }
    return out;
  };

  auto locals = parallel_map<Local>(grid.size(), per_point);
  std::vector<std::vector<std::map<TorusPoint, Value>>> samples(ct, std::vector<std::map<TorusPoint, Value>>(c));
  for (const auto& loc : locals)
    for (std::size_t l = 0; l < loc.pre.size(); ++l)
      for (int k = 0; k < ct; ++k)
        for (int j = 0; j < c; ++j) samples[k][j][loc.pre[l]] = loc.g[l][k][j];
  FilterMatrix G(ct, std::vector<FilterFn>(c));
  for (int k = 0; k < ct; ++k)
    for (int j = 0; j < c; ++j) G[k][j] = FilterFn::sampled(std::move(samples[k][j]));
  return G;
}

}  // namespace gmra
