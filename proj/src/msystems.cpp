#include "gmra/msystems.hpp"

#include "gmra/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace gmra {

namespace {

Value inv_sqrt(long long N) { return Value(Surd(Rational(1, N), Rational(0), N)); }

Eigen::MatrixXcd to_eigen(const ValueMatrix& V) {
  const auto n = static_cast<Eigen::Index>(V.size());
  Eigen::MatrixXcd M(n, n == 0 ? 0 : static_cast<Eigen::Index>(V[0].size()));
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) M(i, j) = V[i][j].num();
  return M;
}

void require_same_pair(const MultiplicityPair& a, const MultiplicityPair& b, const char* what) {
  if (!(a.m == b.m) || !(a.m_tilde == b.m_tilde))
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": multiplicity pairs differ");
}

Rational q(long long p, long long r) { return Rational(p, r); }

// Throws std::logic_error when sum_f f(x) is not `expected` on all of `set`.
void check_constant(const std::string& name, const IntervalSet& set, const std::vector<MultiplicityFn>& fs,
                    int expected) {
  for (const auto& part : set.parts()) {
    std::vector<Rational> cuts{part.lo};
    for (const auto& f : fs)
      for (const auto& b : f.breakpoints())
        if (part.lo < b && b < part.hi) cuts.push_back(b);
    for (const auto& x : cuts) {
      int v = 0;
      for (const auto& f : fs) v += f.at(x);
      if (v != expected)
        throw std::logic_error("Journe partition " + name + ": value " + std::to_string(v) + " at " + x.to_string() +
                               ", listed " + std::to_string(expected));
    }
  }
}

IntervalSet unite_all(const std::vector<IntervalSet>& sets) {
  IntervalSet u;
  for (const auto& s : sets) u = u.unite(s);
  return u;
}

void cross_check_journe(const std::vector<JournePiece>& t, const std::vector<JournePiece>& p) {
  const auto& s = *dyadic_scheme();
  const MultiplicityFn m = journe_multiplicity();
  const MultiplicityFn mt = conjugate_multiplicity(s, m);
  const MultiplicityFn m_alpha = alpha_pullback(s, m), mt_alpha = alpha_pullback(s, mt);
  const MultiplicityFn m0 = preimage_pullback(s, m, 0), m1 = preimage_pullback(s, m, 1);
  for (int j = 1; j <= m.max(); ++j) {
    std::vector<IntervalSet> parts;
    for (const auto& piece : t)
      if (piece.j == j) {
        check_constant(piece.name, piece.set, {m_alpha, mt_alpha}, piece.expected.at(0));
        parts.push_back(piece.set);
      }
    if (!(unite_all(parts) == m.s_set(j))) throw std::logic_error("Journe T pieces do not cover S_" + std::to_string(j));
  }
  std::vector<IntervalSet> parts;
  for (const auto& piece : p) {
    check_constant(piece.name, piece.set, {m}, piece.expected.at(0));
    check_constant(piece.name + " at x/2", piece.set, {m0}, piece.expected.at(1));
    check_constant(piece.name + " at (x+1)/2", piece.set, {m1}, piece.expected.at(2));
    parts.push_back(piece.set);
  }
  if (!(unite_all(parts) == IntervalSet::torus())) throw std::logic_error("Journe P pieces do not cover the torus");
}

struct JourneTables {
  std::vector<JournePiece> t, p;
  JourneTables() {
    const IntervalSet center = IntervalSet::single(q(-1, 14), q(1, 14));
    t = {
        {"T11", IntervalSet::symmetric(q(1, 7), q(3, 14)), 1, {1}},
        {"T12", IntervalSet::symmetric(q(1, 14), q(1, 7)).unite(IntervalSet::symmetric(q(3, 14), q(2, 7))), 1, {2}},
        {"T13", center.unite(IntervalSet::symmetric(q(3, 7), q(1, 2))), 1, {3}},
        {"T22", IntervalSet::symmetric(q(1, 14), q(1, 7)), 2, {2}},
        {"T23", center, 2, {3}},
    };
    p = {
        {"P1", IntervalSet::single(q(-1, 7), q(1, 7)), 0, {2, 2, 1}},
        {"P2", IntervalSet::symmetric(q(1, 7), q(2, 7)), 0, {1, 2, 0}},
        {"P3", IntervalSet::symmetric(q(2, 7), q(3, 7)), 0, {0, 1, 0}},
        {"P4", IntervalSet::symmetric(q(3, 7), q(1, 2)), 0, {1, 1, 1}},
    };
    cross_check_journe(t, p);
  }
};

const JourneTables& journe_tables() {
  static const JourneTables tables;
  return tables;
}

}  // namespace

std::vector<Value> MSystem::at(int j, const TorusPoint& w) const {
  if (j < 1 || j > c() || !mp.m.in_s(j, w))
    throw Error(ErrorCode::IndexOutOfRange, "point " + to_string(w) + " is not in S_" + std::to_string(j));
  return eval(j, w);
}

MSystem msystem_from_filters(SystemPtr sys, const MSystem* canonical) {
  MSystem M;
  M.scheme = sys->scheme;
  M.mp = sys->mp;
  M.name = sys->name;
  M.eval = [sys](int j, const TorusPoint& w) {
    const TorusPoint aw = alpha(*sys->scheme, w);
    const int m = sys->mp.m(aw), mt = sys->mp.m_tilde(aw);
    std::vector<Value> v;
    v.reserve(m + mt);
    for (int i = 0; i < m; ++i) v.push_back(sys->H[i][j - 1](w));
    for (int k = 0; k < mt; ++k) v.push_back(sys->G[k][j - 1](w));
    return v;
  };
  if (canonical) {
    double defect = initial_condition_defect(M, *canonical);
    if (defect != 0.0 && !(defect < 1e-12))
      throw Error(ErrorCode::InitialConditionViolated,
                  "values at the zeta_l differ from " + canonical->name + " by " + std::to_string(defect));
  }
  return M;
}

double initial_condition_defect(const MSystem& M, const MSystem& canonical) {
  require_same_pair(M.mp, canonical.mp, "initial conditions");
  double worst = 0.0;
  for (const auto& z : M.scheme->zetas)
    for (int j = 1; j <= M.c(); ++j) {
      if (!M.mp.m.in_s(j, z)) continue;
      auto a = M.at(j, z), b = canonical.at(j, z);
      if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "component count at zeta");
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, residual_abs(a[i] - b[i]));
    }
  return worst;
}

FilterSystem filters_from_msystem(const MSystem& M) {
  const int c = M.mp.c(), ct = M.mp.c_tilde();
  auto shared = std::make_shared<const MSystem>(M);
  FilterMatrix H(c, std::vector<FilterFn>(c)), G(ct, std::vector<FilterFn>(c));
  for (int j = 1; j <= c; ++j) {
    for (int i = 0; i < c; ++i)
      H[i][j - 1] = FilterFn::callable(
          [shared, i, j](const TorusPoint& w) {
            if (!shared->mp.m.in_s(j, w)) return Value::zero();
            const TorusPoint aw = alpha(*shared->scheme, w);
            if (i >= shared->mp.m(aw)) return Value::zero();
            return shared->eval(j, w)[i];
          },
          "M-system h_" + std::to_string(i + 1) + std::to_string(j));
    for (int k = 0; k < ct; ++k)
      G[k][j - 1] = FilterFn::callable(
          [shared, k, j](const TorusPoint& w) {
            if (!shared->mp.m.in_s(j, w)) return Value::zero();
            const TorusPoint aw = alpha(*shared->scheme, w);
            if (k >= shared->mp.m_tilde(aw)) return Value::zero();
            return shared->eval(j, w)[shared->mp.m(aw) + k];
          },
          "M-system g_" + std::to_string(k + 1) + std::to_string(j));
  }
  return assemble_filter_system(M.scheme, M.mp, std::move(H), std::move(G), M.name);
}

UnitarySection msystem_to_unitary_section(const MSystem& M, const TorusPoint& w) {
  UnitarySection u;
  u.omega = w;
  const int n = M.length_at(w);
  const auto pre = preimages(*M.scheme, w);
  const Value scale = inv_sqrt(M.scheme->N);
  std::vector<std::vector<Value>> columns;
  for (int l = 0; l < static_cast<int>(pre.size()); ++l)
    for (int j = 1; j <= M.c(); ++j) {
      if (!M.mp.m.in_s(j, pre[l])) continue;
      auto v = M.at(j, pre[l]);
      if (static_cast<int>(v.size()) != n)
        throw Error(ErrorCode::DimensionMismatch, "component vector length differs from m + m~ at " + to_string(w));
      u.cols.emplace_back(l, j);
      columns.push_back(std::move(v));
    }
  if (static_cast<int>(columns.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "sum_l m(w_l) != m(w) + m~(w) at " + to_string(w));
  u.values.assign(n, std::vector<Value>(n));
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) u.values[i][c] = columns[c][i] * scale;
  u.matrix = to_eigen(u.values);
  u.defect = unitarity_defect(u.matrix);
  return u;
}

ValueMatrix LoopElement::at(const TorusPoint& w) const {
  ValueMatrix V = eval(w);
  const int n = mp.m(w) + mp.m_tilde(w);
  if (static_cast<int>(V.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "loop value at " + to_string(w) + " has size " +
                                                  std::to_string(V.size()) + ", expected " + std::to_string(n));
  return V;
}

Eigen::MatrixXcd LoopElement::numeric(const TorusPoint& w) const { return to_eigen(at(w)); }

LoopElement identity_loop(SchemePtr scheme, const MultiplicityPair& mp) {
  LoopElement L;
  L.scheme = std::move(scheme);
  L.mp = mp;
  L.name = "identity";
  L.eval = [mp](const TorusPoint& w) {
    const int n = mp.m(w) + mp.m_tilde(w);
    ValueMatrix V(n, std::vector<Value>(n));
    for (int i = 0; i < n; ++i) V[i][i] = Value::one();
    return V;
  };
  return L;
}

LoopElement compose(const LoopElement& L1, const LoopElement& L2) {
  require_same_pair(L1.mp, L2.mp, "compose");
  LoopElement L;
  L.scheme = L1.scheme;
  L.mp = L1.mp;
  L.name = L1.name + "*" + L2.name;
  L.eval = [L1, L2](const TorusPoint& w) {
    ValueMatrix A = L1.at(w), B = L2.at(w);
    const std::size_t n = A.size();
    ValueMatrix C(n, std::vector<Value>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t t = 0; t < n; ++t) C[i][j] += A[i][t] * B[t][j];
    return C;
  };
  return L;
}

MSystem loop_act(const LoopElement& L, const MSystem& M) {
  require_same_pair(L.mp, M.mp, "loop_act");
  if (L.scheme->N != M.scheme->N) throw Error(ErrorCode::DimensionMismatch, "loop_act: schemes differ");
  MSystem out;
  out.scheme = M.scheme;
  out.mp = M.mp;
  out.name = L.name + "." + M.name;
  out.eval = [L, M](int j, const TorusPoint& w) {
    ValueMatrix A = L.at(alpha(*M.scheme, w));
    std::vector<Value> v = M.eval(j, w);
    if (A.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "loop_act: sizes differ at " + to_string(w));
    std::vector<Value> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t t = 0; t < v.size(); ++t) r[i] += A[i][t] * v[t];
    return r;
  };
  return out;
}

LoopElement loop_quotient(const MSystem& M, const MSystem& Mt) {
  require_same_pair(M.mp, Mt.mp, "loop_quotient");
  LoopElement L;
  L.scheme = M.scheme;
  L.mp = M.mp;
  L.name = "(" + Mt.name + "/" + M.name + ")";
  L.eval = [M, Mt](const TorusPoint& w) {
    const int n = M.length_at(w);
    const Value inv_n = Value::rational(Rational(1, M.scheme->N));
    ValueMatrix V(n, std::vector<Value>(n));
    for (const auto& wl : preimages(*M.scheme, w))
      for (int j = 1; j <= M.c(); ++j) {
        if (!M.mp.m.in_s(j, wl)) continue;
        auto a = M.at(j, wl), b = Mt.at(j, wl);
        if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
          throw Error(ErrorCode::DimensionMismatch, "loop_quotient: sizes differ at " + to_string(wl));
        for (int i = 0; i < n; ++i)
          for (int ip = 0; ip < n; ++ip) V[i][ip] += a[ip].conj() * b[i];
      }
    for (auto& row : V)
      for (auto& v : row) v *= inv_n;
    return V;
  };
  return L;
}

double loop_distance(const LoopElement& A, const LoopElement& B, const std::vector<TorusPoint>& samples) {
  double worst = 0.0;
  for (const auto& w : samples) {
    ValueMatrix a = A.at(w), b = B.at(w);
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "loop sizes differ");
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, residual_abs(a[i][j] - b[i][j]));
  }
  return worst;
}

double msystem_distance(const MSystem& M, const MSystem& Mt, const std::vector<TorusPoint>& samples) {
  double worst = 0.0;
  for (const auto& w : samples)
    for (int j = 1; j <= M.c(); ++j) {
      if (!M.mp.m.in_s(j, w)) continue;
      auto a = M.at(j, w), b = Mt.at(j, w);
      if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "component counts differ");
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, residual_abs(a[i] - b[i]));
    }
  return worst;
}

const std::vector<JournePiece>& journe_t_pieces() { return journe_tables().t; }
const std::vector<JournePiece>& journe_p_pieces() { return journe_tables().p; }

MSystem canonical_journe_msystem() { return msystem_from_filters(journe_canonical_system()); }

LoopElement journe_loop_element(const Rational& epsilon, const Value& row_phase) {
  const auto& tables = journe_tables();
  SmoothPtr p0 = make_qmf_lowpass(epsilon);
  SmoothPtr p1 = highpass_from_lowpass_classical(p0);
  const Value r = inv_sqrt(2);
  LoopElement L;
  L.scheme = dyadic_scheme();
  L.mp = make_multiplicity_pair(*L.scheme, journe_multiplicity());
  L.name = "L_p";
  L.eval = [p0, p1, r, row_phase, tables](const TorusPoint& w) -> ValueMatrix {
    const Rational x = w.at(0);
    const Rational y0 = x / Rational(2), y1 = (x + Rational(1)) / Rational(2);
    const Value a0 = (*p0)(y0) * r, a1 = (*p0)(y1) * r;
    const Value b0 = row_phase * (*p1)(y0) * r, b1 = row_phase * (*p1)(y1) * r;
    const Value z = Value::zero(), one = Value::one();
    if (tables.p[0].set.contains(x)) return {{a0, z, a1}, {z, one, z}, {b0, z, b1}};
    if (tables.p[1].set.contains(x)) return {{a0, a1}, {b0, b1}};
    if (tables.p[2].set.contains(x)) return {{b0}};
    return {{a1, a0}, {b1, b0}};
  };
  return L;
}

}  // namespace gmra
