#pragma once

#include "gmra/catalog.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gmra {

// For w in S_j the vector (h_{1j}(w), ..., h_{m(aw) j}(w), g_{1j}(w), ..., g_{m~(aw) j}(w)),
// aw = alpha(w). j is 1-based.
struct MSystem {
  SchemePtr scheme;
  MultiplicityPair mp;
  std::function<std::vector<Value>(int j, const TorusPoint& w)> eval;
  std::string name;

  int c() const { return mp.c(); }
  // m(w) + m~(w): the length of M(j, v) for any v with alpha(v) = w.
  int length_at(const TorusPoint& w) const { return mp.m(w) + mp.m_tilde(w); }
  std::vector<Value> at(int j, const TorusPoint& w) const;
};

// Throws InitialConditionViolated when `canonical` is given and the values at
// the zeta_l differ from it.
MSystem msystem_from_filters(SystemPtr sys, const MSystem* canonical = nullptr);
// Filters read back from the components; entries are callables over the M-system.
FilterSystem filters_from_msystem(const MSystem& M);

// Values at the zeta_l against a reference; returns the largest deviation.
double initial_condition_defect(const MSystem& M, const MSystem& canonical);

struct UnitarySection {
  TorusPoint omega;
  ValueMatrix values;                     // (m + m~) x (m + m~)
  Eigen::MatrixXcd matrix;
  std::vector<std::pair<int, int>> cols;  // (l, j), j 1-based, lexicographic
  double defect = 0.0;
};

// L_{i, lambda(l,j)}(w) = M_i(j, w_l) / sqrt(N).
UnitarySection msystem_to_unitary_section(const MSystem& M, const TorusPoint& w);

struct LoopElement {
  SchemePtr scheme;
  MultiplicityPair mp;
  std::function<ValueMatrix(const TorusPoint&)> eval;  // square, size m(w) + m~(w)
  std::string name;

  ValueMatrix at(const TorusPoint& w) const;
  Eigen::MatrixXcd numeric(const TorusPoint& w) const;
};

LoopElement identity_loop(SchemePtr scheme, const MultiplicityPair& mp);
// Pointwise product L1(w) L2(w).
LoopElement compose(const LoopElement& L1, const LoopElement& L2);

// (L.M)(j, w) = L(alpha w) M(j, w). DimensionMismatch unless the pairs agree.
MSystem loop_act(const LoopElement& L, const MSystem& M);
// L(w)_{i i'} = (1/N) sum_{(l,j)} conj(M_{i'}(j, w_l)) Mt_i(j, w_l), so that L.M = Mt.
LoopElement loop_quotient(const MSystem& M, const MSystem& Mt);

// max |A(w) - B(w)| over the samples, for sections of equal shape.
double loop_distance(const LoopElement& A, const LoopElement& B, const std::vector<TorusPoint>& samples);
// max |M(j,w) - Mt(j,w)| over w in the samples and j with w in S_j.
double msystem_distance(const MSystem& M, const MSystem& Mt, const std::vector<TorusPoint>& samples);

// Pieces of the Journe partition on which the M-system and L_p are listed.
struct JournePiece {
  std::string name;
  IntervalSet set;
  int j = 0;                  // T pieces: the S_j they partition
  std::vector<int> expected;  // annotations checked against the multiplicity at load
};
// T_{j,n}: points of S_j with m(2x) + m~(2x) = n; expected = {n}.
const std::vector<JournePiece>& journe_t_pieces();
// P_1..P_4; expected = {m(x), m(x/2), m((x+1)/2)}.
const std::vector<JournePiece>& journe_p_pieces();

MSystem canonical_journe_msystem();

// The loop element carrying the canonical Journe M-system to the smooth one.
// `row_phase` multiplies every p~1 row; -1 gives L_p(0) = Id.
LoopElement journe_loop_element(const Rational& epsilon = default_epsilon(), const Value& row_phase = Value(Surd(Rational(-1))));

}  // namespace gmra
