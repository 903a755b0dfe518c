#pragma once

#include "gmra/interval.hpp"
#include "gmra/lattice.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gmra {

struct IntPiece {
  Interval iv;
  int value;
};

// Bounded, integer-valued function on the torus. In dimension 1 it is stored
// exactly as rational-breakpoint pieces; otherwise as a pointwise rule.
class MultiplicityFn {
 public:
  MultiplicityFn() = default;

  static MultiplicityFn from_pieces(std::vector<IntPiece> pieces);
  static MultiplicityFn constant(int d, int value);
  static MultiplicityFn from_rule(int d, std::function<int(const TorusPoint&)> rule, int max_value);
  // Value on each cell [b_i, b_{i+1}) of [-1/2, 1/2) taken from its left end.
  static MultiplicityFn from_cells(std::vector<Rational> breakpoints,
                                   const std::function<int(const Rational&)>& eval);

  int operator()(const TorusPoint& w) const;
  int at(const Rational& x) const { return (*this)(TorusPoint{x}); }

  int d() const { return d_; }
  int max() const { return c_; }
  bool exact() const { return !rule_; }
  const std::vector<IntPiece>& pieces() const { return pieces_; }
  std::vector<Rational> breakpoints() const;  // includes -1/2 and 1/2

  // S_i = {m >= i} as an exact interval set (d = 1).
  IntervalSet s_set(int i) const;
  bool in_s(int i, const TorusPoint& w) const { return (*this)(w) >= i; }

  std::string to_string() const;

  friend bool operator==(const MultiplicityFn& a, const MultiplicityFn& b);

 private:
  int d_ = 1;
  int c_ = 0;
  std::vector<IntPiece> pieces_;  // nonzero pieces, sorted, merged
  std::function<int(const TorusPoint&)> rule_;
};

IntervalSet s_set(const MultiplicityFn& m, int i);

struct MultiplicityPair {
  MultiplicityFn m;
  MultiplicityFn m_tilde;
  int c() const { return m.max(); }
  int c_tilde() const { return m_tilde.max(); }
};

// Sum over preimages of m minus m; exact pieces when d = 1 and A > 0.
MultiplicityFn conjugate_multiplicity(const DilationScheme& s, const MultiplicityFn& m);
MultiplicityPair make_multiplicity_pair(const DilationScheme& s, const MultiplicityFn& m);

// x -> m(omega_l(x)) and x -> m(alpha(x)), exact for d = 1 and A > 0.
MultiplicityFn preimage_pullback(const DilationScheme& s, const MultiplicityFn& m, int l);
MultiplicityFn alpha_pullback(const DilationScheme& s, const MultiplicityFn& m);

struct GridViolation {
  TorusPoint omega;
  int lhs;
  int rhs;
};

struct ConsistencyReport {
  long long points = 0;
  std::vector<GridViolation> violations;
  bool ok() const { return violations.empty(); }
};

// m(w) <= sum_l m(w_l) on the Q-grid.
ConsistencyReport check_consistency_inequality(const DilationScheme& s, const MultiplicityFn& m, long long Q);
// m(w) + m~(w) = sum_l m(w_l) on the Q-grid.
ConsistencyReport check_consistency_equation(const DilationScheme& s, const MultiplicityPair& mp, long long Q);

struct DeltaReport {
  int K = 0, n_max = 0, P = 0;
  long long Q = 0;
  bool translate_ok = false;
  bool coverage_ok = false;
  std::optional<TorusPoint> translate_witness;
  std::optional<Point> coverage_witness;
  IntervalSet delta;  // d = 1 only
  bool verified() const { return translate_ok && coverage_ok; }
  std::string summary() const;
};

DeltaReport check_delta_conditions(const DilationScheme& s, const MultiplicityFn& m, int K, int n_max, int P,
                                   long long Q);

}  // namespace gmra
