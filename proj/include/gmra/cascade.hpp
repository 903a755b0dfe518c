#pragma once

#include "gmra/filters.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <vector>

namespace gmra {

using SystemPtr = std::shared_ptr<const FilterSystem>;

struct PartialProduct {
  Point x;
  int k = 0;
  Eigen::MatrixXcd matrix;
  std::optional<int> stabilized_at;  // depth after which the product stopped changing
};

// Radius of the neighborhood of 0 on which H equals sqrt(N) E_11 (d = 1);
// 0 when no such neighborhood is known.
Rational lowpass_flat_radius(const FilterSystem& sys);

// prod_{q=1..k} H(B^-q x) / sqrt(N), left to right. With `shortcut`, the
// remaining factors collapse to E_11 once B^-q x enters the flat radius.
PartialProduct partial_product(const FilterSystem& sys, const Point& x, int k, bool shortcut = true);

// P^0, ..., P^k computed factor by factor without the shortcut.
std::vector<Eigen::MatrixXcd> partial_product_history(const FilterSystem& sys, const Point& x, int k);

// Same product carried in exact-or-float Values.
ValueMatrix partial_product_values(const FilterSystem& sys, const Point& x, int k);

class ScalingVector {
 public:
  SystemPtr sys;
  int K = 0;
  long long Q = 0;
  int k_max = 0;
  std::vector<Point> points;
  std::vector<Eigen::VectorXcd> values;  // first column of P^{k_max}
  std::vector<double> increments;        // |P^{k_max} - P^{k_max - 1}| per point
  std::vector<std::optional<int>> stabilized_at;
  std::optional<std::vector<PiecewiseFn>> exact;  // phi_i as pieces on the box (d = 1)
  Interval box;                                    // d = 1 sampling box [-|a|^K/2, |a|^K/2)
  // Exact pieces vanish on box \ (box / a), which forces phi = 0 off the box.
  bool compact = false;

  int c() const { return sys->c(); }
  Eigen::VectorXcd evaluate(const Point& x) const;
  std::complex<double> component(int i, const Point& x) const { return evaluate(x)[i]; }
  bool in_box(const Point& x) const;
};

// Samples Phi on the box B^K(cube). In d = 1 the grid is j/Q; otherwise B^K y
// for y on the Q-grid of the cube. Throws NonConvergent when the last
// increment exceeds 1e-8.
ScalingVector scaling_vector(SystemPtr sys, int K, long long Q, int k_max = 64);

// max |sqrt(N) phi_i(Bx) - sum_j h_ij(x) phi_j(x)| over xs.
double refinement_residual(const ScalingVector& phi, const std::vector<Point>& xs);

struct L2Bound {
  double value = 0.0;
  double slack = 0.0;
  bool ok() const { return value <= 1.0 + slack; }
};

// Midpoint estimate of sum_j int_{B^k(Q)} |P^k_ij|^2.
L2Bound l2_bound_check(const FilterSystem& sys, int i, int k, long long Q);

// w -> sum_{|z| <= z_max} |phi_i(w + z)|^2 on the grid (d = 1).
std::vector<double> translate_norm_profile(const ScalingVector& phi, int i, int z_max,
                                           const std::vector<TorusPoint>& grid);

}  // namespace gmra
