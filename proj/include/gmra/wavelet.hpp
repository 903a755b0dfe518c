#pragma once

#include "gmra/cascade.hpp"

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

namespace gmra {

using PhiPtr = std::shared_ptr<const ScalingVector>;

class WaveletSystem {
 public:
  SystemPtr sys;
  PhiPtr phi;
  std::optional<std::vector<PiecewiseFn>> exact;  // psi_k as pieces on `box` (d = 1)
  Interval box;
  bool compact = false;  // psi vanishes outside `box`

  int c_tilde() const { return sys->c_tilde(); }
  // (1/sqrt N) sum_j g_kj(B^-1 x) phi_j(B^-1 x), k 0-based
  std::complex<double> psi_hat(int k, const Point& x) const;
};

// Builds psi_k; exact pieces on the box of level target_level (default K+1)
// when Phi is exact and G is piecewise. BoxTooSmall if target_level > K + 1.
WaveletSystem synthesize_wavelets(SystemPtr sys, PhiPtr phi, std::optional<int> target_level = {});

// <f^, psi^_{n,k,z}> with psi^_{n,k,z}(x) = N^{-n/2} e^{2 pi i x z / a^n} psi^_k(x / a^n), d = 1.
// Exact piecewise integration when psi is exact and compact, otherwise
// midpoint quadrature with `quad_q` points per unit length.
std::complex<double> frame_coefficient(const WaveletSystem& ws, const PiecewiseFn& f_hat, int n, int k,
                                       const BigInt& z, long long quad_q = 4096);

// sum over n in [n_min, J], all k, |z| <= z_max of |coefficient|^2, one entry per n.
std::vector<double> frame_sum_direct_layers(const WaveletSystem& ws, const PiecewiseFn& f_hat, int J, int n_min,
                                            long long z_max);
double frame_sum_direct(const WaveletSystem& ws, const PiecewiseFn& f_hat, int J, int n_min = -30,
                        long long z_max = 1 << 14);

// sum_j int_T |F^J_j|^2 via the fold over the period a^{1+J}; exact for
// piecewise Phi, midpoint quadrature with grid_q points per unit otherwise.
double frame_sum_FJ(const WaveletSystem& ws, const PiecewiseFn& f_hat, int J, long long grid_q = 4096);

// Elements of the analysis spaces: one function per component.
using HVector = std::vector<std::function<Value(const TorusPoint&)>>;

// Components forced to 0 off S_j (or S~_k when `tilde`).
HVector mask_hvector(const SystemPtr& sys, HVector f, bool tilde);

HVector apply_SH(const SystemPtr& sys, const HVector& f);
HVector apply_SH_star(const SystemPtr& sys, const HVector& f);
HVector apply_SG(const SystemPtr& sys, const HVector& ft);
HVector apply_SG_star(const SystemPtr& sys, const HVector& f);

struct CuntzResiduals {
  double sh_star_sh = 0.0;  // S_H* S_H f - f
  double sg_star_sg = 0.0;  // S_G* S_G f~ - f~
  double sh_star_sg = 0.0;  // S_H* S_G f~
  double resolution = 0.0;  // S_H S_H* f + S_G S_G* f - f
  bool exact = true;
  double max() const { return std::max({sh_star_sh, sg_star_sg, sh_star_sg, resolution}); }
};

CuntzResiduals cuntz_residuals(const SystemPtr& sys, const HVector& f, const HVector& ft,
                               const std::vector<TorusPoint>& samples);

// Random piecewise-constant element with Gaussian-rational values, masked to
// the S_j (or S~_k). d = 1.
HVector random_pc_hvector(const SystemPtr& sys, bool tilde, std::mt19937_64& rng, int pieces = 6);

// Random rational points of the torus with denominators up to max_den.
std::vector<TorusPoint> random_torus_points(int d, std::size_t count, std::mt19937_64& rng, long long max_den = 997);

}  // namespace gmra
