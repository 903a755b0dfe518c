#pragma once

#include "gmra/funcalg.hpp"
#include "gmra/lattice.hpp"
#include "gmra/multiplicity.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gmra {

using FilterMatrix = std::vector<std::vector<FilterFn>>;
using ValueMatrix = std::vector<std::vector<Value>>;
using SchemePtr = std::shared_ptr<const DilationScheme>;

struct FilterSystem {
  SchemePtr scheme;
  MultiplicityPair mp;
  FilterMatrix H;  // c x c, entry [i][j] is h_{i+1,j+1}
  FilterMatrix G;  // c~ x c
  std::string name;

  int c() const { return static_cast<int>(H.size()); }
  int c_tilde() const { return static_cast<int>(G.size()); }
  long long N() const { return scheme->N; }

  ValueMatrix H_values(const TorusPoint& w) const;
  ValueMatrix G_values(const TorusPoint& w) const;
  Eigen::MatrixXcd H_at(const TorusPoint& w) const;
};

struct StructureOptions {
  long long grid = 0;  // 0 selects 7*2^8 for d = 1 and 16 for d > 1
  double lipschitz_threshold = 1e6;
};

struct StructureReport {
  long long points = 0;
  std::vector<std::string> support_violations;
  double lowpass_defect = 0.0;
  bool lowpass_exact = true;
  double lipschitz_estimate = 0.0;
  bool ok(double lipschitz_threshold = 1e6) const {
    return support_violations.empty() && lowpass_defect == 0.0 && lipschitz_estimate <= lipschitz_threshold;
  }
};

long long default_grid(int d);

// Shape checks only.
FilterSystem assemble_filter_system(SchemePtr scheme, MultiplicityPair mp, FilterMatrix H, FilterMatrix G,
                                    std::string name = "");
StructureReport check_structure(const FilterSystem& sys, const StructureOptions& opts = {});
// assemble + check_structure, throwing SupportViolation / LowPassViolation / LipschitzSuspect.
FilterSystem make_filter_system(SchemePtr scheme, MultiplicityPair mp, FilterMatrix H, FilterMatrix G,
                                std::string name = "", const StructureOptions& opts = {});

struct EqResidual {
  Eigen::MatrixXd residual;
  bool exact = true;  // every entry came out of the exact track
  double max() const { return residual.size() == 0 ? 0.0 : residual.maxCoeff(); }
};

// sum_j sum_l h_ij(w_l) conj(h_i'j(w_l)) - delta_ii' N chi_{S_i}(w)
EqResidual verify_filter_eq(const FilterSystem& sys, const TorusPoint& w);
// same with G and S~_k
EqResidual verify_highpass_eq(const FilterSystem& sys, const TorusPoint& w);
// sum_j sum_l h_ij(w_l) conj(g_kj(w_l))
EqResidual verify_cross_orth(const FilterSystem& sys, const TorusPoint& w);
// columns indexed by (l, j) as l*c + (j-1)
EqResidual verify_column_orth(const FilterSystem& sys, const TorusPoint& w);

struct KLMatrices {
  TorusPoint omega;
  Eigen::MatrixXcd K;
  Eigen::MatrixXcd L;
  std::vector<int> rows;                   // 0-based rows of K kept in L
  std::vector<std::pair<int, int>> cols;   // (l, j) with j 1-based, in lambda order
  double defect = 0.0;                     // max entry of |L*L - I| and |LL* - I|
};

KLMatrices build_KL(const FilterSystem& sys, const TorusPoint& w);

double unitarity_defect(const Eigen::MatrixXcd& L);

struct SweepReport {
  long long points = 0;
  double filter_eq = 0.0;
  double highpass_eq = 0.0;
  double cross_orth = 0.0;
  bool exact = true;
  std::optional<TorusPoint> worst;
  double max() const { return std::max({filter_eq, highpass_eq, cross_orth}); }
};

SweepReport sweep_equations(const FilterSystem& sys, const std::vector<TorusPoint>& grid);

// Extends the rows of H pointwise to an orthonormal basis (Gram-Schmidt over
// the standard basis in lambda order) and returns the new rows as sampled
// high-pass entries at the preimages of every grid point.
FilterMatrix complete_highpass(const DilationScheme& s, const MultiplicityPair& mp, const FilterMatrix& H,
                               const std::vector<TorusPoint>& grid);

}  // namespace gmra
