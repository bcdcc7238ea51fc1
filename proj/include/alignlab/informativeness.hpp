#pragma once

#include <array>
#include <optional>
#include <vector>

#include "alignlab/dataset.hpp"
#include "alignlab/model.hpp"

namespace alignlab {

// σᵢⱼ: informativeness of modality i for targets j.
struct InformativenessReport {
  std::array<std::array<double, 2>, 2> sigma{};
  std::vector<double> sigma_k1;  // σ_{1K}, K = 1 … min(k, C₁)
  std::vector<double> sigma_k2;  // σ_{2K}, K = 1 … min(k, C₂)
  std::optional<double> sigma11_z;
  bool min_norm_ols = false;     // some design was rank deficient
};

// OLS prediction, i.e. the projection of y onto col(x).
Mat ols_predict(const Mat& x, const Mat& y, const Tolerances& tol = kTol);

// σ = 1 − ‖y − ŷ‖²_F / (N·C). Targets must be standardized.
double sigma_informativeness(const Mat& x, const Mat& y, const Tolerances& tol = kTol);

// σ of the projection of y on the top-k eigenspace of yᵀy; 0 for k = 0, 1 for k = C.
double sigma_topk(const Mat& y, int k, const Tolerances& tol = kTol);

// Same as sigma_informativeness; z is any representation, only y must be standardized.
double sigma_of_representation(const Mat& z, const Mat& y, const Tolerances& tol = kTol);

// 1 − ‖y − ŷ‖²_F / ‖y‖²_F. Equals σ on standardized targets; defined for any nonzero y.
double explained_fraction(const Mat& x, const Mat& y, const Tolerances& tol = kTol);

// Σ_{j≤k} s_j² / ‖y‖²_F over the singular values of y. Equals sigma_topk on standardized targets.
double topk_energy_fraction(const Mat& y, int k);

InformativenessReport full_report(const Dataset& d, const ModelParams* params, int k,
                                  const Tolerances& tol = kTol);

}  // namespace alignlab
