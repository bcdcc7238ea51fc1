#pragma once

#include <vector>

#include "alignlab/linalg.hpp"
#include "alignlab/tolerances.hpp"

namespace alignlab {

// Two modalities and their targets, one row per sample.
struct Dataset {
  Mat x1;  // N × D₁
  Mat x2;  // N × D₂
  Mat y1;  // N × C₁
  Mat y2;  // N × C₂
  bool standardized = false;

  Eigen::Index n() const { return x1.rows(); }
  Eigen::Index d1() const { return x1.cols(); }
  Eigen::Index d2() const { return x2.cols(); }
  Eigen::Index c1() const { return y1.cols(); }
  Eigen::Index c2() const { return y2.cols(); }

  // Shared row count, non-empty, finite. Throws DimensionMismatch / InvalidInput.
  void validate() const;

  // N > max(D₁, D₂, C₁, C₂); the generators and the assumption checks require it.
  bool sample_size_ok() const;
};

// Targets: zero mean, unit population variance. Inputs: zero mean.
Dataset standardize(const Dataset& d, const Tolerances& tol = kTol);

bool columns_centered(const Mat& m, const Tolerances& tol = kTol);
bool targets_standardized(const Mat& y, const Tolerances& tol = kTol);

struct AssumptionReport {
  int k = 0;
  bool standardized = false;
  bool sample_size_ok = false;

  int rank_x1 = 0;
  int rank_x2 = 0;
  bool full_rank_x1 = false;
  bool full_rank_x2 = false;

  // min over j ≤ k of (ℓ_j − ℓ_{j+1}) / ℓ_1 for the eigenvalues ℓ of XᵢXᵢᵀ
  double topk_gap_x1 = 0.0;
  double topk_gap_x2 = 0.0;
  bool distinct_topk_x1 = false;
  bool distinct_topk_x2 = false;

  // nonzero eigenvalues of YᵢYᵢᵀ, descending, and whether ℓ_j > Σ_{i>j} ℓ_i for every j
  std::vector<double> y1_spectrum;
  std::vector<double> y2_spectrum;
  bool dominance_ok_y1 = false;
  bool dominance_ok_y2 = false;

  // Lossy regime: i) σ₂₂ ≥ σ₂K, ii) σ₂₁ < σ₁K. NaN / false when targets are not standardized.
  double sigma22 = 0.0;
  double sigma2k = 0.0;
  double sigma21 = 0.0;
  double sigma1k = 0.0;
  bool thm2_i = false;
  bool thm2_ii = false;
};

AssumptionReport check_assumptions(const Dataset& d, int k, const Tolerances& tol = kTol);

// ℓ_j > Σ_{i>j} ℓ_i for j = 1 … n−1 on a descending spectrum.
bool dominance_holds(const std::vector<double>& descending);

// Eigenvalues of m·mᵀ that can be nonzero (squared singular values), descending.
std::vector<double> gram_spectrum(const Mat& m);

}  // namespace alignlab
