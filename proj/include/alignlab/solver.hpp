#pragma once

#include "alignlab/dataset.hpp"
#include "alignlab/model.hpp"

namespace alignlab {

// Modality 2 is solved on its own (the alignment term cannot move it).
struct Modality2Solution {
  Mat v2;         // D₂ × K, whitened: (X₂v2)ᵀ(X₂v2) = I
  Mat w2;         // K × C₂
  Mat z2;         // N × K, orthonormal columns
  Vec h2_values;  // top-K eigenvalues of H₂
};

struct Modality1Solution {
  Mat v1;
  Mat w1;
  Mat q1;
  Mat z1;         // N × K, orthonormal columns
  Vec h1_values;  // top-K eigenvalues of H₁
};

struct ClosedFormSolution {
  ModelParams params;
  Vec h1_values;
  Vec h2_values;
  LossBreakdown losses;
  Mat z1;
  Mat z2;
};

// X₂ = U·S·Rᵀ, H₂ = (UᵀY₂)(UᵀY₂)ᵀ, v2 = R·S⁻¹·(P_{H₂})[:, :K], z2 = U·(P_{H₂})[:, :K], w2 = z2ᵀY₂.
Modality2Solution solve_modality2(const Dataset& d, int k, const Tolerances& tol = kTol);

// X₁ = U·S·Rᵀ, H₁ = (UᵀY₁)(UᵀY₁)ᵀ + λ(Uᵀz2)(Uᵀz2)ᵀ, v1 = R·S⁻¹·(P_{H₁})[:, :K],
// w1 = z1ᵀY₁, q1 = z1ᵀz2 with z1 = U·(P_{H₁})[:, :K].
Modality1Solution solve_modality1(const Dataset& d, const Mat& z2, int k, double lambda,
                                  const Tolerances& tol = kTol);

// ‖X₁V₁W₁ − Y₁‖², ‖X₂V₂W₂ − Y₂‖², ‖X₁V₁Q₁ − X₂V₂‖² and the λ-weighted total.
LossBreakdown eval_objective(const Dataset& d, const ModelParams& p, double lambda);

ClosedFormSolution solve_closed_form(const Dataset& d, int k, double lambda, const Tolerances& tol = kTol);

// Reuses a modality-2 solution, e.g. across a λ sweep.
ClosedFormSolution solve_closed_form(const Dataset& d, const Modality2Solution& m2, int k, double lambda,
                                     const Tolerances& tol = kTol);

// Loss values implied by the spectra alone:
//   pred1 + λ·align = ‖Y₁‖² + λK − Σ h1,   pred2 = ‖Y₂‖² − Σ h2.
struct SpectralLosses {
  double pred1_plus_lambda_align;
  double pred2;
};
SpectralLosses spectral_losses(const Dataset& d, const ClosedFormSolution& s);

}  // namespace alignlab
