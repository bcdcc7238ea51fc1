#pragma once

#include <cstdint>

#include "alignlab/dataset.hpp"

namespace alignlab {

// Latent-factor generator: S is shared between modalities, U₁ / U₂ are
// modality specific, and cross_leak lets U₂ reach Y₁.
struct SynthConfig {
  int n = 200;
  int d1 = 16;
  int d2 = 16;
  int c1 = 4;
  int c2 = 4;
  int k_shared = 3;
  int k_spec1 = 3;
  int k_spec2 = 3;
  double noise_x1 = 0.1;
  double noise_x2 = 0.1;
  double noise_y1 = 0.1;
  double noise_y2 = 0.1;
  double cross_leak = 0.0;
  bool nonlinear = false;
  std::uint64_t seed = 0;

  // Throws InvalidConfig.
  void validate() const;
};

// X₁ = [S U₁]·M₁ + noise_x1·E₁        (tanh applied to [S U₁]·M₁ when nonlinear)
// X₂ = [S U₂]·M₂ + noise_x2·E₂
// Y₁ = [S U₁ cross_leak·U₂]·B₁ + noise_y1·F₁
// Y₂ = [S U₂]·B₂ + noise_y2·F₂
// Output is standardized. Identical configs give bit-identical datasets.
Dataset synth_generate(const SynthConfig& cfg);

// synth_generate with the nonlinear flag forced on.
Dataset synth_nonlinear(SynthConfig cfg);

}  // namespace alignlab
