#pragma once

#include <cstdint>
#include <vector>

#include "alignlab/probe.hpp"
#include "alignlab/synth.hpp"

namespace alignlab::fixtures {

// Linear lossy regime: thm2_i and thm2_ii hold at k = 2, and the sweep over
// kLinearLambdas moves pred1 by more than 5% of ‖Y₁‖².
inline SynthConfig linear_thm2() {
  SynthConfig c;
  c.n = 24;
  c.d1 = c.d2 = 6;
  c.c1 = c.c2 = 3;
  c.k_shared = 2;
  c.k_spec1 = 1;
  c.k_spec2 = 1;
  c.noise_x1 = c.noise_x2 = c.noise_y1 = c.noise_y2 = 0.05;
  c.cross_leak = 0.0;
  c.seed = 5;
  return c;
}
inline constexpr int kLinearK = 2;
inline const std::vector<double> kLinearLambdas{0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0};
inline constexpr double kLinearPred1Margin = 0.05;  // × ‖Y₁‖²_F
inline constexpr double kLinearSigmaMargin = 0.05;  // σ₁₁ − σ₁₁ᶻ(10)

// Nonlinear lossy regime for the probe: one shared and one specific factor
// per modality, Y₁ almost free of the shared factor.
inline SynthConfig nonlinear_thm2() {
  SynthConfig c;
  c.n = 100;
  c.d1 = c.d2 = 6;
  c.c1 = 1;
  c.c2 = 2;
  c.k_shared = 1;
  c.k_spec1 = 1;
  c.k_spec2 = 1;
  c.noise_x1 = c.noise_x2 = c.noise_y1 = c.noise_y2 = 0.1;
  c.cross_leak = 0.0;
  c.nonlinear = true;
  c.seed = 5;
  return c;
}
inline constexpr int kNonlinearK = 1;
inline const std::vector<std::uint64_t> kProbeSeeds{1, 2, 3};
inline constexpr int kProbeLambdaCount = 9;  // evenly spaced in [0, 1]
inline constexpr double kProbePred1Margin = 0.0025;  // × ‖Y₁‖²_F

inline ProbeConfig probe_defaults() {
  ProbeConfig p;
  p.hidden = 32;
  p.k = kNonlinearK;
  p.steps = 3000;
  p.lr = 1e-2;
  return p;
}

}  // namespace alignlab::fixtures
