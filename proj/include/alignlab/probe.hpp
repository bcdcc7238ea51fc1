#pragma once

#include <cstdint>
#include <vector>

#include "alignlab/dataset.hpp"
#include "alignlab/model.hpp"

namespace alignlab {

// Two-layer tanh encoder: x ↦ tanh(x·w_in + b_in)·w_out + b_out.
struct MlpEncoder {
  Mat w_in;   // D × H
  Vec b_in;   // H
  Mat w_out;  // H × K
  Vec b_out;  // K

  Eigen::Index input_dim() const { return w_in.rows(); }
  Eigen::Index hidden() const { return w_in.cols(); }
  Eigen::Index output_dim() const { return w_out.cols(); }
  void validate() const;
};

// Two encoders plus linear heads. Gradients are returned in the same shape.
struct ProbeParams {
  MlpEncoder enc1;
  MlpEncoder enc2;
  Mat w1;  // K × C₁
  Mat w2;  // K × C₂
  Mat q1;  // K × K

  void validate() const;
};

Mat forward(const MlpEncoder& enc, const Mat& x);

// ‖f¹(X₁)W₁ − Y₁‖² + ‖f²(X₂)W₂ − Y₂‖² + λ‖f¹(X₁)Q₁ − f²(X₂)‖², Frobenius norms.
LossBreakdown loss_eq2(const ProbeParams& p, const Dataset& d, double lambda);

// Exact gradient of loss_eq2 with respect to every parameter.
ProbeParams grad_eq2(const ProbeParams& p, const Dataset& d, double lambda);

// Deterministic init: w_in ~ N(0, 1/D), w_out ~ N(0, 1/H), heads ~ N(0, 1/K), zero biases.
ProbeParams probe_init(Eigen::Index d1, Eigen::Index d2, Eigen::Index c1, Eigen::Index c2, int hidden, int k,
                       std::uint64_t stream);

struct ProbeConfig {
  int hidden = 32;
  int k = 2;
  int steps = 3000;
  double lr = 1e-2;  // step on loss_eq2 / N
};

struct ProbeRun {
  double lambda = 0.0;
  std::uint64_t seed = 0;
  LossBreakdown losses;
  bool converged = false;  // final losses finite
  bool monotone = true;    // total never increased between steps
};

struct ProbeRunResult {
  double lambda = 0.0;
  double best_pred1 = 0.0;
  double best_pred2 = 0.0;
  double align_at_best = 0.0;
  std::vector<std::uint64_t> seeds_used;  // converged seeds; empty if none
};

struct ProbeSweep {
  std::vector<ProbeRun> runs;           // λ-major, seeds inner
  std::vector<ProbeRunResult> best;     // one per λ, picked by pred1 + pred2
};

// Full-batch gradient descent for one (λ, seed); init stream is keyed by (seed, λ-index).
ProbeRun train_single(const Dataset& d, double lambda, int lambda_index, std::uint64_t seed, const ProbeConfig& cfg,
                      ProbeParams* final_params = nullptr);

// All (λ, seed) runs in parallel.
ProbeSweep train_sweep(const Dataset& d, const std::vector<double>& lambdas, const std::vector<std::uint64_t>& seeds,
                       const ProbeConfig& cfg);

// Serial reference; bit-identical to train_sweep.
ProbeSweep train_sweep_serial(const Dataset& d, const std::vector<double>& lambdas,
                              const std::vector<std::uint64_t>& seeds, const ProbeConfig& cfg);

}  // namespace alignlab
