#pragma once

#include <cstdint>
#include <vector>

#include "alignlab/dataset.hpp"
#include "alignlab/model.hpp"

namespace alignlab {

struct OracleOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
  std::uint64_t lambda_index = 0;  // mixes into the restart RNG streams
  int max_iterations = 10000;
  double rel_decrease = 1e-12;
  double span_movement = 1e-13;  // modality-2 phase: per-iteration span change
};

struct OracleRun {
  ModelParams params;
  LossBreakdown losses;
  std::vector<double> trace;  // λ-coupled total after every modality-1 sweep
  int restart = 0;
};

// Independent check of the closed form by exact alternating least squares.
// Modality 2 is fitted first by ALS on (V₂, W₂) and its representation is
// orthonormalized; then V₁ and (W₁, Q₁) are alternated for the coupled
// objective. Restarts run in parallel; the best total wins (lowest restart
// index on ties).
OracleRun oracle_minimize(const Dataset& d, int k, double lambda, const OracleOptions& opt);

// Serial reference for oracle_minimize; returns the identical result.
OracleRun oracle_minimize_serial(const Dataset& d, int k, double lambda, const OracleOptions& opt);

// One restart, exposed for tests.
OracleRun oracle_single_restart(const Dataset& d, int k, double lambda, const OracleOptions& opt, int restart);

}  // namespace alignlab
