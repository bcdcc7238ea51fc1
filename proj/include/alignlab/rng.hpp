#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace alignlab {

// Counter-based normal stream. Each draw is a pure function of
// (seed, stream, index), so matrices can be filled in any order or in
// parallel and still come out bit-identical on every platform.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

  // Uniform in the open interval (0, 1).
  double uniform(std::uint64_t index) const;

  // Standard normal via Box–Muller over two consecutive counters.
  double normal(std::uint64_t index) const;

  // rows×cols matrix of standard normals; entry (i, j) uses counter offset + i·cols + j.
  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t offset = 0) const;

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t key_;
};

// Derive a sub-stream id from a parent id and an index (λ-index, restart, seed, ...).
inline std::uint64_t substream(std::uint64_t parent, std::uint64_t index) {
  return CounterRng::mix(parent * 0x100000001b3ULL + index + 1);
}

}  // namespace alignlab
