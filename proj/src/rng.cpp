#include "alignlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace alignlab {

// splitmix64 finalizer
std::uint64_t CounterRng::mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform(std::uint64_t index) const {
  const std::uint64_t bits = mix(key_ ^ mix(index));
  // 53 random mantissa bits, shifted off zero
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t index) const {
  const double u1 = uniform(2 * index);
  const double u2 = uniform(2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::MatrixXd CounterRng::normal_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t offset) const {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = normal(offset + static_cast<std::uint64_t>(i * cols + j));
  return m;
}

}  // namespace alignlab
