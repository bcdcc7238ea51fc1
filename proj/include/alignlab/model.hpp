#pragma once

#include "alignlab/linalg.hpp"

namespace alignlab {

struct ModelParams {
  Mat v1;  // D₁ × K
  Mat v2;  // D₂ × K
  Mat w1;  // K × C₁
  Mat w2;  // K × C₂
  Mat q1;  // K × K

  Eigen::Index k() const { return v1.cols(); }
  // Finite entries and one consistent K. Throws DimensionMismatch / InvalidInput.
  void validate() const;
};

struct LossBreakdown {
  double pred1 = 0.0;
  double pred2 = 0.0;
  double align = 0.0;
  double lambda = 0.0;
  double total = 0.0;

  static LossBreakdown compose(double pred1, double pred2, double align, double lambda) {
    return {pred1, pred2, align, lambda, pred1 + pred2 + lambda * align};
  }
};

}  // namespace alignlab
