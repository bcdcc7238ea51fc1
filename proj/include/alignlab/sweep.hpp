#pragma once

#include <string>
#include <vector>

#include "alignlab/dataset.hpp"
#include "alignlab/model.hpp"

namespace alignlab {

struct SweepPoint {
  double lambda = 0.0;
  LossBreakdown losses;
  double sigma11_z = 0.0;
  double drift = 0.0;        // sin of the largest principal angle between span(V₁(λ)) and span(V₁(0))
  bool degenerate = false;   // tied H₁ spectrum at this λ; numeric fields are NaN
  std::string error;
};

// One closed-form solve per λ. λs must be ascending and start at 0.
// DegenerateSpectrum at a λ is recorded on that point, not thrown.
// Points are computed in parallel.
std::vector<SweepPoint> lambda_sweep(const Dataset& d, int k, const std::vector<double>& lambdas);

// Serial reference; bit-identical to lambda_sweep.
std::vector<SweepPoint> lambda_sweep_serial(const Dataset& d, int k, const std::vector<double>& lambdas);

// align nonincreasing and pred1 nondecreasing along the sweep, skipping degenerate points.
bool pareto_monotone(const std::vector<SweepPoint>& points, double slack = 1e-9);

// n values evenly spaced in [lo, hi], n ≥ 1 (n = 1 gives {lo}).
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace alignlab
