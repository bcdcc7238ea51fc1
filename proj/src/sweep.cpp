#include "alignlab/sweep.hpp"

#include <cmath>
#include <exception>
#include <limits>

#include "alignlab/error.hpp"
#include "alignlab/informativeness.hpp"
#include "alignlab/solver.hpp"

namespace alignlab {

namespace {

void check_lambdas(const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw Error(ErrorKind::InvalidInput, "empty lambda list");
  if (lambdas.front() != 0.0) throw Error(ErrorKind::InvalidInput, "lambda list must start at 0");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!std::isfinite(lambdas[i]) || lambdas[i] < 0.0) throw Error(ErrorKind::InvalidInput, "lambdas must be finite and >= 0");
    if (i > 0 && lambdas[i] < lambdas[i - 1]) throw Error(ErrorKind::InvalidInput, "lambdas must be ascending");
  }
}

struct Solved {
  SweepPoint point;
  Mat basis;  // orthonormal basis of span(V₁)
};

Solved solve_point(const Dataset& d, const Modality2Solution& m2, int k, double lambda) {
  Solved s;
  s.point.lambda = lambda;
  try {
    const ClosedFormSolution cf = solve_closed_form(d, m2, k, lambda);
    s.point.losses = cf.losses;
    s.point.sigma11_z = explained_fraction(d.x1 * cf.params.v1, d.y1);
    s.basis = orthonormal_basis(cf.params.v1);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateSpectrum) throw;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.point.losses = LossBreakdown{nan, nan, nan, lambda, nan};
    s.point.sigma11_z = nan;
    s.point.degenerate = true;
    s.point.error = e.what();
  }
  return s;
}

void fill_drift(std::vector<Solved>& solved) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const Solved& ref = solved.front();
  for (std::size_t i = 0; i < solved.size(); ++i) {
    Solved& s = solved[i];
    if (s.point.degenerate || ref.point.degenerate || s.basis.cols() != ref.basis.cols())
      s.point.drift = nan;
    else
      s.point.drift = (i == 0) ? 0.0 : principal_angle_dist(ref.basis, s.basis);
  }
}

std::vector<SweepPoint> unpack(std::vector<Solved>& solved) {
  fill_drift(solved);
  std::vector<SweepPoint> out;
  out.reserve(solved.size());
  for (auto& s : solved) out.push_back(std::move(s.point));
  return out;
}

}  // namespace

std::vector<SweepPoint> lambda_sweep(const Dataset& d, int k, const std::vector<double>& lambdas) {
  check_lambdas(lambdas);
  const Modality2Solution m2 = solve_modality2(d, k);
  std::vector<Solved> solved(lambdas.size());
  std::exception_ptr failure;
  const auto count = static_cast<long>(lambdas.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      solved[static_cast<std::size_t>(i)] = solve_point(d, m2, k, lambdas[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return unpack(solved);
}

std::vector<SweepPoint> lambda_sweep_serial(const Dataset& d, int k, const std::vector<double>& lambdas) {
  check_lambdas(lambdas);
  const Modality2Solution m2 = solve_modality2(d, k);
  std::vector<Solved> solved;
  for (double lambda : lambdas) solved.push_back(solve_point(d, m2, k, lambda));
  return unpack(solved);
}

bool pareto_monotone(const std::vector<SweepPoint>& points, double slack) {
  const SweepPoint* prev = nullptr;
  for (const auto& p : points) {
    if (p.degenerate) continue;
    if (prev != nullptr) {
      if (p.losses.align > prev->losses.align + slack) return false;
      if (p.losses.pred1 < prev->losses.pred1 - slack) return false;
    }
    prev = &p;
  }
  return true;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "linspace needs n >= 1");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

}  // namespace alignlab
