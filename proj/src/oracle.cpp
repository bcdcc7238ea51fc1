#include "alignlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "alignlab/error.hpp"
#include "alignlab/rng.hpp"

namespace alignlab {

namespace {

using Cod = Eigen::CompleteOrthogonalDecomposition<Mat>;

enum : std::uint64_t { kInitV2 = 11, kInitV1 = 12 };

// argmin_V ‖V·m − a‖, minimum norm: solve mᵀ·Vᵀ = aᵀ.
Mat solve_right(const Mat& a, const Mat& m) {
  return Cod(m.transpose()).solve(a.transpose()).transpose();
}

bool converged(double prev, double cur, double rel) {
  const double scale = std::max(std::abs(prev), std::numeric_limits<double>::min());
  return (prev - cur) / scale < rel;
}

Mat initial_encoder(const OracleOptions& opt, int restart, std::uint64_t tag, Eigen::Index rows, int k) {
  const CounterRng rng(opt.seed, substream(substream(opt.lambda_index, static_cast<std::uint64_t>(restart)), tag));
  return rng.normal_matrix(rows, k) / std::sqrt(static_cast<double>(rows));
}

}  // namespace

OracleRun oracle_single_restart(const Dataset& d, int k, double lambda, const OracleOptions& opt, int restart) {
  d.validate();
  if (k < 1 || k > std::min(d.d1(), d.d2())) throw Error(ErrorKind::InvalidK, "k must lie in [1, min(D1, D2)]");
  if (!(lambda >= 0.0)) throw Error(ErrorKind::InvalidInput, "lambda must be nonnegative");

  // Modality 2: ‖X₂V₂W₂ − Y₂‖². With B₂ = X₂⁺Y₂ the V-step is V₂ = B₂·W₂⁺.
  const Cod x2_fact(d.x2);
  const Mat b2 = x2_fact.solve(d.y2);
  Mat v2 = initial_encoder(opt, restart, kInitV2, d.d2(), k);
  Mat w2 = Cod(d.x2 * v2).solve(d.y2);
  // The alignment term is first-order sensitive to span(Z₂), so besides the
  // loss criterion the span itself has to stop moving.
  double prev = (d.x2 * v2 * w2 - d.y2).squaredNorm();
  Mat basis = orthonormal_basis(d.x2 * v2);
  for (int it = 0; it < opt.max_iterations; ++it) {
    v2 = solve_right(b2, w2);
    const Mat z = d.x2 * v2;
    w2 = Cod(z).solve(d.y2);
    const double cur = (z * w2 - d.y2).squaredNorm();
    const bool flat = converged(prev, cur, opt.rel_decrease);
    prev = cur;
    Mat next = orthonormal_basis(z);
    const bool still = next.cols() == basis.cols() && principal_angle_dist(basis, next) < opt.span_movement;
    basis = std::move(next);
    if (flat && still) break;
  }

  // Orthonormal representative of span(Z₂); W₂ absorbs the change of basis.
  Eigen::HouseholderQR<Mat> qr(d.x2 * v2);
  const Mat r = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  Mat sign = Mat::Identity(k, k);
  for (int j = 0; j < k; ++j)
    if (r(j, j) < 0.0) sign(j, j) = -1.0;
  const Mat r_pos = sign * r;
  v2 = r_pos.transpose().triangularView<Eigen::Lower>().solve(v2.transpose()).transpose();
  w2 = r_pos * w2;
  const Mat z2 = d.x2 * v2;
  const double pred2 = (z2 * w2 - d.y2).squaredNorm();

  // Modality 1: ‖X₁V₁[W₁ √λQ₁] − [Y₁ √λZ₂]‖², so V₁ = X₁⁺[Y₁ √λZ₂]·[W₁ √λQ₁]⁺.
  const double root = std::sqrt(lambda);
  const Cod x1_fact(d.x1);
  Mat targets(d.n(), d.c1() + k);
  targets << d.y1, root * z2;
  const Mat coef = x1_fact.solve(targets);

  Mat v1 = initial_encoder(opt, restart, kInitV1, d.d1(), k);
  Mat w1, q1;
  auto fit_heads = [&](const Mat& z1) {
    const Cod zf(z1);
    w1 = zf.solve(d.y1);
    q1 = zf.solve(z2);
  };
  auto total_of = [&](const Mat& z1) {
    return LossBreakdown::compose((z1 * w1 - d.y1).squaredNorm(), pred2, (z1 * q1 - z2).squaredNorm(), lambda);
  };

  OracleRun run;
  run.restart = restart;
  Mat z1 = d.x1 * v1;
  fit_heads(z1);
  run.trace.push_back(total_of(z1).total);
  for (int it = 0; it < opt.max_iterations; ++it) {
    Mat heads(k, d.c1() + k);
    heads << w1, root * q1;
    v1 = solve_right(coef, heads);
    z1 = d.x1 * v1;
    fit_heads(z1);
    const double cur = total_of(z1).total;
    const double last = run.trace.back();
    run.trace.push_back(cur);
    if (converged(last, cur, opt.rel_decrease)) break;
  }

  run.params = ModelParams{v1, v2, w1, w2, q1};
  run.losses = total_of(z1);
  return run;
}

namespace {

OracleRun pick_best(std::vector<OracleRun>& runs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].losses.total < runs[best].losses.total) best = i;
  return std::move(runs[best]);
}

void check_restarts(const OracleOptions& opt) {
  if (opt.restarts < 1) throw Error(ErrorKind::InvalidInput, "restarts must be at least 1");
}

}  // namespace

OracleRun oracle_minimize(const Dataset& d, int k, double lambda, const OracleOptions& opt) {
  check_restarts(opt);
  std::vector<OracleRun> runs(static_cast<std::size_t>(opt.restarts));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < opt.restarts; ++r) {
    try {
      runs[static_cast<std::size_t>(r)] = oracle_single_restart(d, k, lambda, opt, r);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return pick_best(runs);
}

OracleRun oracle_minimize_serial(const Dataset& d, int k, double lambda, const OracleOptions& opt) {
  check_restarts(opt);
  std::vector<OracleRun> runs;
  for (int r = 0; r < opt.restarts; ++r) runs.push_back(oracle_single_restart(d, k, lambda, opt, r));
  return pick_best(runs);
}

}  // namespace alignlab
