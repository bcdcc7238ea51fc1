#include "alignlab/solver.hpp"

#include <string>

#include "alignlab/error.hpp"

namespace alignlab {

namespace {

struct Whitening {
  Mat left;   // U, N × D
  Vec scale;  // S
  Mat right;  // R, D × D
};

Whitening whiten(const Mat& x, const char* name, const Tolerances& tol) {
  const SvdResult f = svd(x);
  if (numerical_rank(f.singulars, tol) < x.cols())
    throw Error(ErrorKind::RankDeficient, std::string(name) + " does not have full column rank");
  return {f.left, f.singulars, f.right};
}

void check_k(int k, Eigen::Index dim, const char* name) {
  if (k < 1 || k > dim) throw Error(ErrorKind::InvalidK, std::string("k must lie in [1, ") + name + "]");
}

// Top-k eigenvectors of h, refusing a tie at the k | k+1 boundary.
SpectralDecomp top_eigenspace(const Mat& h, int k, const char* name, const Tolerances& tol) {
  SpectralDecomp e = sym_eig(h, tol);
  if (boundary_gap(e.values, k) < tol.spectral_gap)
    throw Error(ErrorKind::DegenerateSpectrum, std::string(name) + " has tied eigenvalues at the top-K boundary");
  return e;
}

}  // namespace

Modality2Solution solve_modality2(const Dataset& d, int k, const Tolerances& tol) {
  d.validate();
  check_k(k, d.d2(), "D2");
  const Whitening w = whiten(d.x2, "x2", tol);

  const Mat g = w.left.transpose() * d.y2;
  const SpectralDecomp e = top_eigenspace(g * g.transpose(), k, "H2", tol);
  const Mat top = e.vectors.leftCols(k);

  Modality2Solution out;
  out.v2 = w.right * (w.scale.cwiseInverse().asDiagonal() * top);
  out.z2 = w.left * top;
  out.w2 = out.z2.transpose() * d.y2;
  out.h2_values = e.values.head(k);
  return out;
}

Modality1Solution solve_modality1(const Dataset& d, const Mat& z2, int k, double lambda, const Tolerances& tol) {
  d.validate();
  check_k(k, d.d1(), "D1");
  if (!(lambda >= 0.0)) throw Error(ErrorKind::InvalidInput, "lambda must be nonnegative");
  if (z2.rows() != d.n() || z2.cols() != k) throw Error(ErrorKind::DimensionMismatch, "z2 must be N x K");
  const Whitening w = whiten(d.x1, "x1", tol);

  const Mat g = w.left.transpose() * d.y1;
  const Mat f = w.left.transpose() * z2;
  const Mat h = g * g.transpose() + lambda * (f * f.transpose());
  const SpectralDecomp e = top_eigenspace(h, k, "H1", tol);
  const Mat top = e.vectors.leftCols(k);

  Modality1Solution out;
  out.v1 = w.right * (w.scale.cwiseInverse().asDiagonal() * top);
  out.z1 = w.left * top;
  out.w1 = out.z1.transpose() * d.y1;
  out.q1 = out.z1.transpose() * z2;
  out.h1_values = e.values.head(k);
  return out;
}

LossBreakdown eval_objective(const Dataset& d, const ModelParams& p, double lambda) {
  d.validate();
  p.validate();
  if (p.v1.rows() != d.d1() || p.v2.rows() != d.d2() || p.w1.cols() != d.c1() || p.w2.cols() != d.c2())
    throw Error(ErrorKind::DimensionMismatch, "parameters do not match the dataset");
  const Mat z1 = d.x1 * p.v1;
  const Mat z2 = d.x2 * p.v2;
  const double pred1 = (z1 * p.w1 - d.y1).squaredNorm();
  const double pred2 = (z2 * p.w2 - d.y2).squaredNorm();
  const double align = (z1 * p.q1 - z2).squaredNorm();
  return LossBreakdown::compose(pred1, pred2, align, lambda);
}

ClosedFormSolution solve_closed_form(const Dataset& d, const Modality2Solution& m2, int k, double lambda,
                                     const Tolerances& tol) {
  const Modality1Solution m1 = solve_modality1(d, m2.z2, k, lambda, tol);
  ClosedFormSolution out;
  out.params = ModelParams{m1.v1, m2.v2, m1.w1, m2.w2, m1.q1};
  out.h1_values = m1.h1_values;
  out.h2_values = m2.h2_values;
  out.z1 = m1.z1;
  out.z2 = m2.z2;
  out.losses = eval_objective(d, out.params, lambda);
  return out;
}

ClosedFormSolution solve_closed_form(const Dataset& d, int k, double lambda, const Tolerances& tol) {
  return solve_closed_form(d, solve_modality2(d, k, tol), k, lambda, tol);
}

SpectralLosses spectral_losses(const Dataset& d, const ClosedFormSolution& s) {
  const double lambda = s.losses.lambda;
  const auto k = static_cast<double>(s.params.k());
  return {d.y1.squaredNorm() + lambda * k - s.h1_values.sum(), d.y2.squaredNorm() - s.h2_values.sum()};
}

}  // namespace alignlab
