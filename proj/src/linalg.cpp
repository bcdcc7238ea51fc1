#include "alignlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "alignlab/error.hpp"

namespace alignlab {

bool all_finite(const Mat& m) { return m.allFinite(); }

std::vector<double> canonicalize_signs(Mat& columns) {
  std::vector<double> signs(static_cast<std::size_t>(columns.cols()), 1.0);
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < columns.rows(); ++i) {
      const double a = std::abs(columns(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (columns.rows() > 0 && columns(arg, j) < 0.0) {
      columns.col(j) *= -1.0;
      signs[static_cast<std::size_t>(j)] = -1.0;
    }
  }
  return signs;
}

SvdResult svd(const Mat& m) {
  if (m.rows() < 1 || m.cols() < 1) throw Error(ErrorKind::InvalidInput, "svd of an empty matrix");
  if (!m.allFinite()) throw Error(ErrorKind::InvalidInput, "svd input has non-finite entries");

  Eigen::JacobiSVD<Mat> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  const auto signs = canonicalize_signs(out.left);
  for (Eigen::Index j = 0; j < out.right.cols(); ++j) out.right.col(j) *= signs[static_cast<std::size_t>(j)];
  return out;
}

SpectralDecomp sym_eig(const Mat& m, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw Error(ErrorKind::DimensionMismatch, "sym_eig needs a non-empty square matrix");
  if (!m.allFinite()) throw Error(ErrorKind::InvalidInput, "sym_eig input has non-finite entries");
  const double norm = m.norm();
  if ((m - m.transpose()).norm() > tol.sym * norm)
    throw Error(ErrorKind::NotSymmetric, "asymmetry exceeds tolerance");

  const Mat sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::InvalidInput, "eigensolver did not converge");

  // Eigen returns ascending order.
  SpectralDecomp out{solver.eigenvectors().rowwise().reverse(), solver.eigenvalues().reverse()};
  canonicalize_signs(out.vectors);
  return out;
}

GenEigResult gen_eig_topk(const Mat& a, const Mat& b, int k, const Tolerances& tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw Error(ErrorKind::DimensionMismatch, "gen_eig_topk needs square operands of equal size");
  const auto dim = static_cast<int>(a.rows());
  if (k < 1 || k > dim) throw Error(ErrorKind::InvalidK, "k must lie in [1, dim]");

  const SpectralDecomp metric = sym_eig(b, tol);
  const double top = metric.values(0);
  const double bottom = metric.values(dim - 1);
  if (!(top > 0.0) || bottom <= tol.pd * top)
    throw Error(ErrorKind::IllConditionedMetric, "metric is singular or indefinite");

  const Mat whiten = metric.vectors * metric.values.cwiseSqrt().cwiseInverse().asDiagonal();
  Mat h = whiten.transpose() * a * whiten;
  // a is symmetric, so H is too up to rounding
  h = 0.5 * (h + h.transpose()).eval();
  const SpectralDecomp inner = sym_eig(h, tol);

  GenEigResult out;
  out.basis = whiten * inner.vectors.leftCols(k);
  out.values = inner.values.head(k);
  return out;
}

double principal_angle_dist(const Mat& u, const Mat& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw Error(ErrorKind::DimensionMismatch, "principal_angle_dist needs bases of equal shape");
  if (u.cols() < 1) throw Error(ErrorKind::InvalidInput, "empty basis");
  // ‖(I − uuᵀ)v‖₂ = sin θ_max; avoids the cancellation in sqrt(1 − cos²).
  const Mat residual = v - u * (u.transpose() * v);
  Eigen::JacobiSVD<Mat> solver(residual);
  return std::min(1.0, solver.singularValues()(0));
}

int numerical_rank(const Vec& singulars, const Tolerances& tol) {
  if (singulars.size() == 0 || !(singulars(0) > 0.0)) return 0;
  const double cut = tol.rank_cut * singulars(0);
  int r = 0;
  for (Eigen::Index i = 0; i < singulars.size(); ++i)
    if (singulars(i) > cut) ++r;
  return r;
}

Mat pinv_solve(const Mat& x, const Mat& y, const Tolerances& tol) {
  if (x.rows() != y.rows()) throw Error(ErrorKind::DimensionMismatch, "pinv_solve row counts differ");
  if (!y.allFinite()) throw Error(ErrorKind::InvalidInput, "pinv_solve rhs has non-finite entries");
  const SvdResult f = svd(x);
  const int r = numerical_rank(f.singulars, tol);
  if (r == 0) return Mat::Zero(x.cols(), y.cols());
  const Vec inv = f.singulars.head(r).cwiseInverse();
  return f.right.leftCols(r) * (inv.asDiagonal() * (f.left.leftCols(r).transpose() * y));
}

Mat orthonormal_basis(const Mat& m, const Tolerances& tol) {
  const SvdResult f = svd(m);
  return f.left.leftCols(numerical_rank(f.singulars, tol));
}

double boundary_gap(const Vec& values, int k) {
  if (k >= values.size()) return std::numeric_limits<double>::infinity();
  const double scale = values(0);
  if (!(scale > 0.0)) return 0.0;
  return (values(k - 1) - values(k)) / scale;
}

}  // namespace alignlab
