#include "alignlab/informativeness.hpp"

#include <algorithm>
#include <string>

#include "alignlab/error.hpp"

namespace alignlab {

namespace {

double checked_sigma(double raw, const Tolerances& tol) {
  if (!(raw >= -tol.sigma_range && raw <= 1.0 + tol.sigma_range))
    throw Error(ErrorKind::InvalidInput, "sigma " + std::to_string(raw) + " outside [0, 1]");
  return std::clamp(raw, 0.0, 1.0);
}

void require_standardized(const Mat& y, const Tolerances& tol) {
  if (!targets_standardized(y, tol))
    throw Error(ErrorKind::RequiresStandardized, "targets need zero mean and unit variance");
}

}  // namespace

Mat ols_predict(const Mat& x, const Mat& y, const Tolerances& tol) {
  return x * pinv_solve(x, y, tol);
}

double sigma_informativeness(const Mat& x, const Mat& y, const Tolerances& tol) {
  if (x.rows() != y.rows()) throw Error(ErrorKind::DimensionMismatch, "x and y row counts differ");
  require_standardized(y, tol);
  const double residual = (y - ols_predict(x, y, tol)).squaredNorm();
  const double nc = static_cast<double>(y.rows()) * static_cast<double>(y.cols());
  return checked_sigma(1.0 - residual / nc, tol);
}

double sigma_of_representation(const Mat& z, const Mat& y, const Tolerances& tol) {
  return sigma_informativeness(z, y, tol);
}

double sigma_topk(const Mat& y, int k, const Tolerances& tol) {
  const auto c = static_cast<int>(y.cols());
  if (k < 0 || k > c) throw Error(ErrorKind::InvalidK, "k must lie in [0, C]");
  require_standardized(y, tol);
  if (k == 0) return 0.0;
  if (k == c) return 1.0;

  const SpectralDecomp e = sym_eig(y.transpose() * y, tol);
  const Mat top = e.vectors.leftCols(k);
  const Mat projected = y * top * top.transpose();
  return sigma_informativeness(projected, y, tol);
}

double explained_fraction(const Mat& x, const Mat& y, const Tolerances& tol) {
  if (x.rows() != y.rows()) throw Error(ErrorKind::DimensionMismatch, "x and y row counts differ");
  const double energy = y.squaredNorm();
  if (!(energy > 0.0)) throw Error(ErrorKind::DegenerateTarget, "targets are identically zero");
  const double residual = (y - ols_predict(x, y, tol)).squaredNorm();
  return checked_sigma(1.0 - residual / energy, tol);
}

double topk_energy_fraction(const Mat& y, int k) {
  const SvdResult f = svd(y);
  if (k < 0 || k > f.singulars.size()) throw Error(ErrorKind::InvalidK, "k out of range");
  const double total = f.singulars.squaredNorm();
  if (!(total > 0.0)) throw Error(ErrorKind::DegenerateTarget, "targets are identically zero");
  return f.singulars.head(k).squaredNorm() / total;
}

InformativenessReport full_report(const Dataset& d, const ModelParams* params, int k, const Tolerances& tol) {
  d.validate();
  if (k < 0) throw Error(ErrorKind::InvalidK, "k must be nonnegative");

  InformativenessReport r;
  const Mat* xs[2] = {&d.x1, &d.x2};
  const Mat* ys[2] = {&d.y1, &d.y2};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.sigma[i][j] = sigma_informativeness(*xs[i], *ys[j], tol);

  for (int kk = 1; kk <= std::min<int>(k, static_cast<int>(d.c1())); ++kk) r.sigma_k1.push_back(sigma_topk(d.y1, kk, tol));
  for (int kk = 1; kk <= std::min<int>(k, static_cast<int>(d.c2())); ++kk) r.sigma_k2.push_back(sigma_topk(d.y2, kk, tol));

  r.min_norm_ols = numerical_rank(svd(d.x1).singulars, tol) < d.d1() ||
                   numerical_rank(svd(d.x2).singulars, tol) < d.d2();

  if (params != nullptr) {
    params->validate();
    if (params->v1.rows() != d.d1()) throw Error(ErrorKind::DimensionMismatch, "v1 rows must equal D1");
    const Mat z1 = d.x1 * params->v1;
    r.sigma11_z = sigma_of_representation(z1, d.y1, tol);
    r.min_norm_ols = r.min_norm_ols || numerical_rank(svd(z1).singulars, tol) < z1.cols();
  }
  return r;
}

}  // namespace alignlab
