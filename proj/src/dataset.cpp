#include "alignlab/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "alignlab/error.hpp"
#include "alignlab/informativeness.hpp"

namespace alignlab {

void Dataset::validate() const {
  const Eigen::Index rows = x1.rows();
  if (rows < 1) throw Error(ErrorKind::InvalidInput, "dataset has no samples");
  if (x2.rows() != rows || y1.rows() != rows || y2.rows() != rows)
    throw Error(ErrorKind::DimensionMismatch, "x1, x2, y1, y2 must share the sample count");
  if (x1.cols() < 1 || x2.cols() < 1 || y1.cols() < 1 || y2.cols() < 1)
    throw Error(ErrorKind::InvalidInput, "every matrix needs at least one column");
  if (!x1.allFinite() || !x2.allFinite() || !y1.allFinite() || !y2.allFinite())
    throw Error(ErrorKind::InvalidInput, "dataset has non-finite entries");
}

bool Dataset::sample_size_ok() const {
  const Eigen::Index widest = std::max({d1(), d2(), c1(), c2()});
  return n() > widest;
}

namespace {

Vec column_means(const Mat& m) { return m.colwise().mean().transpose(); }

Vec population_variance(const Mat& m, const Vec& mean) {
  return ((m.rowwise() - mean.transpose()).colwise().squaredNorm() / static_cast<double>(m.rows())).transpose();
}

}  // namespace

bool columns_centered(const Mat& m, const Tolerances& tol) {
  const Vec mean = column_means(m);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return mean.cwiseAbs().maxCoeff() <= tol.standardized * scale;
}

bool targets_standardized(const Mat& y, const Tolerances& tol) {
  if (y.rows() < 1 || y.cols() < 1) return false;
  const Vec mean = column_means(y);
  const Vec var = population_variance(y, mean);
  return mean.cwiseAbs().maxCoeff() <= tol.standardized &&
         (var.array() - 1.0).abs().maxCoeff() <= tol.standardized;
}

Dataset standardize(const Dataset& d, const Tolerances& tol) {
  (void)tol;
  d.validate();
  Dataset out = d;

  auto center = [](Mat& m) {
    const Vec mean = column_means(m);
    m.rowwise() -= mean.transpose();
  };
  auto scale_targets = [](Mat& y, const char* name) {
    const Vec mean = column_means(y);
    y.rowwise() -= mean.transpose();
    const Vec var = population_variance(y, Vec::Zero(y.cols()));
    const double magnitude = std::max(1.0, y.cwiseAbs().maxCoeff());
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
      const double sd = std::sqrt(var(j));
      if (!(sd > 1e-12 * magnitude))
        throw Error(ErrorKind::DegenerateTarget, std::string(name) + " column " + std::to_string(j) + " is constant");
      y.col(j) /= sd;
    }
  };

  center(out.x1);
  center(out.x2);
  scale_targets(out.y1, "y1");
  scale_targets(out.y2, "y2");
  out.standardized = true;
  return out;
}

std::vector<double> gram_spectrum(const Mat& m) {
  const SvdResult f = svd(m);
  std::vector<double> out(static_cast<std::size_t>(f.singulars.size()));
  for (Eigen::Index i = 0; i < f.singulars.size(); ++i) out[static_cast<std::size_t>(i)] = f.singulars(i) * f.singulars(i);
  return out;
}

bool dominance_holds(const std::vector<double>& values) {
  double tail = 0.0;
  for (double v : values) tail += v;
  for (std::size_t j = 0; j + 1 < values.size(); ++j) {
    tail -= values[j];
    if (!(values[j] > tail)) return false;
  }
  return true;
}

namespace {

// Eigenvalues of x·xᵀ down to the first structural zero: s_j² then 0 when N > D.
std::vector<double> outer_spectrum(const Mat& x) {
  std::vector<double> vals = gram_spectrum(x);
  if (x.rows() > x.cols()) vals.push_back(0.0);
  return vals;
}

double topk_gap(const std::vector<double>& vals, int k) {
  if (vals.empty() || !(vals.front() > 0.0)) return 0.0;
  double gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j < k && static_cast<std::size_t>(j + 1) < vals.size(); ++j)
    gap = std::min(gap, (vals[j] - vals[j + 1]) / vals.front());
  return gap;
}

}  // namespace

AssumptionReport check_assumptions(const Dataset& d, int k, const Tolerances& tol) {
  d.validate();
  if (k < 1 || k > std::min(d.d1(), d.d2()))
    throw Error(ErrorKind::InvalidK, "k must lie in [1, min(D1, D2)]");

  AssumptionReport r;
  r.k = k;
  r.standardized = targets_standardized(d.y1, tol) && targets_standardized(d.y2, tol) &&
                   columns_centered(d.x1, tol) && columns_centered(d.x2, tol);
  r.sample_size_ok = d.sample_size_ok();

  const SvdResult f1 = svd(d.x1);
  const SvdResult f2 = svd(d.x2);
  r.rank_x1 = numerical_rank(f1.singulars, tol);
  r.rank_x2 = numerical_rank(f2.singulars, tol);
  r.full_rank_x1 = r.rank_x1 == d.d1();
  r.full_rank_x2 = r.rank_x2 == d.d2();

  r.topk_gap_x1 = topk_gap(outer_spectrum(d.x1), k);
  r.topk_gap_x2 = topk_gap(outer_spectrum(d.x2), k);
  r.distinct_topk_x1 = r.topk_gap_x1 > tol.spectral_gap;
  r.distinct_topk_x2 = r.topk_gap_x2 > tol.spectral_gap;

  r.y1_spectrum = gram_spectrum(d.y1);
  r.y2_spectrum = gram_spectrum(d.y2);
  r.dominance_ok_y1 = dominance_holds(r.y1_spectrum);
  r.dominance_ok_y2 = dominance_holds(r.y2_spectrum);

  if (targets_standardized(d.y1, tol) && targets_standardized(d.y2, tol)) {
    r.sigma22 = sigma_informativeness(d.x2, d.y2, tol);
    r.sigma21 = sigma_informativeness(d.x2, d.y1, tol);
    r.sigma2k = sigma_topk(d.y2, std::min<int>(k, static_cast<int>(d.c2())), tol);
    r.sigma1k = sigma_topk(d.y1, std::min<int>(k, static_cast<int>(d.c1())), tol);
    r.thm2_i = r.sigma22 >= r.sigma2k;
    r.thm2_ii = r.sigma21 < r.sigma1k;
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.sigma22 = r.sigma2k = r.sigma21 = r.sigma1k = nan;
  }
  return r;
}

}  // namespace alignlab
