#include "alignlab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alignlab/error.hpp"
#include "alignlab/rng.hpp"

namespace alignlab {

namespace {

enum Stream : std::uint64_t {
  kShared = 1,
  kSpec1,
  kSpec2,
  kMix1,
  kMix2,
  kLoad1,
  kLoad2,
  kNoiseX1,
  kNoiseX2,
  kNoiseY1,
  kNoiseY2,
};

Mat draw(const SynthConfig& cfg, Stream s, Eigen::Index rows, Eigen::Index cols) {
  if (rows == 0 || cols == 0) return Mat::Zero(rows, cols);
  return CounterRng(cfg.seed, s).normal_matrix(rows, cols);
}

// Random mixing matrix scaled so that each mixed column has unit variance.
Mat mixing(const SynthConfig& cfg, Stream s, Eigen::Index rows, Eigen::Index cols) {
  Mat m = draw(cfg, s, rows, cols);
  if (rows > 0) m /= std::sqrt(static_cast<double>(rows));
  return m;
}

Mat hcat(const Mat& a, const Mat& b) {
  Mat out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

}  // namespace

void SynthConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
  if (n < 1 || d1 < 1 || d2 < 1 || c1 < 1 || c2 < 1) fail("n, d1, d2, c1, c2 must be positive");
  if (k_shared < 0 || k_spec1 < 0 || k_spec2 < 0) fail("latent counts must be nonnegative");
  if (k_shared + k_spec1 > d1) fail("k_shared + k_spec1 exceeds d1");
  if (k_shared + k_spec2 > d2) fail("k_shared + k_spec2 exceeds d2");
  if (n <= std::max({d1, d2, c1, c2})) fail("n must exceed every dimension");
  if (noise_x1 < 0 || noise_x2 < 0 || noise_y1 < 0 || noise_y2 < 0) fail("noise levels must be nonnegative");
  if (!(cross_leak >= 0.0 && cross_leak <= 1.0)) fail("cross_leak must lie in [0, 1]");
}

Dataset synth_generate(const SynthConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = cfg.n;

  const Mat s = draw(cfg, kShared, n, cfg.k_shared);
  const Mat u1 = draw(cfg, kSpec1, n, cfg.k_spec1);
  const Mat u2 = draw(cfg, kSpec2, n, cfg.k_spec2);

  const Mat lat1 = hcat(s, u1);
  const Mat lat2 = hcat(s, u2);

  Mat x1 = lat1 * mixing(cfg, kMix1, lat1.cols(), cfg.d1);
  Mat x2 = lat2 * mixing(cfg, kMix2, lat2.cols(), cfg.d2);
  if (cfg.nonlinear) {
    x1 = x1.array().tanh().matrix();
    x2 = x2.array().tanh().matrix();
  }
  x1 += cfg.noise_x1 * draw(cfg, kNoiseX1, n, cfg.d1);
  x2 += cfg.noise_x2 * draw(cfg, kNoiseX2, n, cfg.d2);

  const Mat tgt1 = hcat(lat1, cfg.cross_leak * u2);
  Mat y1 = tgt1 * mixing(cfg, kLoad1, tgt1.cols(), cfg.c1) + cfg.noise_y1 * draw(cfg, kNoiseY1, n, cfg.c1);
  Mat y2 = lat2 * mixing(cfg, kLoad2, lat2.cols(), cfg.c2) + cfg.noise_y2 * draw(cfg, kNoiseY2, n, cfg.c2);

  Dataset raw{std::move(x1), std::move(x2), std::move(y1), std::move(y2), false};
  return standardize(raw);
}

Dataset synth_nonlinear(SynthConfig cfg) {
  cfg.nonlinear = true;
  return synth_generate(cfg);
}

}  // namespace alignlab
