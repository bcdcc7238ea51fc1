#include "alignlab/probe.hpp"

#include <cmath>
#include <limits>

#include "alignlab/error.hpp"
#include "alignlab/rng.hpp"

namespace alignlab {

namespace {

enum InitStream : std::uint64_t { kEnc1In = 1, kEnc1Out, kEnc2In, kEnc2Out, kHead1, kHead2, kQ1 };

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::DimensionMismatch, what);
}

struct Activations {
  Mat h;  // tanh layer
  Mat f;  // encoder output
};

Activations run(const MlpEncoder& enc, const Mat& x) {
  Activations a;
  a.h = ((x * enc.w_in).rowwise() + enc.b_in.transpose()).array().tanh().matrix();
  a.f = (a.h * enc.w_out).rowwise() + enc.b_out.transpose();
  return a;
}

MlpEncoder backprop(const MlpEncoder& enc, const Mat& x, const Activations& a, const Mat& df) {
  MlpEncoder g;
  g.w_out = a.h.transpose() * df;
  g.b_out = df.colwise().sum().transpose();
  const Mat da = ((df * enc.w_out.transpose()).array() * (1.0 - a.h.array().square())).matrix();
  g.w_in = x.transpose() * da;
  g.b_in = da.colwise().sum().transpose();
  return g;
}

ProbeParams grad_with_loss(const ProbeParams& p, const Dataset& d, double lambda, LossBreakdown* loss) {
  const Activations a1 = run(p.enc1, d.x1);
  const Activations a2 = run(p.enc2, d.x2);
  const Mat r1 = a1.f * p.w1 - d.y1;
  const Mat r2 = a2.f * p.w2 - d.y2;
  const Mat ra = a1.f * p.q1 - a2.f;
  if (loss != nullptr) *loss = LossBreakdown::compose(r1.squaredNorm(), r2.squaredNorm(), ra.squaredNorm(), lambda);

  ProbeParams g;
  g.w1 = 2.0 * a1.f.transpose() * r1;
  g.w2 = 2.0 * a2.f.transpose() * r2;
  g.q1 = 2.0 * lambda * a1.f.transpose() * ra;
  const Mat df1 = 2.0 * r1 * p.w1.transpose() + 2.0 * lambda * ra * p.q1.transpose();
  const Mat df2 = 2.0 * r2 * p.w2.transpose() - 2.0 * lambda * ra;
  g.enc1 = backprop(p.enc1, d.x1, a1, df1);
  g.enc2 = backprop(p.enc2, d.x2, a2, df2);
  return g;
}

void check_shapes(const ProbeParams& p, const Dataset& d) {
  p.validate();
  require(p.enc1.input_dim() == d.d1() && p.enc2.input_dim() == d.d2(), "encoder input width does not match data");
  require(p.w1.cols() == d.c1() && p.w2.cols() == d.c2(), "head width does not match targets");
}

void axpy(MlpEncoder& p, double a, const MlpEncoder& g) {
  p.w_in.noalias() += a * g.w_in;
  p.b_in.noalias() += a * g.b_in;
  p.w_out.noalias() += a * g.w_out;
  p.b_out.noalias() += a * g.b_out;
}

LossBreakdown loss_eq2_unchecked(const ProbeParams& p, const Dataset& d, double lambda) {
  const Mat f1 = run(p.enc1, d.x1).f;
  const Mat f2 = run(p.enc2, d.x2).f;
  return LossBreakdown::compose((f1 * p.w1 - d.y1).squaredNorm(), (f2 * p.w2 - d.y2).squaredNorm(),
                                (f1 * p.q1 - f2).squaredNorm(), lambda);
}

bool finite(const LossBreakdown& l) {
  return std::isfinite(l.pred1) && std::isfinite(l.pred2) && std::isfinite(l.align) && std::isfinite(l.total);
}

std::vector<ProbeRunResult> select_best(const std::vector<double>& lambdas, const std::vector<std::uint64_t>& seeds,
                                        const std::vector<ProbeRun>& runs) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<ProbeRunResult> out;
  out.reserve(lambdas.size());
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    ProbeRunResult r;
    r.lambda = lambdas[li];
    r.best_pred1 = r.best_pred2 = r.align_at_best = nan;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      const ProbeRun& run = runs[li * seeds.size() + si];
      if (!run.converged) continue;
      r.seeds_used.push_back(run.seed);
      const double score = run.losses.pred1 + run.losses.pred2;
      if (score < best) {
        best = score;
        r.best_pred1 = run.losses.pred1;
        r.best_pred2 = run.losses.pred2;
        r.align_at_best = run.losses.align;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

void check_sweep_args(const std::vector<double>& lambdas, const std::vector<std::uint64_t>& seeds,
                      const ProbeConfig& cfg) {
  if (lambdas.empty() || seeds.empty()) throw Error(ErrorKind::InvalidInput, "probe needs at least one lambda and one seed");
  for (double l : lambdas)
    if (!std::isfinite(l) || l < 0.0) throw Error(ErrorKind::InvalidInput, "lambdas must be finite and >= 0");
  if (cfg.hidden < 1 || cfg.k < 1 || cfg.steps < 0 || !(cfg.lr > 0.0))
    throw Error(ErrorKind::InvalidConfig, "probe config needs hidden >= 1, k >= 1, steps >= 0, lr > 0");
}

}  // namespace

void MlpEncoder::validate() const {
  require(w_in.cols() >= 1, "hidden width must be >= 1");
  require(b_in.size() == w_in.cols() && w_out.rows() == w_in.cols() && b_out.size() == w_out.cols(),
          "inconsistent encoder shapes");
  if (!all_finite(w_in) || !all_finite(b_in) || !all_finite(w_out) || !all_finite(b_out))
    throw Error(ErrorKind::InvalidInput, "non-finite encoder parameter");
}

void ProbeParams::validate() const {
  enc1.validate();
  enc2.validate();
  const Eigen::Index k = enc1.output_dim();
  require(enc2.output_dim() == k, "encoders disagree on K");
  require(w1.rows() == k && w2.rows() == k && q1.rows() == k && q1.cols() == k, "head shapes disagree with K");
}

Mat forward(const MlpEncoder& enc, const Mat& x) {
  require(x.cols() == enc.input_dim(), "input width does not match encoder");
  require(enc.b_in.size() == enc.hidden() && enc.w_out.rows() == enc.hidden() && enc.b_out.size() == enc.output_dim(),
          "inconsistent encoder shapes");
  return run(enc, x).f;
}

LossBreakdown loss_eq2(const ProbeParams& p, const Dataset& d, double lambda) {
  check_shapes(p, d);
  const Mat f1 = forward(p.enc1, d.x1);
  const Mat f2 = forward(p.enc2, d.x2);
  return LossBreakdown::compose((f1 * p.w1 - d.y1).squaredNorm(), (f2 * p.w2 - d.y2).squaredNorm(),
                                (f1 * p.q1 - f2).squaredNorm(), lambda);
}

ProbeParams grad_eq2(const ProbeParams& p, const Dataset& d, double lambda) {
  check_shapes(p, d);
  return grad_with_loss(p, d, lambda, nullptr);
}

ProbeParams probe_init(Eigen::Index d1, Eigen::Index d2, Eigen::Index c1, Eigen::Index c2, int hidden, int k,
                       std::uint64_t stream) {
  if (hidden < 1 || k < 1 || d1 < 1 || d2 < 1 || c1 < 1 || c2 < 1)
    throw Error(ErrorKind::InvalidConfig, "probe dimensions must be >= 1");
  auto draw = [stream](InitStream s, Eigen::Index r, Eigen::Index c, double fan_in) {
    return Mat(CounterRng(stream, s).normal_matrix(r, c) / std::sqrt(fan_in));
  };
  ProbeParams p;
  p.enc1 = {draw(kEnc1In, d1, hidden, double(d1)), Vec::Zero(hidden), draw(kEnc1Out, hidden, k, hidden), Vec::Zero(k)};
  p.enc2 = {draw(kEnc2In, d2, hidden, double(d2)), Vec::Zero(hidden), draw(kEnc2Out, hidden, k, hidden), Vec::Zero(k)};
  p.w1 = draw(kHead1, k, c1, k);
  p.w2 = draw(kHead2, k, c2, k);
  p.q1 = draw(kQ1, k, k, k);
  return p;
}

ProbeRun train_single(const Dataset& d, double lambda, int lambda_index, std::uint64_t seed, const ProbeConfig& cfg,
                      ProbeParams* final_params) {
  d.validate();
  ProbeParams p = probe_init(d.d1(), d.d2(), d.c1(), d.c2(), cfg.hidden, cfg.k,
                             substream(seed, static_cast<std::uint64_t>(lambda_index)));
  const double step = cfg.lr / static_cast<double>(d.n());

  ProbeRun out;
  out.lambda = lambda;
  out.seed = seed;
  double prev = std::numeric_limits<double>::infinity();
  bool diverged = false;
  LossBreakdown at;
  for (int it = 0; it < cfg.steps; ++it) {
    const ProbeParams g = grad_with_loss(p, d, lambda, &at);
    if (!finite(at) || !all_finite(g.w1) || !all_finite(g.w2)) {
      diverged = true;
      break;
    }
    if (at.total > prev) out.monotone = false;
    prev = at.total;
    axpy(p.enc1, -step, g.enc1);
    axpy(p.enc2, -step, g.enc2);
    p.w1.noalias() -= step * g.w1;
    p.w2.noalias() -= step * g.w2;
    p.q1.noalias() -= step * g.q1;
  }
  if (!diverged) {
    at = loss_eq2_unchecked(p, d, lambda);
    diverged = !finite(at);
    if (!diverged && at.total > prev) out.monotone = false;
  }
  if (diverged) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.losses = LossBreakdown{nan, nan, nan, lambda, nan};
    out.converged = false;
  } else {
    out.losses = at;
    out.converged = true;
  }
  if (final_params != nullptr) *final_params = std::move(p);
  return out;
}

ProbeSweep train_sweep(const Dataset& d, const std::vector<double>& lambdas, const std::vector<std::uint64_t>& seeds,
                       const ProbeConfig& cfg) {
  check_sweep_args(lambdas, seeds, cfg);
  d.validate();
  const long total = static_cast<long>(lambdas.size() * seeds.size());
  ProbeSweep out;
  out.runs.resize(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < total; ++i) {
    const std::size_t li = static_cast<std::size_t>(i) / seeds.size();
    const std::size_t si = static_cast<std::size_t>(i) % seeds.size();
    out.runs[static_cast<std::size_t>(i)] = train_single(d, lambdas[li], static_cast<int>(li), seeds[si], cfg);
  }
  out.best = select_best(lambdas, seeds, out.runs);
  return out;
}

ProbeSweep train_sweep_serial(const Dataset& d, const std::vector<double>& lambdas,
                              const std::vector<std::uint64_t>& seeds, const ProbeConfig& cfg) {
  check_sweep_args(lambdas, seeds, cfg);
  d.validate();
  ProbeSweep out;
  for (std::size_t li = 0; li < lambdas.size(); ++li)
    for (std::uint64_t s : seeds) out.runs.push_back(train_single(d, lambdas[li], static_cast<int>(li), s, cfg));
  out.best = select_best(lambdas, seeds, out.runs);
  return out;
}

}  // namespace alignlab
