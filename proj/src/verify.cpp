#include "alignlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "alignlab/error.hpp"
#include "alignlab/informativeness.hpp"
#include "alignlab/oracle.hpp"
#include "alignlab/rng.hpp"
#include "alignlab/solver.hpp"
#include "alignlab/synth.hpp"

namespace alignlab {

IntersectionReport topk_eigenspace_intersection(const Mat& f1, const Mat& f2, int k, const Tolerances& tol) {
  if (f1.rows() != f2.rows()) throw Error(ErrorKind::DimensionMismatch, "factors must share the row count");
  const SvdResult a = svd(f1);
  const SvdResult b = svd(f2);
  if (k < 1 || k > numerical_rank(a.singulars, tol) || k > numerical_rank(b.singulars, tol))
    throw Error(ErrorKind::InvalidK, "k exceeds the rank of a factor");

  const Mat cross = a.left.leftCols(k).transpose() * b.left.leftCols(k);
  const Vec cos = Eigen::JacobiSVD<Mat>(cross).singularValues();
  IntersectionReport r;
  for (Eigen::Index i = 0; i < cos.size(); ++i) {
    r.cosines.push_back(cos(i));
    if (cos(i) >= 1.0 - tol.intersection) ++r.dim;
  }
  return r;
}

Thm2Check thm2_assumption_check(const Dataset& d, int k, const Tolerances& tol) {
  Thm2Check c;
  c.sigma22 = sigma_informativeness(d.x2, d.y2, tol);
  c.sigma2k = sigma_topk(d.y2, k, tol);
  c.sigma21 = sigma_informativeness(d.x2, d.y1, tol);
  c.sigma1k = sigma_topk(d.y1, k, tol);
  c.i = c.sigma22 >= c.sigma2k;
  c.ii = c.sigma21 < c.sigma1k;
  return c;
}

LossProbe information_loss_probe(const Dataset& d, int k, double lambda, const Tolerances& tol) {
  const ClosedFormSolution cf = solve_closed_form(d, k, lambda, tol);
  LossProbe p;
  p.sigma11 = explained_fraction(d.x1, d.y1, tol);
  p.sigma11_z = explained_fraction(d.x1 * cf.params.v1, d.y1, tol);
  p.gap = p.sigma11 - p.sigma11_z;
  return p;
}

namespace {

enum : std::uint64_t {
  kBasis = 21,
  kRotX1,
  kRotX2,
  kRotY1,
  kRotY2,
  kGeneric,
};

// m orthonormal columns in ℝᴺ, all orthogonal to the ones vector.
Mat centered_orthonormal(Eigen::Index n, Eigen::Index m, const CounterRng& rng) {
  Mat g = rng.normal_matrix(n, m);
  g.rowwise() -= g.colwise().mean();
  Eigen::HouseholderQR<Mat> qr(g);
  return qr.householderQ() * Mat::Identity(n, m);
}

Mat random_orthogonal(Eigen::Index m, const CounterRng& rng) {
  Eigen::HouseholderQR<Mat> qr(rng.normal_matrix(m, m));
  return qr.householderQ() * Mat::Identity(m, m);
}

Mat columns(const Mat& q, std::initializer_list<Eigen::Index> idx) {
  Mat out(q.rows(), static_cast<Eigen::Index>(idx.size()));
  Eigen::Index j = 0;
  for (auto i : idx) out.col(j++) = q.col(i);
  return out;
}

Vec values(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

EngineeredInstance engineered_instance(std::uint64_t seed) {
  constexpr Eigen::Index n = 60;
  const CounterRng basis_rng(seed, kBasis);
  const Mat q = centered_orthonormal(n, 14, basis_rng);

  // X₂: left singular vectors q0..q7 with strictly decreasing singular values.
  const Vec s = values({8, 7, 6, 5, 4, 3, 2, 1});
  const Mat x2 = columns(q, {0, 1, 2, 3, 4, 5, 6, 7}) * s.asDiagonal() *
                 random_orthogonal(8, CounterRng(seed, kRotX2)).transpose();

  // Y₂: top-K directions are X₂'s top-K; spectrum 64, 16, 4, 1 is dominant.
  const Vec t = values({8, 4, 2, 1});
  const Mat y2 = columns(q, {0, 1, 2, 3}) * t.asDiagonal() * random_orthogonal(4, CounterRng(seed, kRotY2)).transpose();

  // Y₁: shares its top-K with Y₂; its tail leaves col(X₂) partially (q8, q9).
  Mat left1 = columns(q, {0, 1, 2, 9});
  left1.col(2) = (q.col(2) + q.col(8)) / std::sqrt(2.0);
  const Mat y1 = left1 * t.asDiagonal() * random_orthogonal(4, CounterRng(seed, kRotY1)).transpose();

  // X₁ spans every direction Y₁ and Z₂ use.
  const Mat x1 = columns(q, {0, 1, 2, 8, 9, 10, 11, 12}) * s.asDiagonal() *
                 random_orthogonal(8, CounterRng(seed, kRotX1)).transpose();

  return {Dataset{x1, x2, y1, y2, false}, 2};
}

namespace {

double max_drift(const Dataset& d, const Modality2Solution& m2, int k, std::initializer_list<double> lambdas) {
  const Mat ref = orthonormal_basis(solve_closed_form(d, m2, k, 0.0).params.v1);
  double worst = 0.0;
  for (double l : lambdas)
    worst = std::max(worst, principal_angle_dist(ref, orthonormal_basis(solve_closed_form(d, m2, k, l).params.v1)));
  return worst;
}

double min_cosine(const IntersectionReport& r) {
  return r.cosines.empty() ? 0.0 : *std::min_element(r.cosines.begin(), r.cosines.end());
}

std::vector<StepCheck> engineered_steps(std::uint64_t seed) {
  const EngineeredInstance inst = engineered_instance(seed);
  const Dataset& d = inst.data;
  const int k = inst.k;
  const Modality2Solution m2 = solve_modality2(d, k);
  std::vector<StepCheck> steps(5);

  // 1: V₁* does not move with λ ⇒ top-K of Z₂Z₂ᵀ and Y₁Y₁ᵀ intersect in dimension K.
  {
    StepCheck& s = steps[0];
    s.name = "step1_z2_y1_intersection";
    const double drift = max_drift(d, m2, k, {0.1, 0.5, 2.0, 10.0, 100.0});
    const IntersectionReport r = topk_eigenspace_intersection(m2.z2, d.y1, k);
    s.premise = drift < 1e-8;
    s.conclusion = r.dim == k;
    s.evidence = {{"max_drift", drift}, {"dim", r.dim}, {"min_cosine", min_cosine(r)}};
  }
  // 2: σ₂₂ ≥ σ₂K with a dominant Y₂ spectrum ⇒ top-K of X₂X₂ᵀ and Y₂Y₂ᵀ intersect in dimension K.
  {
    StepCheck& s = steps[1];
    s.name = "step2_x2_y2_intersection";
    const double sigma22 = explained_fraction(d.x2, d.y2);
    const double sigma2k = topk_energy_fraction(d.y2, k);
    const bool dominant = dominance_holds(gram_spectrum(d.y2));
    const IntersectionReport r = topk_eigenspace_intersection(d.x2, d.y2, k);
    // Y₂'s top-K inside the full column space of X₂
    const double containment = principal_angle_dist(
        orthonormal_basis(d.x2) * (orthonormal_basis(d.x2).transpose() * svd(d.y2).left.leftCols(k)),
        svd(d.y2).left.leftCols(k));
    s.premise = sigma22 >= sigma2k && dominant;
    s.conclusion = r.dim == k;
    s.evidence = {{"sigma22", sigma22}, {"sigma2k", sigma2k}, {"dominance", dominant ? 1.0 : 0.0},
                  {"dim", r.dim},       {"min_cosine", min_cosine(r)}, {"colspace_containment_dist", containment}};
  }
  // 3: ⇒ top-K of Z₂Z₂ᵀ and X₂X₂ᵀ intersect in dimension K, and the spans coincide.
  {
    StepCheck& s = steps[2];
    s.name = "step3_z2_x2_intersection";
    const IntersectionReport r = topk_eigenspace_intersection(m2.z2, d.x2, k);
    const double dist = principal_angle_dist(svd(m2.z2).left, svd(d.x2).left.leftCols(k));
    s.premise = steps[1].premise && steps[1].conclusion;
    s.conclusion = r.dim == k && dist < 1e-8;
    s.evidence = {{"dim", r.dim}, {"min_cosine", min_cosine(r)}, {"span_dist", dist}};
  }
  // 4: steps 1 and 3 ⇒ top-K of Y₁Y₁ᵀ and X₂X₂ᵀ intersect in dimension K.
  {
    StepCheck& s = steps[3];
    s.name = "step4_y1_x2_intersection";
    const IntersectionReport r = topk_eigenspace_intersection(d.y1, d.x2, k);
    s.premise = (steps[0].premise && steps[0].conclusion) && (steps[2].premise && steps[2].conclusion);
    s.conclusion = r.dim == k;
    s.evidence = {{"dim", r.dim}, {"min_cosine", min_cosine(r)}};
  }
  // 5: ⇒ ‖Y₁ − Ŷ₂₁‖² ≤ ε₁K, i.e. σ₂₁ ≥ σ₁K.
  {
    StepCheck& s = steps[4];
    s.name = "step5_ols_bound";
    const double residual = (d.y1 - ols_predict(d.x2, d.y1)).squaredNorm();
    const double energy = d.y1.squaredNorm();
    const double eps1k = energy * (1.0 - topk_energy_fraction(d.y1, k));
    const double sigma21 = explained_fraction(d.x2, d.y1);
    const double sigma1k = topk_energy_fraction(d.y1, k);
    s.premise = steps[3].premise && steps[3].conclusion;
    s.conclusion = residual <= eps1k && sigma21 >= sigma1k;
    s.evidence = {{"residual", residual}, {"eps1k", eps1k}, {"sigma21", sigma21},
                  {"sigma1k", sigma1k},   {"slack", sigma21 - sigma1k}};
  }
  for (auto& s : steps) s.passed = s.premise && s.conclusion;
  return steps;
}

Dataset generic_instance(std::uint64_t seed, int index) {
  const CounterRng rng(seed, substream(kGeneric, static_cast<std::uint64_t>(index)));
  constexpr Eigen::Index n = 60;
  Dataset d;
  d.x1 = rng.normal_matrix(n, 8, 0);
  d.x2 = rng.normal_matrix(n, 8, 1000);
  d.y1 = rng.normal_matrix(n, 4, 2000);
  d.y2 = rng.normal_matrix(n, 4, 3000);
  return standardize(d);
}

struct GenericResult {
  int dim = 0;
  double drift = 0.0;
};

GenericResult generic_check(std::uint64_t seed, int index) {
  const Dataset d = generic_instance(seed, index);
  constexpr int k = 2;
  const Modality2Solution m2 = solve_modality2(d, k);
  return {topk_eigenspace_intersection(m2.z2, d.y1, k).dim, max_drift(d, m2, k, {10.0})};
}

ProofSuiteReport assemble(std::uint64_t seed, std::vector<StepCheck> steps, const std::vector<GenericResult>& generic) {
  ProofSuiteReport r;
  r.seed = seed;
  r.steps = std::move(steps);
  r.generic_contradiction = true;
  for (const auto& g : generic) {
    r.generic_dims.push_back(g.dim);
    r.generic_drift.push_back(g.drift);
    if (g.dim != 0) r.generic_contradiction = false;
  }
  r.passed = r.generic_contradiction;
  for (const auto& s : r.steps) r.passed = r.passed && s.passed;
  return r;
}

}  // namespace

ProofSuiteReport proof_step_suite(std::uint64_t seed) {
  std::vector<GenericResult> generic(kGenericInstances);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < kGenericInstances; ++i) {
    try {
      generic[static_cast<std::size_t>(i)] = generic_check(seed, i);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return assemble(seed, engineered_steps(seed), generic);
}

ProofSuiteReport proof_step_suite_serial(std::uint64_t seed) {
  std::vector<GenericResult> generic;
  for (int i = 0; i < kGenericInstances; ++i) generic.push_back(generic_check(seed, i));
  return assemble(seed, engineered_steps(seed), generic);
}

Dataset thm1_instance(const Thm1Config& cfg, int index) {
  SynthConfig sc;
  sc.n = cfg.n;
  sc.d1 = sc.d2 = cfg.d;
  sc.c1 = sc.c2 = cfg.c;
  sc.k_shared = sc.k_spec1 = sc.k_spec2 = std::max(1, std::min(3, cfg.d / 3));
  sc.noise_x1 = sc.noise_x2 = 0.3;
  sc.noise_y1 = sc.noise_y2 = 0.3;
  sc.cross_leak = 0.2;
  sc.seed = substream(cfg.seed, static_cast<std::uint64_t>(index));
  return synth_generate(sc);
}

Thm1Report thm1_equivalence(const Thm1Config& cfg) {
  Thm1Report rep;
  for (int i = 0; i < cfg.instances; ++i) {
    const Dataset d = thm1_instance(cfg, i);
    const Modality2Solution m2 = solve_modality2(d, cfg.k);
    for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
      const double lambda = cfg.lambdas[li];
      const ClosedFormSolution cf = solve_closed_form(d, m2, cfg.k, lambda);
      OracleOptions opt;
      opt.restarts = cfg.restarts;
      opt.seed = substream(cfg.seed, static_cast<std::uint64_t>(i));
      opt.lambda_index = li;
      const OracleRun run = oracle_minimize(d, cfg.k, lambda, opt);
      const SpectralLosses sl = spectral_losses(d, cf);

      Thm1Record r;
      r.instance = i;
      r.lambda = lambda;
      r.closed_total = cf.losses.total;
      r.oracle_total = run.losses.total;
      r.rel_gap = std::abs(run.losses.total - cf.losses.total) / std::abs(cf.losses.total);
      r.spectral_rel_err1 = std::abs(cf.losses.pred1 + lambda * cf.losses.align - sl.pred1_plus_lambda_align) /
                            std::abs(sl.pred1_plus_lambda_align);
      r.spectral_rel_err2 = std::abs(cf.losses.pred2 - sl.pred2) / std::abs(sl.pred2);
      r.oracle_iterations = static_cast<int>(run.trace.size());
      rep.max_rel_gap = std::max(rep.max_rel_gap, r.rel_gap);
      rep.max_spectral_rel_err = std::max({rep.max_spectral_rel_err, r.spectral_rel_err1, r.spectral_rel_err2});
      if (cf.losses.total > run.losses.total + 1e-6) rep.closed_never_worse = false;
      rep.records.push_back(r);
    }
  }
  return rep;
}

}  // namespace alignlab

namespace alignlab {

Thm2Scenario thm2_scenario(const Dataset& d, int k, const std::vector<double>& lambdas) {
  Thm2Scenario s;
  s.regime = thm2_assumption_check(d, k);
  s.points = lambda_sweep(d, k, lambdas);
  s.pareto = pareto_monotone(s.points);
  s.y1_energy = d.y1.squaredNorm();
  s.pred1_increase = s.points.back().losses.pred1 - s.points.front().losses.pred1;
  s.sigma11 = explained_fraction(d.x1, d.y1);
  s.sigma11_z_last = s.points.back().sigma11_z;
  s.sigma_bounded = std::all_of(s.points.begin(), s.points.end(), [&](const SweepPoint& p) {
    return !p.degenerate && p.sigma11_z <= s.sigma11 + 1e-9;
  });
  return s;
}

}  // namespace alignlab
