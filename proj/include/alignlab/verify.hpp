#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "alignlab/dataset.hpp"
#include "alignlab/model.hpp"

namespace alignlab {

struct IntersectionReport {
  int dim = 0;
  std::vector<double> cosines;  // singular values of B₁ᵀB₂, descending
};

// Dimension of the intersection of the top-k eigenspaces of f1·f1ᵀ and f2·f2ᵀ,
// counted as the cosines ≥ 1 − tol.intersection between the two top-k bases.
IntersectionReport topk_eigenspace_intersection(const Mat& f1, const Mat& f2, int k, const Tolerances& tol = kTol);

struct Thm2Check {
  bool i = false;   // σ₂₂ ≥ σ₂K
  bool ii = false;  // σ₂₁ < σ₁K
  double sigma22 = 0.0;
  double sigma2k = 0.0;
  double sigma21 = 0.0;
  double sigma1k = 0.0;
};

Thm2Check thm2_assumption_check(const Dataset& d, int k, const Tolerances& tol = kTol);

struct LossProbe {
  double sigma11 = 0.0;
  double sigma11_z = 0.0;
  double gap = 0.0;  // sigma11 − sigma11_z
};

// Closed form at λ, then the informativeness of Z₁ = X₁V₁ for Y₁ against that of X₁.
// Uses explained_fraction, which is σ on standardized data.
LossProbe information_loss_probe(const Dataset& d, int k, double lambda, const Tolerances& tol = kTol);

struct StepCheck {
  std::string name;
  bool premise = false;     // engineered premise, re-measured
  bool conclusion = false;
  bool passed = false;      // premise && conclusion
  std::map<std::string, double> evidence;
};

struct ProofSuiteReport {
  std::uint64_t seed = 0;
  std::vector<StepCheck> steps;            // steps 1–5 on the engineered instance
  std::vector<int> generic_dims;           // step-1 intersection on random instances
  std::vector<double> generic_drift;       // span(V₁(10)) vs span(V₁(0)) on the same instances
  bool generic_contradiction = false;      // every generic dim is 0
  bool passed = false;
};

inline constexpr int kGenericInstances = 20;

// Executable checks for the five-step information-loss argument. The generic
// instances run in parallel.
ProofSuiteReport proof_step_suite(std::uint64_t seed);
ProofSuiteReport proof_step_suite_serial(std::uint64_t seed);

// Engineered instance used by the suite: Y₁'s and Z₂'s top-K left subspaces
// coincide and Y₂'s top-K directions are X₂'s top-K left singular vectors.
struct EngineeredInstance {
  Dataset data;  // not standardized; columns are centered
  int k = 2;
};
EngineeredInstance engineered_instance(std::uint64_t seed);

// Closed form vs ALS oracle on random instances.
struct Thm1Config {
  int instances = 20;
  int n = 200;
  int d = 16;
  int c = 4;
  int k = 3;
  int restarts = 8;
  std::vector<double> lambdas{0.0, 0.1, 1.0, 10.0};
  std::uint64_t seed = 1;
};

struct Thm1Record {
  int instance = 0;
  double lambda = 0.0;
  double closed_total = 0.0;
  double oracle_total = 0.0;
  double rel_gap = 0.0;            // |oracle − closed| / |closed|
  double spectral_rel_err1 = 0.0;  // pred1 + λ·align vs the eigenvalue expression
  double spectral_rel_err2 = 0.0;  // pred2 vs the eigenvalue expression
  int oracle_iterations = 0;
};

struct Thm1Report {
  std::vector<Thm1Record> records;
  double max_rel_gap = 0.0;
  double max_spectral_rel_err = 0.0;
  bool closed_never_worse = true;  // closed ≤ oracle + 1e−6
};

Dataset thm1_instance(const Thm1Config& cfg, int index);
Thm1Report thm1_equivalence(const Thm1Config& cfg);

}  // namespace alignlab

#include "alignlab/sweep.hpp"

namespace alignlab {

// Lossy-regime check plus a closed-form λ sweep on one dataset.
struct Thm2Scenario {
  Thm2Check regime;
  std::vector<SweepPoint> points;
  bool pareto = false;           // align nonincreasing, pred1 nondecreasing (slack 1e−9)
  double y1_energy = 0.0;        // ‖Y₁‖²_F
  double pred1_increase = 0.0;   // pred1(λ_max) − pred1(0)
  double sigma11 = 0.0;
  double sigma11_z_last = 0.0;   // at λ_max
  bool sigma_bounded = false;    // σ₁₁ᶻ(λ) ≤ σ₁₁ + 1e−9 at every λ
};

Thm2Scenario thm2_scenario(const Dataset& d, int k, const std::vector<double>& lambdas);

}  // namespace alignlab
