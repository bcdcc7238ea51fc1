// Serial reference vs OpenMP kernel for each parallel entry point.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "alignlab/fixtures.hpp"
#include "alignlab/oracle.hpp"
#include "alignlab/probe.hpp"
#include "alignlab/sweep.hpp"
#include "alignlab/synth.hpp"
#include "alignlab/verify.hpp"

using namespace alignlab;

namespace {

const Dataset& sweep_data() {
  static const Dataset d = [] {
    SynthConfig c;
    c.n = 2000;
    c.d1 = c.d2 = 64;
    c.c1 = c.c2 = 8;
    c.seed = 1;
    return synth_generate(c);
  }();
  return d;
}

const Dataset& oracle_data() {
  static const Dataset d = thm1_instance(Thm1Config{}, 0);
  return d;
}

const Dataset& probe_data() {
  static const Dataset d = synth_generate(fixtures::nonlinear_thm2());
  return d;
}

ProbeConfig probe_cfg() {
  ProbeConfig c = fixtures::probe_defaults();
  c.steps = 300;
  return c;
}

const std::vector<double> kSweepLambdas = linspace(0.0, 10.0, 64);
const std::vector<double> kProbeLambdas = linspace(0.0, 1.0, 4);

template <bool Parallel>
void BM_LambdaSweep(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? lambda_sweep(sweep_data(), 4, kSweepLambdas)
                                      : lambda_sweep_serial(sweep_data(), 4, kSweepLambdas));
}

template <bool Parallel>
void BM_Oracle(benchmark::State& state) {
  OracleOptions opt;
  opt.seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? oracle_minimize(oracle_data(), 3, 1.0, opt)
                                      : oracle_minimize_serial(oracle_data(), 3, 1.0, opt));
}

template <bool Parallel>
void BM_Probe(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? train_sweep(probe_data(), kProbeLambdas, {1, 2}, probe_cfg())
                                      : train_sweep_serial(probe_data(), kProbeLambdas, {1, 2}, probe_cfg()));
}

template <bool Parallel>
void BM_ProofSuite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Parallel ? proof_step_suite(1) : proof_step_suite_serial(1));
}

}  // namespace

BENCHMARK(BM_LambdaSweep<false>)->Name("lambda_sweep/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LambdaSweep<true>)->Name("lambda_sweep/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Oracle<false>)->Name("oracle/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle<true>)->Name("oracle/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Probe<false>)->Name("probe/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Probe<true>)->Name("probe/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ProofSuite<false>)->Name("proof_suite/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProofSuite<true>)->Name("proof_suite/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
