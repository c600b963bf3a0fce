#include <benchmark/benchmark.h>

#include "approxrec/experiment.hpp"
#include "approxrec/metrics.hpp"
#include "approxrec/regions.hpp"

using namespace approxrec;

namespace {

void BM_Expansion(benchmark::State& state) {
  const Graph g = random_regular_graph(static_cast<int>(state.range(0)), 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(expansion_constant(g));
}

void BM_ExpansionSerial(benchmark::State& state) {
  const Graph g = random_regular_graph(static_cast<int>(state.range(0)), 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(expansion_constant_serial(g));
}

void BM_DualCycles(benchmark::State& state) {
  const DualGraph d(GridGraph(6, 6));
  const int len = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_dual_cycles(d, len));
}

void BM_DualCyclesSerial(benchmark::State& state) {
  const DualGraph d(GridGraph(6, 6));
  const int len = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_dual_cycles_serial(d, len));
  }
}

ExperimentConfig sweep() {
  ExperimentConfig cfg;
  cfg.rows = 12;
  cfg.cols = 12;
  cfg.p_list = {0.02, 0.04};
  cfg.trials = 20;
  return cfg;
}

void BM_Experiment(benchmark::State& state) {
  const ExperimentConfig cfg = sweep();
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg));
}

void BM_ExperimentSerial(benchmark::State& state) {
  const ExperimentConfig cfg = sweep();
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(cfg));
}

}  // namespace

BENCHMARK(BM_Expansion)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpansionSerial)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DualCycles)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DualCyclesSerial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Experiment)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
