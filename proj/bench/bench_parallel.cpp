// Serial reference path against the OpenMP path for the two data-parallel
// workloads: scan grid points and optimizer restarts.

#include <benchmark/benchmark.h>

#include "nuqsim/circuits.hpp"
#include "nuqsim/optim.hpp"
#include "nuqsim/scan.hpp"

namespace {

using namespace nuqsim;

void BM_SlabScan(benchmark::State& state) {
  ScanConfig cfg = ScanConfig::defaults(Scenario::kSlab);
  cfg.grid.points = static_cast<int>(state.range(1));
  cfg.physics.slab_periods = 20;
  const auto exec = state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
  for (auto _ : state) benchmark::DoNotOptimize(run_scan(cfg, exec));
  state.SetLabel(exec == Execution::kSerial ? "serial" : "parallel");
  state.SetItemsProcessed(state.iterations() * cfg.grid.points);
}
BENCHMARK(BM_SlabScan)->Args({0, 200})->Args({1, 200})->Unit(benchmark::kMillisecond);

void BM_OptimizedMswScan(benchmark::State& state) {
  ScanConfig cfg = ScanConfig::defaults(Scenario::kMsw);
  cfg.grid.points = 25;
  cfg.synthesis = Synthesis::kOptimized;
  const auto exec = state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
  for (auto _ : state) benchmark::DoNotOptimize(run_scan(cfg, exec));
  state.SetLabel(exec == Execution::kSerial ? "serial" : "parallel");
}
BENCHMARK(BM_OptimizedMswScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OptimizerRestarts(benchmark::State& state) {
  FidelityProblem pr;
  // a complex target the real ansatz cannot reach, so every restart runs
  pr.target = embed(GateOp::rz(1.0, 0)) * embed(GateOp::rz(0.7, 1));
  pr.restarts = static_cast<int>(state.range(1));
  const auto exec = state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
  for (auto _ : state) benchmark::DoNotOptimize(optimize(pr, 0, exec));
  state.SetLabel(exec == Execution::kSerial ? "serial" : "parallel");
  state.SetItemsProcessed(state.iterations() * pr.restarts);
}
BENCHMARK(BM_OptimizerRestarts)->Args({0, 64})->Args({1, 64})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
