#include <benchmark/benchmark.h>

#include <random>

#include "thermagrid/matching.hpp"

using namespace thermagrid;

static void BM_MinCostAssignment(benchmark::State& state) {
  const std::size_t rows = static_cast<std::size_t>(state.range(0));
  const std::size_t cols = rows * 64;  // default prune cap shape
  std::mt19937_64 rng(7);
  CostMatrix m(rows, cols);
  for (double& e : m.entries) {
    e = static_cast<double>(rng() % 1000) * 0.125;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_cost_assignment(m));
  }
}
BENCHMARK(BM_MinCostAssignment)->Arg(5)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
