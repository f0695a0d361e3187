#include <benchmark/benchmark.h>

#include <memory>

#include "thermagrid/hotspot.hpp"
#include "thermagrid/meshing.hpp"

using namespace thermagrid;

namespace {

std::vector<HeatSource> bench_sources(int count) {
  const Box3 box({0, 0, 0}, 40, 20, 20);
  return generate_sources({count, 0.9, 1.1, 42}, box);
}

}  // namespace

static void BM_Contribution(benchmark::State& state) {
  double d = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(contribution(1.0, d));
    d += 1e-9;
  }
}
BENCHMARK(BM_Contribution);

static void BM_CumulativePower(benchmark::State& state) {
  const auto sources = bench_sources(static_cast<int>(state.range(0)));
  const Point3 target{20, 10, 10};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cumulative_power(target, sources));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CumulativePower)->Arg(5)->Arg(50)->Arg(500);

static void BM_CoarseGrid(benchmark::State& state) {
  const Box3 box({0, 0, 0}, 40, 20, 20);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(coarse_grid(box, {n, n, n}));
  }
}
BENCHMARK(BM_CoarseGrid)->Arg(20)->Arg(50)->Arg(100);

static void BM_FieldEvaluation(benchmark::State& state) {
  const Box3 box({0, 0, 0}, 40, 20, 20);
  const auto sources = bench_sources(50);
  MeshSpec spec;
  const int n = static_cast<int>(state.range(0));
  spec.coarse_divisions = {n, n, n};
  spec.fine_resolution = 6;
  auto probes = std::make_shared<const ProbeSet>(assemble_probes(sources, spec, box));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_field(probes, sources));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(probes->size() * sources.size()));
}
BENCHMARK(BM_FieldEvaluation)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);
