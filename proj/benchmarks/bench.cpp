#include <benchmark/benchmark.h>

#include "quantreactor/controller.hpp"
#include "quantreactor/graph.hpp"
#include "quantreactor/simulator.hpp"

using namespace quantreactor;

namespace {

const ModelParams& params() {
  static const ModelParams p(0.74, 0.59, 16.4, 30.0, 11.0, 30.0);
  return p;
}

const RegionSet& regions() {
  static const RegionSet rs = make_equidistant(4.0, 4, RegionKind::Perfect);
  return rs;
}

const DilutionSchedule& schedule() {
  static const DilutionSchedule sched{{0.19, 0.29, 0.40, 0.47}};
  return sched;
}

void BM_VectorField(benchmark::State& state) {
  const State xi{5.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(vector_field(params(), xi, 0.3));
  }
}
BENCHMARK(BM_VectorField);

void BM_ProxyRate(benchmark::State& state) {
  const State xi{5.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(output_proxy_rate(params(), xi, 0.3));
  }
}
BENCHMARK(BM_ProxyRate);

void BM_SubstrateRoots(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(substrate_roots(params(), 0.47));
  }
}
BENCHMARK(BM_SubstrateRoots);

void BM_CheckConditions(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_conditions(params(), regions(), schedule()));
  }
}
BENCHMARK(BM_CheckConditions);

void BM_Synthesize(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize(params(), regions(), 0.47, 0.01));
  }
}
BENCHMARK(BM_Synthesize);

void BM_MinRegionRange(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_region_range(params(), 4.0));
  }
}
BENCHMARK(BM_MinRegionRange);

void BM_SimulateRandomTenDays(benchmark::State& state) {
  SimConfig cfg;
  cfg.mode = SimMode::DiscreteRandom;
  cfg.t_max = 10.0;
  cfg.seed = 1;
  const RegionSet rs = make_equidistant(4.0, 4, RegionKind::Uncertain, 0.10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate(params(), rs, schedule(), State{25.0, 0.05}, cfg));
  }
}
BENCHMARK(BM_SimulateRandomTenDays)->Unit(benchmark::kMillisecond);

void BM_SimulateEventTenDays(benchmark::State& state) {
  SimConfig cfg;
  cfg.mode = SimMode::PerfectEvent;
  cfg.t_max = 10.0;
  cfg.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate(params(), regions(), schedule(), State{25.0, 0.05}, cfg));
  }
}
BENCHMARK(BM_SimulateEventTenDays)->Unit(benchmark::kMillisecond);

void BM_PredictGraph(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_graph(params(), regions(), schedule()));
  }
}
BENCHMARK(BM_PredictGraph);

}  // namespace

BENCHMARK_MAIN();
