#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "uavsim/engine.h"
#include "uavsim/estimation.h"
#include "uavsim/metrics.h"
#include "uavsim/scenario.h"

namespace {

using uavsim::ScenarioConfig;

ScenarioConfig RingScenario(int num_uavs) {
  ScenarioConfig config;
  config.num_uavs = num_uavs;
  return config;
}

void BM_Step(benchmark::State& state) {
  ScenarioConfig config = RingScenario(static_cast<int>(state.range(0)));
  uavsim::World world = uavsim::InitialWorld(config);
  for (auto _ : state) {
    uavsim::StepResult result = uavsim::Step(world, config);
    benchmark::DoNotOptimize(result.record);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Step)->Arg(1)->Arg(3)->Arg(10)->Arg(30);

void BM_StepUkf(benchmark::State& state) {
  ScenarioConfig config = RingScenario(static_cast<int>(state.range(0)));
  config.estimator = uavsim::UkfParams{};
  uavsim::World world = uavsim::Step(uavsim::InitialWorld(config), config).world;
  for (auto _ : state) {
    uavsim::StepResult result = uavsim::Step(world, config);
    benchmark::DoNotOptimize(result.record);
  }
}
BENCHMARK(BM_StepUkf)->Arg(3)->Arg(10);

void BM_ThreeUavRun(benchmark::State& state) {
  ScenarioConfig config = RingScenario(3);
  for (auto _ : state) {
    uavsim::RunLog log = uavsim::Run(config);
    benchmark::DoNotOptimize(log.records.back());
  }
}
BENCHMARK(BM_ThreeUavRun)->Unit(benchmark::kMillisecond);

void BM_ArcUnion(benchmark::State& state) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> center(0.0, 360.0);
  std::vector<uavsim::CoverageArc> arcs(state.range(0));
  for (auto& arc : arcs) arc = {center(rng), 40.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(uavsim::ArcUnionMeasure(arcs));
  }
}
BENCHMARK(BM_ArcUnion)->Arg(3)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
