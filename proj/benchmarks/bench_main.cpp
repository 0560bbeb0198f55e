#include <benchmark/benchmark.h>

#include "aoi/adversaries.hpp"
#include "aoi/estimator.hpp"
#include "aoi/oracle.hpp"
#include "aoi/policies.hpp"

namespace {

// Megasection geometry x2 = 4, x3 = 2 scaled by T1; T = 9*T1 + 4.
aoi::InstanceParams instance_for(int T1) { return {T1 + (2 * T1 + 1) * 4, T1, 2 * T1}; }

void BM_Simulate(benchmark::State& state) {
  const auto p = instance_for(static_cast<int>(state.range(0)));
  const auto s = aoi::build_check_policy(p);
  const auto sigma = aoi::bernoulli_sequence({aoi::make_rational(1, 2), 1}, p.T);
  for (auto _ : state) benchmark::DoNotOptimize(aoi::total_age(s.actions(), sigma));
  state.SetItemsProcessed(state.iterations() * p.T);
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(10)->Arg(100);

void BM_WorstSequence(benchmark::State& state) {
  const auto p = instance_for(static_cast<int>(state.range(0)));
  const auto s = aoi::build_check_policy(p);
  for (auto _ : state) benchmark::DoNotOptimize(aoi::worst_sequence(s, p));
}
BENCHMARK(BM_WorstSequence)->Arg(1)->Arg(10);

void BM_OfflineOptimal(benchmark::State& state) {
  const auto p = instance_for(static_cast<int>(state.range(0)));
  const auto sigma = aoi::bernoulli_sequence({aoi::make_rational(1, 2), 2}, p.T);
  for (auto _ : state) benchmark::DoNotOptimize(aoi::offline_optimal(sigma, p));
}
BENCHMARK(BM_OfflineOptimal)->Arg(1)->Arg(2)->Arg(4);

// Argument is T for a fixed (T1, T2) = (1, 2).
void BM_OptimalTotalsSweep(benchmark::State& state) {
  const aoi::InstanceParams p{static_cast<int>(state.range(0)), 1, 2};
  for (auto _ : state) benchmark::DoNotOptimize(aoi::offline_optimal_totals(p, true, 20));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << p.T));
}
BENCHMARK(BM_OptimalTotalsSweep)->Arg(10)->Arg(13)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ExactExpectedAge(benchmark::State& state) {
  const auto p = instance_for(static_cast<int>(state.range(0)));
  const auto s = aoi::build_check_policy(p);
  for (auto _ : state) benchmark::DoNotOptimize(aoi::exact_expected_age(s, p));
}
BENCHMARK(BM_ExactExpectedAge)->Arg(1)->Arg(10);

void BM_MonteCarlo(benchmark::State& state) {
  const auto p = instance_for(10);
  const auto s = aoi::build_check_policy(p);
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        aoi::mc_expected_age(s, p, {aoi::make_rational(1, 2), 3}, 100000, workers));
  }
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
