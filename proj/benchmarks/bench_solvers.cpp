#include "sbfe/determination.hpp"
#include "sbfe/expected_cost.hpp"
#include "sbfe/generators.hpp"
#include "sbfe/heuristics.hpp"
#include "sbfe/optimal.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace sbfe;

void BM_OptAdaptiveTribes(benchmark::State& state) {
  const auto inst = gen_tribes(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(opt_adaptive(inst).value);
}
BENCHMARK(BM_OptAdaptiveTribes)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_OptNonadaptiveTribes(benchmark::State& state) {
  const auto inst = gen_tribes(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(opt_nonadaptive(inst).value);
}
BENCHMARK(BM_OptNonadaptiveTribes)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_OptNonadaptiveAddress(benchmark::State& state) {
  const auto inst = gen_address(static_cast<int>(state.range(0)), Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(opt_nonadaptive(inst).value);
}
BENCHMARK(BM_OptNonadaptiveAddress)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_UndeterminedTable(benchmark::State& state) {
  const auto inst = gen_binary_tree(static_cast<int>(state.range(0)), Rational(1, 4)).instance;
  for (auto _ : state) benchmark::DoNotOptimize(undetermined_prob_table(inst));
}
BENCHMARK(BM_UndeterminedTable)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SubcubeTable(benchmark::State& state) {
  const auto inst = gen_tribes(3, static_cast<int>(state.range(0)));
  const auto table = to_truth_table(inst.formula());
  for (auto _ : state) benchmark::DoNotOptimize(SubcubeTable(table));
}
BENCHMARK(BM_SubcubeTable)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ExpectedCostExact(benchmark::State& state) {
  const auto inst = gen_tribes(4, 4);
  const Strategy s = round_robin(inst);
  for (auto _ : state) benchmark::DoNotOptimize(expected_cost_exact(inst, s));
}
BENCHMARK(BM_ExpectedCostExact)->Unit(benchmark::kMillisecond);

void BM_ExpectedCostMonteCarlo(benchmark::State& state) {
  const auto inst = gen_ucap(8, 4);
  const Strategy s = boros_unluyurt(inst);
  for (auto _ : state) benchmark::DoNotOptimize(expected_cost_mc(inst, s, 10000, 7).mean);
}
BENCHMARK(BM_ExpectedCostMonteCarlo)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
