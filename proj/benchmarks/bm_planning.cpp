#include <benchmark/benchmark.h>

#include "matteforge/analysis.hpp"
#include "matteforge/schedulers.hpp"

namespace {

using namespace matteforge;

PlanRequest request(std::size_t m) {
  PlanRequest r;
  r.fg_pool_size = 431;
  r.bg_pool_size = 1000;
  r.count = m;
  r.seed = 7;
  return r;
}

void BM_PlanGca(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(plan_gca(request(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PlanGca)->Arg(43100);

void BM_PlanQuadruplet(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(plan_quadruplet(request(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PlanQuadruplet)->Arg(43100);

void BM_Analyze(benchmark::State& state) {
  const auto plan = plan_gca(request(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(plan));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Analyze)->Arg(43100);

}  // namespace
