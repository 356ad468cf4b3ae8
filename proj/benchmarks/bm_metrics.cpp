#include <benchmark/benchmark.h>

#include "matteforge/metrics.hpp"
#include "matteforge/trimap.hpp"

namespace {

using namespace matteforge;

AlphaMatte ramp(int n, float offset) {
  std::vector<float> v(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::min(1.0f, (i % n) / float(n) + offset);
  return AlphaMatte(n, n, std::move(v));
}

void BM_Evaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = ramp(n, 0.0f);
  const auto b = ramp(n, 0.1f);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(a, b));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Evaluate)->Arg(1024);

void BM_Trimap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = ramp(n, 0.0f);
  for (auto _ : state) benchmark::DoNotOptimize(generate_trimap(a, {}));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Trimap)->Arg(1024);

}  // namespace
