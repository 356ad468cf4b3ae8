#include <benchmark/benchmark.h>

#include <random>

#include "matteforge/operators.hpp"
#include "matteforge/resample.hpp"

namespace {

using namespace matteforge;

FgEntry make_fg(std::mt19937_64& rng, int w, int h) {
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::vector<float> img(static_cast<std::size_t>(w) * h * 3), a(static_cast<std::size_t>(w) * h);
  for (auto& v : img) v = u(rng);
  for (auto& v : a) v = u(rng);
  return FgEntry("fg", ImageBuffer(w, h, std::move(img)), AlphaMatte(w, h, std::move(a)));
}

void BM_Comp(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int n = static_cast<int>(state.range(0));
  const auto fg = make_fg(rng, n, n);
  const ImageBuffer bg(n, n, 0.5f);
  for (auto _ : state) benchmark::DoNotOptimize(comp(fg.image, fg.alpha, bg));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Comp)->Arg(512);

void BM_Ncf(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int n = static_cast<int>(state.range(0));
  const auto a = make_fg(rng, n, n);
  const auto b = make_fg(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(ncf(a, b));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Ncf)->Arg(512);

void BM_Rcf(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const int n = static_cast<int>(state.range(0));
  const auto a = make_fg(rng, n, n);
  const auto b = make_fg(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(rcf(a, b));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Rcf)->Arg(512);

void BM_CoverFit(benchmark::State& state) {
  const ImageBuffer bg(1920, 1080, 0.3f);
  for (auto _ : state) benchmark::DoNotOptimize(cover_fit(bg, {512, 512}));
}
BENCHMARK(BM_CoverFit);

}  // namespace
