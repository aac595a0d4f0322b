#include <benchmark/benchmark.h>

#include "cachewave/opt.hpp"

namespace {

void BM_GridSearch(benchmark::State& state) {
  const auto m = cachewave::kAllMethods[state.range(0)];
  const auto space = cachewave::SearchSpace::full(1.0, 1.0, state.range(1));
  state.SetLabel(std::string(cachewave::short_name(m)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cachewave::optimize_grid(
        cachewave::ChannelParams{1.0, 0.1, 10.0}, m, 1.0, 1.0, space, {}, 1));
  }
}
BENCHMARK(BM_GridSearch)
    ->ArgsProduct({{0, 1, 2, 3}, {51, 101}})
    ->Unit(benchmark::kMillisecond);

void BM_Genetic(benchmark::State& state) {
  const auto space = cachewave::SearchSpace::full(1.0, 1.0, 101);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cachewave::optimize_genetic(
        cachewave::ChannelParams{1.0, 0.1, 10.0},
        cachewave::Method::M1_joint_sic, 1.0, 1.0, space));
  }
}
BENCHMARK(BM_Genetic)->Unit(benchmark::kMillisecond);

}  // namespace
