#include <benchmark/benchmark.h>

#include "cachewave/mc.hpp"

namespace {

void BM_EstimateStp(benchmark::State& state) {
  const auto m = cachewave::kAllMethods[state.range(0)];
  cachewave::McConfig cfg;
  cfg.n_trials = 1'000'000;
  cfg.mode = state.range(1) ? cachewave::McMode::formula_faithful
                            : cachewave::McMode::physical;
  state.SetLabel(std::string(cachewave::short_name(m)) + "/" +
                 std::string(cachewave::to_string(cfg.mode)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cachewave::estimate_stp(
        cachewave::ChannelParams{1.0, 0.1, 10.0}, cachewave::PowerSplit{0.6},
        cachewave::RateConfig{1.0, 1.0, 0.8, 1.2}, m, cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_trials);
}
BENCHMARK(BM_EstimateStp)
    ->ArgsProduct({{0, 1, 2, 3}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
