#include <benchmark/benchmark.h>

#include "cachewave/stp.hpp"

namespace {

const cachewave::ChannelParams kChannel{1.0, 0.1, 10.0};
const cachewave::RateConfig kRates{1.0, 1.0, 0.8, 1.2};

void BM_Factor(benchmark::State& state) {
  const auto id = cachewave::kAllFactors[state.range(0)];
  state.SetLabel(std::string(cachewave::to_string(id)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cachewave::factor_value(id, kChannel, cachewave::PowerSplit{0.6}, kRates));
  }
}
BENCHMARK(BM_Factor)->DenseRange(0, cachewave::kAllFactors.size() - 1);

void BM_Stp(benchmark::State& state) {
  const auto m = cachewave::kAllMethods[state.range(0)];
  const auto mode = state.range(1) ? cachewave::GammaMode::exact
                                   : cachewave::GammaMode::jensen;
  state.SetLabel(std::string(cachewave::short_name(m)) +
                 (state.range(1) ? "/exact" : "/jensen"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cachewave::evaluate_stp(
        m, kChannel, cachewave::PowerSplit{0.6}, kRates, mode));
  }
}
BENCHMARK(BM_Stp)->ArgsProduct({{0, 1, 2, 3}, {0, 1}});

}  // namespace
