#include <benchmark/benchmark.h>

#include <cmath>

#include "cachewave/quadrature.hpp"

namespace {

void BM_IntegrateSmooth(benchmark::State& state) {
  const auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(cachewave::integrate(f, 0.0, 10.0, 1e-9));
  }
}
BENCHMARK(BM_IntegrateSmooth);

void BM_IntegrateEndpointSingularity(benchmark::State& state) {
  const auto f = [](double x) { return 1.0 / std::sqrt(x); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(cachewave::integrate(f, 0.0, 1.0, 1e-9));
  }
}
BENCHMARK(BM_IntegrateEndpointSingularity);

}  // namespace
