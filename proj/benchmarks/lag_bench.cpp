#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ifrlag/lag.hpp"

namespace {

std::vector<double> wave(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = 1000.0 + 800.0 * std::sin(0.05 * static_cast<double>(j));
  return v;
}

void BM_ShiftTruncated(benchmark::State& state) {
  const std::vector<double> in = wave(static_cast<std::size_t>(state.range(0)));
  const auto law = ifrlag::LagDistribution::uniform(4, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(ifrlag::shift_expectation(in, law));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ShiftTruncated)->Args({250, 12})->Args({250, 50})->Args({2000, 50});

void BM_ShiftElongated(benchmark::State& state) {
  const std::vector<double> in = wave(static_cast<std::size_t>(state.range(0)));
  const auto law = ifrlag::LagDistribution::uniform(4, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(ifrlag::shift_expectation_elongated(in, law));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ShiftElongated)->Args({250, 12})->Args({250, 50})->Args({2000, 50});

}  // namespace
