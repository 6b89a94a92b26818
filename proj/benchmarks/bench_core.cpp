#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "teflow/entropy.hpp"
#include "teflow/surrogate.hpp"

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

void BM_TransferEntropy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto x = noise(n, 1), y = noise(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(teflow::transfer_entropy(x, y, k, 2));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_TransferEntropy)->Args({500, 2})->Args({500, 3})->Args({5000, 2})->Args({500, 5});

// One window of the reference protocol: every ordered pair of N series.
void BM_TeMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<double>> series;
  for (std::size_t s = 0; s < n; ++s) series.push_back(noise(499, s));
  std::vector<teflow::PairSequences> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j, series[i], series[j]});
  for (auto _ : state) benchmark::DoNotOptimize(teflow::te_matrix(n, pairs, 2, 2));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * (n - 1)));
}
BENCHMARK(BM_TeMatrix)->Arg(20)->Arg(97)->Unit(benchmark::kMillisecond);

void BM_PhaseRandomize(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)), 3);
  std::mt19937_64 rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(teflow::phase_randomize(x, rng));
}
BENCHMARK(BM_PhaseRandomize)->Arg(500)->Arg(1024)->Arg(4000);

}  // namespace

BENCHMARK_MAIN();
