// Serial reference kernels against their OpenMP counterparts.

#include <vector>

#include <benchmark/benchmark.h>

#include "mcvi/parallel.hpp"
#include "mcvi/stats/kmeans.hpp"
#include "mcvi/uncertainty.hpp"

using namespace mcvi;

namespace {

const RawDimensionPanel& panel() {
  static const RawDimensionPanel raw = build_raw_panel(generate_fixture(60, 10, 42));
  return raw;
}

const CountryRanking& baseline() {
  static const CountryRanking r =
      rank_countries(aggregate_mcvi(normalize_panel(panel(), NormalizationMethod::PooledRank), WeightVector::equal()));
  return r;
}

Eigen::MatrixXd blobs(Eigen::Index n) {
  SplitMix64 rng(7);
  Eigen::MatrixXd x(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double c = static_cast<double>(i % 4) * 3.0;
    for (Eigen::Index j = 0; j < 3; ++j) x(i, j) = c + rng.normal();
  }
  return x;
}

std::vector<int> labels_of(Eigen::Index n) {
  std::vector<int> l(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) l[static_cast<std::size_t>(i)] = static_cast<int>(i % 4);
  return l;
}

McConfig sims(int threads) {
  McConfig c;
  c.n_sims = 64;
  c.n_threads = threads;
  return c;
}

void BM_MonteCarloSerial(benchmark::State& s) {
  const auto c = sims(1);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::simulate_serial(panel(), baseline(), c));
}

void BM_MonteCarloParallel(benchmark::State& s) {
  const auto c = sims(resolve_threads(0));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::simulate_parallel(panel(), baseline(), c));
}

void BM_SilhouetteSerial(benchmark::State& s) {
  const auto x = blobs(s.range(0));
  const auto l = labels_of(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(stats::kernels::silhouette_values_serial(x, l, 4));
}

void BM_SilhouetteParallel(benchmark::State& s) {
  const auto x = blobs(s.range(0));
  const auto l = labels_of(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(stats::kernels::silhouette_values_parallel(x, l, 4, resolve_threads(0)));
}

void BM_AssignSerial(benchmark::State& s) {
  const auto x = blobs(s.range(0));
  const Eigen::MatrixXd c = x.topRows(4);
  std::vector<int> l;
  for (auto _ : s) benchmark::DoNotOptimize(stats::kernels::assign_serial(x, c, l));
}

void BM_AssignParallel(benchmark::State& s) {
  const auto x = blobs(s.range(0));
  const Eigen::MatrixXd c = x.topRows(4);
  std::vector<int> l;
  for (auto _ : s) benchmark::DoNotOptimize(stats::kernels::assign_parallel(x, c, l, resolve_threads(0)));
}

}  // namespace

BENCHMARK(BM_MonteCarloSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MonteCarloParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SilhouetteSerial)->Arg(200)->Arg(2000)->UseRealTime();
BENCHMARK(BM_SilhouetteParallel)->Arg(200)->Arg(2000)->UseRealTime();
BENCHMARK(BM_AssignSerial)->Arg(2000)->Arg(20000)->UseRealTime();
BENCHMARK(BM_AssignParallel)->Arg(2000)->Arg(20000)->UseRealTime();

BENCHMARK_MAIN();
