#include <benchmark/benchmark.h>

#include "tailcond/pickands.hpp"

using namespace tailcond;

namespace {

MaximaSample uniform_sample(std::size_t rows, std::size_t cols) {
  RandomStream rng(7);
  MaximaSample s(cols, unconditional_norming(1, MaximaScale::FirstOrder));
  std::vector<double> row(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (double& v : row) v = rng.uniform();
    s.append(row);
  }
  return s;
}

void BM_EstimatePickands(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto sample = uniform_sample(100, d);
  const auto grid = SimplexGrid::default_for(d);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_pickands(sample, grid));
  state.counters["grid_points"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_EstimatePickands)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

void BM_NullStatistics(benchmark::State& state) {
  const auto grid = SimplexGrid::default_for(3);
  for (auto _ : state) benchmark::DoNotOptimize(null_statistics(3, 100, 50, kDefaultSeed, grid, 1));
}
BENCHMARK(BM_NullStatistics)->Unit(benchmark::kMillisecond);

}  // namespace
