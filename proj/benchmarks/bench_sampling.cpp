#include <benchmark/benchmark.h>

#include "tailcond/sampling.hpp"

using namespace tailcond;

namespace {

Generator family(int index) {
  switch (index) {
    case 0: return Generator::gumbel(3.0);
    case 1: return Generator::clayton(2.0);
    default: return Generator::frank(5.0);
  }
}

void BM_FrailtyRows(benchmark::State& state) {
  const FrailtySampler sampler(CopulaModel::archimedean(family(static_cast<int>(state.range(0))), 3));
  const auto n = static_cast<std::size_t>(state.range(1));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    double sink = 0.0;
    sampler.generate(n, seed++, [&](std::size_t, std::span<const double> row) { sink += row[0]; });
    benchmark::DoNotOptimize(sink);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_FrailtyRows)->ArgsProduct({{0, 1, 2}, {20000}})->Unit(benchmark::kMillisecond);

void BM_WindowConditional(benchmark::State& state) {
  const auto model = CopulaModel::archimedean(family(static_cast<int>(state.range(0))), 3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_window_conditional(model, 2, 0.99, 0.0005, 1000, seed++));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 1000));
}
BENCHMARK(BM_WindowConditional)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

}  // namespace
