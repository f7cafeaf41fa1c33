#include <benchmark/benchmark.h>

#include <vector>

#include "tailcond/copulas.hpp"

using namespace tailcond;

namespace {

void BM_Cdf(benchmark::State& state) {
  const auto model = CopulaModel::archimedean(Generator::gumbel(3.0), 3);
  const std::vector<double> u{0.9, 0.95, 0.8};
  for (auto _ : state) benchmark::DoNotOptimize(cdf(model, u));
}
BENCHMARK(BM_Cdf);

// Large increments take the closed form, tiny ones the quadrature path.
void BM_ConditionalSurvival(benchmark::State& state) {
  const auto model = CopulaModel::archimedean(Generator::gumbel(3.0), 3);
  const double s = state.range(0) == 0 ? 1e-2 : 1e-7;
  for (auto _ : state) benchmark::DoNotOptimize(conditional_margin_survival(model, 0.99, s));
}
BENCHMARK(BM_ConditionalSurvival)->Arg(0)->Arg(1);

void BM_DoaProbe(benchmark::State& state) {
  const CopulaModel model(Generator::gumbel(2.0), DNorm::logistic(3.0, 3));
  const std::vector<double> x{-1.0, -0.5, -2.0};
  const std::vector<double> grid{1e2, 1e3, 1e4, 1e5, 1e6};
  for (auto _ : state) benchmark::DoNotOptimize(doa_convergence_probe(model, x, grid));
}
BENCHMARK(BM_DoaProbe);

}  // namespace
