#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tailcond/error.hpp"
#include "tailcond/maxima.hpp"
#include "tailcond/pickands.hpp"
#include "tailcond/statistics.hpp"

using namespace tailcond;

namespace {

SampleMatrix matrix(std::size_t cols, std::vector<double> data) {
  const std::size_t rows = data.size() / cols;
  return {CopulaModel::archimedean(Generator::gumbel(1.0), cols), 0, rows, cols, std::move(data)};
}

}  // namespace

TEST_CASE("unconditional normalisation") {
  const auto single = componentwise_max_unconditional(matrix(2, {0.5, 0.75}));
  CHECK(single == std::vector<double>{-0.5, -0.25});

  // All entries 1 - 1/n: the first-order scale gives -1, the literal scale -1/n^2.
  const std::size_t n = 8;
  std::vector<double> data(n * 2, 1.0 - 1.0 / n);
  const auto first = componentwise_max_unconditional(matrix(2, data));
  CHECK(first[0] == doctest::Approx(-1.0).epsilon(1e-15));
  const auto literal = componentwise_max_unconditional(matrix(2, data), MaximaScale::Literal);
  CHECK(literal[1] == doctest::Approx(-1.0 / (n * n)).epsilon(1e-15));

  CHECK_THROWS_AS(componentwise_max_unconditional(matrix(2, {})), InvalidParameter);
  CHECK(parse_maxima_scale("literal") == MaximaScale::Literal);
  CHECK_THROWS_AS(parse_maxima_scale("affine"), InvalidParameter);
}

TEST_CASE("unconditional maxima of independent uniforms are negative exponential") {
  const auto m = CopulaModel::archimedean(Generator::gumbel(1.0), 2);
  FrailtySampler sampler(m);
  const std::size_t n = 10000, reps = 500;
  std::vector<double> first, second;
  for (std::size_t r = 0; r < reps; ++r) {
    RunningMax running(2);
    sampler.generate(n, derive_seed(3, {r}), [&](std::size_t, std::span<const double> row) { running.update(row); });
    const auto x = normalize_unconditional(running.values(), n, MaximaScale::FirstOrder);
    CHECK(x[0] <= 0.0);
    first.push_back(x[0]);
    second.push_back(x[1]);
  }
  auto limit = [](double x) { return x >= 0.0 ? 1.0 : std::exp(x); };
  CHECK(ks_distance(first, limit) < 0.08);
  CHECK(ks_distance(second, limit) < 0.08);
  CHECK(std::abs(kendall_tau(first, second)) <= 0.08);
}

TEST_CASE("running maxima never decrease") {
  RunningMax running(3);
  const std::vector<std::vector<double>> rows{{0.2, 0.9, 0.1}, {0.5, 0.3, 0.4}, {0.1, 0.95, 0.3}};
  std::vector<double> previous(3, -1.0);
  for (const auto& row : rows) {
    running.update(row);
    for (std::size_t c = 0; c < 3; ++c) {
      CHECK(running.values()[c] >= previous[c]);
      previous[c] = running.values()[c];
    }
  }
  CHECK(running.count() == 3);
  CHECK(previous == std::vector<double>{0.5, 0.95, 0.4});
}

TEST_CASE("conditional maxima") {
  SliceSample slice;
  slice.cols = 3;
  slice.data = {0.95, 0.95, 0.95};
  slice.requested_k = slice.achieved_k = 1;
  NormingConstants nc{1.0, 0.5, 1, 0.99, 0};
  for (double v : componentwise_max_conditional(slice, nc)) CHECK(v == doctest::Approx(1.9).epsilon(1e-15));

  slice.requested_k = 2;
  CHECK_THROWS_AS(componentwise_max_conditional(slice, nc), ShortfallError);

  // Order of rows does not matter.
  SliceSample a;
  a.cols = 2;
  a.data = {0.3, 0.8, 0.9, 0.2, 0.5, 0.5};
  a.requested_k = a.achieved_k = 3;
  SliceSample b = a;
  b.data = {0.5, 0.5, 0.3, 0.8, 0.9, 0.2};
  CHECK(componentwise_max_conditional(a, nc) == componentwise_max_conditional(b, nc));
}

TEST_CASE("conditional norming is shared across coordinates") {
  const auto m = CopulaModel::archimedean(Generator::gumbel(3.0), 3);
  const auto nc = norming_constants(m, 0.99, 2, 1000);
  SliceSample slice = sample_window_conditional(m, 2, 0.99, 0.0005, 1000, 21);
  const auto maxima = componentwise_max_conditional(slice, nc);
  REQUIRE(maxima.size() == 2);
  for (std::size_t s = 0; s < 2; ++s) {
    double raw = 0.0;
    for (std::size_t r = 0; r < slice.achieved_k; ++r) raw = std::max(raw, slice.row(r)[s]);
    CHECK(maxima[s] == raw / (nc.c * nc.a_n));
    CHECK(maxima[s] > 0.0);
    CHECK(std::isfinite(maxima[s]));
  }
  const auto norming = conditional_norming(nc);
  CHECK(norming.kind == NormingKind::Conditional);
  CHECK(norming.c == nc.c);
  CHECK(norming.a == nc.a_n);
  CHECK(norming.block == 1000);
}

TEST_CASE("conditional maxima look tail independent") {
  const auto m = CopulaModel::archimedean(Generator::gumbel(3.0), 3);
  const auto nc = norming_constants(m, 0.99, 2, 1000);
  MaximaSample sample(2, conditional_norming(nc));
  for (std::size_t i = 0; i < 100; ++i) {
    sample.append(componentwise_max_conditional(sample_window_conditional(m, 2, 0.99, 0.0005, 1000, 300 + i), nc));
  }
  const auto grid = SimplexGrid::default_for(2);
  const auto a = estimate_pickands(sample, grid);
  for (std::size_t g = 1; g + 1 < grid.size(); ++g) CHECK(a[g] > 0.9);
}

TEST_CASE("maxima sample bookkeeping") {
  MaximaSample s(3, unconditional_norming(100, MaximaScale::FirstOrder));
  s.append(std::vector<double>{-1.0, -2.0, -3.0});
  s.append(std::vector<double>{-4.0, -5.0, -6.0});
  CHECK(s.rows() == 2);
  CHECK(s(1, 2) == -6.0);
  CHECK(s.column(1) == std::vector<double>{-2.0, -5.0});
  const std::vector<std::size_t> pair{0, 2};
  const auto p = s.project(pair);
  CHECK(p.cols() == 2);
  CHECK(p.data() == std::vector<double>{-1.0, -3.0, -4.0, -6.0});
  CHECK_THROWS_AS(s.append(std::vector<double>{1.0}), DimensionError);
  CHECK(s.norming().block == 100);
}
