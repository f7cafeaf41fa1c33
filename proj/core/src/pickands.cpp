#include "tailcond/pickands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "tailcond/error.hpp"
#include "tailcond/parallel.hpp"
#include "tailcond/statistics.hpp"

namespace tailcond {

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  double acc = 1.0;
  for (std::size_t i = 1; i <= k; ++i) acc = acc * static_cast<double>(n - k + i) / static_cast<double>(i);
  return static_cast<std::size_t>(std::llround(acc));
}

void compositions(std::size_t parts_left, std::size_t remaining, std::size_t m, std::vector<std::size_t>& current,
                  std::vector<double>& out) {
  if (parts_left == 1) {
    current.push_back(remaining);
    for (std::size_t v : current) out.push_back(static_cast<double>(v) / static_cast<double>(m));
    current.pop_back();
    return;
  }
  for (std::size_t v = 0; v <= remaining; ++v) {
    current.push_back(v);
    compositions(parts_left - 1, remaining - v, m, current, out);
    current.pop_back();
  }
}

}  // namespace

double SimplexGrid::default_mesh(std::size_t dim) {
  switch (dim) {
    case 2: return 0.01;
    case 3: return 0.025;
    case 4: return 0.05;
    case 5: return 0.1;
    default: break;
  }
  std::size_t m = 10;
  while (m > 1 && binomial(m + dim - 1, dim - 1) > 20000) --m;
  return 1.0 / static_cast<double>(m);
}

SimplexGrid SimplexGrid::regular(std::size_t dim, double mesh) {
  if (dim < 2) throw InvalidParameter("SimplexGrid: dimension must be at least 2");
  if (!(mesh > 0.0 && mesh <= 1.0)) throw InvalidParameter("SimplexGrid: mesh must lie in (0,1]");
  const auto m = static_cast<std::size_t>(std::llround(1.0 / mesh));
  std::vector<double> points;
  points.reserve(binomial(m + dim - 1, dim - 1) * dim);
  std::vector<std::size_t> current;
  compositions(dim, m, m, current, points);
  return {dim, 1.0 / static_cast<double>(m), std::move(points)};
}

SimplexGrid SimplexGrid::default_for(std::size_t dim) { return regular(dim, default_mesh(dim)); }

SimplexGrid SimplexGrid::from_points(std::size_t dim, std::vector<double> flat, double mesh) {
  if (dim < 2) throw InvalidParameter("SimplexGrid: dimension must be at least 2");
  if (flat.empty() || flat.size() % dim != 0) throw DimensionError("SimplexGrid: point buffer not a multiple of d");
  for (std::size_t i = 0; i < flat.size(); i += dim) {
    double sum = 0.0;
    for (std::size_t s = 0; s < dim; ++s) {
      if (!(flat[i + s] >= 0.0)) throw DomainError("SimplexGrid: negative weight");
      sum += flat[i + s];
    }
    if (std::abs(sum - 1.0) > 1e-12) throw DomainError("SimplexGrid: weights must sum to one");
  }
  return {dim, mesh, std::move(flat)};
}

std::vector<double> estimate_pickands(std::span<const double> data, std::size_t rows, std::size_t cols,
                                      const SimplexGrid& grid) {
  if (cols < 2) throw InvalidParameter("estimate_pickands: need at least two coordinates");
  if (rows < 20) throw InvalidParameter("estimate_pickands: need at least 20 repetitions");
  if (data.size() != rows * cols) throw DimensionError("estimate_pickands: buffer size mismatch");
  if (grid.dim() != cols) throw DimensionError("estimate_pickands: grid dimension differs from the sample");

  // log of unit-exponential scores, column-major for the inner loop.
  const double denom = static_cast<double>(rows) + 1.0;
  std::vector<double> log_score(rows * cols);
  std::vector<double> mean_log(cols, 0.0);
  std::vector<double> column(rows);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) column[r] = data[r * cols + c];
    const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    if (*lo == *hi) {
      std::ostringstream msg;
      msg << "estimate_pickands: coordinate " << c << " is constant across repetitions";
      throw DegenerateError(msg.str());
    }
    const auto ranks = ordinal_ranks(column);
    double acc = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double value = std::log(-std::log(static_cast<double>(ranks[r]) / denom));
      log_score[c * rows + r] = value;
      acc += value;
    }
    mean_log[c] = acc / static_cast<double>(rows);
  }

  std::vector<double> estimate(grid.size());
  std::vector<double> log_weight(cols);
  std::vector<double> row_min(rows);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto t = grid.point(g);
    double largest = 0.0;
    std::size_t support = 0;
    double centring = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      largest = std::max(largest, t[c]);
      log_weight[c] = t[c] > 0.0 ? std::log(t[c]) : std::numeric_limits<double>::infinity();
      if (t[c] > 0.0) ++support;
      centring += t[c] * mean_log[c];
    }
    if (support == 1) {
      estimate[g] = 1.0;
      continue;
    }
    std::fill(row_min.begin(), row_min.end(), std::numeric_limits<double>::infinity());
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(t[c] > 0.0)) continue;
      const double* col = log_score.data() + c * rows;
      for (std::size_t r = 0; r < rows; ++r) row_min[r] = std::min(row_min[r], col[r] - log_weight[c]);
    }
    double acc = 0.0;
    for (double v : row_min) acc += v;
    const double a = std::exp(centring - acc / static_cast<double>(rows));
    estimate[g] = std::clamp(a, largest, 1.0);
  }
  return estimate;
}

std::vector<double> estimate_pickands(const MaximaSample& maxima, const SimplexGrid& grid) {
  return estimate_pickands(maxima.data(), maxima.rows(), maxima.cols(), grid);
}

double test_statistic(std::span<const double> a_hat, std::size_t sample_size) {
  if (a_hat.empty()) throw InvalidParameter("test_statistic: empty grid");
  double worst = 0.0;
  for (double a : a_hat) worst = std::max(worst, std::abs(a - 1.0));
  return std::sqrt(static_cast<double>(sample_size)) * worst;
}

std::string CriticalSource::describe() const {
  if (kind == CriticalSourceKind::BuiltIn) return "builtin";
  std::ostringstream out;
  out << "montecarlo(reps=" << reps << ",seed=" << seed << ")";
  return out.str();
}

CriticalSource parse_critical_source(std::string_view name, std::size_t reps, std::uint64_t seed) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "builtin" || lower == "built-in" || lower == "table") return CriticalSource::builtin();
  if (lower == "montecarlo" || lower == "monte-carlo" || lower == "mc") return CriticalSource::monte_carlo(reps, seed);
  throw InvalidParameter("unknown critical value source '" + std::string(name) + "'");
}

std::optional<double> builtin_critical_value(std::size_t dim, double alpha) {
  if (std::abs(alpha - 0.05) > 1e-12) return std::nullopt;
  if (dim == 2) return 0.960;
  if (dim == 3) return 1.300;
  return std::nullopt;
}

std::vector<double> null_statistics(std::size_t dim, std::size_t sample_size, std::size_t reps,
                                    std::uint64_t seed, const SimplexGrid& grid, std::size_t threads) {
  if (reps == 0) throw InvalidParameter("null_statistics: need at least one replicate");
  std::vector<double> stats(reps);
  parallel_for(reps, resolve_threads(threads), [&](std::size_t rep) {
    RandomStream rng = RandomStream::derive(seed, {0x6e756c6cULL, dim, sample_size, rep});
    std::vector<double> data(sample_size * dim);
    for (double& v : data) v = rng.uniform();
    stats[rep] = test_statistic(estimate_pickands(data, sample_size, dim, grid), sample_size);
  });
  return stats;
}

double critical_value(std::size_t dim, double alpha, const CriticalSource& source, std::size_t sample_size,
                      const SimplexGrid& grid, std::size_t threads) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("critical_value: alpha must lie in (0,1)");
  if (source.kind == CriticalSourceKind::BuiltIn) {
    if (auto value = builtin_critical_value(dim, alpha)) return *value;
    std::ostringstream msg;
    msg << "no built-in critical value for d=" << dim << ", alpha=" << alpha << "; use the Monte Carlo source";
    throw UnsupportedError(msg.str());
  }
  const auto stats = null_statistics(dim, sample_size, source.reps, source.seed, grid, threads);
  return empirical_quantile(stats, 1.0 - alpha);
}

double critical_value(std::size_t dim, double alpha, const CriticalSource& source, std::size_t sample_size,
                      std::size_t threads) {
  return critical_value(dim, alpha, source, sample_size, SimplexGrid::default_for(dim), threads);
}

TailTestResult run_test(const MaximaSample& maxima, double alpha, const CriticalSource& source,
                        double critical, const SimplexGrid& grid) {
  TailTestResult result;
  result.statistic = test_statistic(estimate_pickands(maxima, grid), maxima.rows());
  result.critical_value = critical;
  result.alpha = alpha;
  result.reject = result.statistic > critical;
  result.sample_size = maxima.rows();
  result.dim = maxima.cols();
  result.grid_mesh = grid.mesh();
  result.grid_points = grid.size();
  result.source = source;
  return result;
}

TailTestResult run_test(const MaximaSample& maxima, double alpha, const CriticalSource& source,
                        std::size_t threads) {
  const auto grid = SimplexGrid::default_for(maxima.cols());
  const double critical = critical_value(maxima.cols(), alpha, source, maxima.rows(), grid, threads);
  return run_test(maxima, alpha, source, critical, grid);
}

}  // namespace tailcond
