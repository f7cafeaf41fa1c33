#ifndef TAILCOND_PICKANDS_HPP
#define TAILCOND_PICKANDS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailcond/maxima.hpp"
#include "tailcond/random.hpp"

namespace tailcond {

/// Points of the unit simplex S_d = {t >= 0, sum t = 1}, stored row-major.
class SimplexGrid {
 public:
  /// All points with coordinates in {0, 1/m, ..., 1}, m = round(1/mesh). Vertices included.
  static SimplexGrid regular(std::size_t dim, double mesh);
  /// 0.01 for d=2, 0.025 for d=3, 0.05 for d=4, 0.1 for d=5; coarser beyond to stay under 2e4 points.
  static SimplexGrid default_for(std::size_t dim);
  /// Arbitrary points, validated to lie on the simplex.
  static SimplexGrid from_points(std::size_t dim, std::vector<double> flat, double mesh = 0.0);

  static double default_mesh(std::size_t dim);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] double mesh() const noexcept { return mesh_; }
  [[nodiscard]] std::size_t size() const noexcept { return dim_ == 0 ? 0 : points_.size() / dim_; }
  [[nodiscard]] std::span<const double> point(std::size_t i) const { return {points_.data() + i * dim_, dim_}; }
  [[nodiscard]] const std::vector<double>& points() const noexcept { return points_; }

 private:
  SimplexGrid(std::size_t dim, double mesh, std::vector<double> points)
      : dim_(dim), mesh_(mesh), points_(std::move(points)) {}

  std::size_t dim_;
  double mesh_;
  std::vector<double> points_;
};

/// Rank-based CFG estimator of the Pickands dependence function on the grid.
///
/// Each coordinate is mapped to the unit exponential scale through its empirical df,
/// Y = -log(rank / (N+1)). With xi_r(t) = min_s Y_rs / t_s,
///   log A(t) = -(1/N) sum_r log xi_r(t) + sum_s t_s (1/N) sum_r log Y_rs,
/// which forces A(e_s) = 1; the result is clipped to [max_s t_s, 1].
/// Only ranks enter, so increasing transforms of a coordinate change nothing.
std::vector<double> estimate_pickands(const MaximaSample& maxima, const SimplexGrid& grid);
std::vector<double> estimate_pickands(std::span<const double> data, std::size_t rows, std::size_t cols,
                                      const SimplexGrid& grid);

/// sqrt(N) max_t |A(t) - 1| over the grid.
double test_statistic(std::span<const double> a_hat, std::size_t sample_size);

enum class CriticalSourceKind { BuiltIn, MonteCarlo };

struct CriticalSource {
  CriticalSourceKind kind = CriticalSourceKind::BuiltIn;
  std::size_t reps = 2000;
  std::uint64_t seed = kDefaultSeed;

  static CriticalSource builtin() { return {CriticalSourceKind::BuiltIn, 0, 0}; }
  static CriticalSource monte_carlo(std::size_t reps = 2000, std::uint64_t seed = kDefaultSeed) {
    return {CriticalSourceKind::MonteCarlo, reps, seed};
  }
  [[nodiscard]] std::string describe() const;
};

CriticalSource parse_critical_source(std::string_view name, std::size_t reps, std::uint64_t seed);

/// Embedded 0.95-quantiles of the limiting statistic: d=2 -> 0.960, d=3 -> 1.300.
std::optional<double> builtin_critical_value(std::size_t dim, double alpha);

/// Statistics of `reps` null replicates: N x d independent uniforms (the maxima of an
/// independence copula, as far as ranks are concerned) pushed through the estimator.
std::vector<double> null_statistics(std::size_t dim, std::size_t sample_size, std::size_t reps,
                                    std::uint64_t seed, const SimplexGrid& grid, std::size_t threads = 0);

/// BuiltIn: table lookup (throws UnsupportedError when absent). MonteCarlo: the
/// empirical (1 - alpha)-quantile of null_statistics.
double critical_value(std::size_t dim, double alpha, const CriticalSource& source, std::size_t sample_size,
                      const SimplexGrid& grid, std::size_t threads = 0);
double critical_value(std::size_t dim, double alpha, const CriticalSource& source, std::size_t sample_size,
                      std::size_t threads = 0);

struct TailTestResult {
  double statistic = 0.0;
  double critical_value = 0.0;
  double alpha = 0.05;
  bool reject = false;
  std::size_t sample_size = 0;
  std::size_t dim = 0;
  double grid_mesh = 0.0;
  std::size_t grid_points = 0;
  CriticalSource source;
};

/// Estimate, statistic, critical value and decision (reject iff statistic > critical value).
TailTestResult run_test(const MaximaSample& maxima, double alpha, const CriticalSource& source,
                        std::size_t threads = 0);

/// As run_test with an already computed critical value.
TailTestResult run_test(const MaximaSample& maxima, double alpha, const CriticalSource& source,
                        double critical, const SimplexGrid& grid);

}  // namespace tailcond

#endif  // TAILCOND_PICKANDS_HPP
