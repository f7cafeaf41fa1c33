#ifndef TAILCOND_STATISTICS_HPP
#define TAILCOND_STATISTICS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tailcond {

/// Kendall's tau-b, O(n log n) (Knight's merge-sort count).
double kendall_tau(std::span<const double> x, std::span<const double> y);

/// sup_x |F_n(x) - F(x)| of the empirical df of `sample` against `cdf`.
double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf);

/// Ordinal ranks 1..n; ties broken by position, so any strictly increasing
/// transform of the input leaves the ranks unchanged.
std::vector<std::size_t> ordinal_ranks(std::span<const double> values);

/// Empirical quantile, inverse of the empirical df: the ceil(level * n)-th order statistic.
double empirical_quantile(std::vector<double> values, double level);

}  // namespace tailcond

#endif  // TAILCOND_STATISTICS_HPP
