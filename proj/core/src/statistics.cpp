#include "tailcond/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tailcond/error.hpp"

namespace tailcond {

namespace {

// Sorts v[lo, hi) in place and returns the number of inversions.
std::uint64_t merge_count(std::vector<double>& v, std::vector<double>& scratch, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t swaps = merge_count(v, scratch, lo, mid) + merge_count(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += mid - i;
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

// Number of pairs tied within runs of equal values of a sorted sequence.
template <class Equal>
std::uint64_t tied_pairs(std::size_t n, Equal&& equal) {
  std::uint64_t total = 0, run = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (equal(i - 1, i)) {
      ++run;
    } else {
      total += run * (run - 1) / 2;
      run = 1;
    }
  }
  return total + run * (run - 1) / 2;
}

}  // namespace

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("kendall_tau: samples differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw InvalidParameter("kendall_tau: need at least two observations");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });
  const std::uint64_t tx = tied_pairs(n, [&](std::size_t a, std::size_t b) { return x[order[a]] == x[order[b]]; });
  const std::uint64_t txy = tied_pairs(n, [&](std::size_t a, std::size_t b) {
    return x[order[a]] == x[order[b]] && y[order[a]] == y[order[b]];
  });
  std::vector<double> ys(n), scratch(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  const std::uint64_t swaps = merge_count(ys, scratch, 0, n);
  const std::uint64_t ty = tied_pairs(n, [&](std::size_t a, std::size_t b) { return ys[a] == ys[b]; });
  const double total = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double concordant_minus_discordant = total - static_cast<double>(tx) - static_cast<double>(ty) +
                                             static_cast<double>(txy) - 2.0 * static_cast<double>(swaps);
  const double denom = std::sqrt((total - static_cast<double>(tx)) * (total - static_cast<double>(ty)));
  return denom == 0.0 ? 0.0 : concordant_minus_discordant / denom;
}

double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw InvalidParameter("ks_distance: empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    worst = std::max({worst, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return worst;
}

std::vector<std::size_t> ordinal_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<std::size_t> ranks(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = r + 1;
  return ranks;
}

double empirical_quantile(std::vector<double> values, double level) {
  if (values.empty()) throw InvalidParameter("empirical_quantile: empty sample");
  if (!(level > 0.0 && level <= 1.0)) throw DomainError("empirical_quantile: level must lie in (0,1]");
  const auto n = values.size();
  auto index = static_cast<std::size_t>(std::ceil(level * static_cast<double>(n) - 1e-9));
  index = std::clamp<std::size_t>(index, 1, n) - 1;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(index), values.end());
  return values[index];
}

}  // namespace tailcond
