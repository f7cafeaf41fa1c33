#ifndef TAILCOND_SAMPLING_HPP
#define TAILCOND_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tailcond/copulas.hpp"
#include "tailcond/random.hpp"

namespace tailcond {

/// n x d matrix of copula observations, row-major, entries in (0,1).
struct SampleMatrix {
  CopulaModel model;
  std::uint64_t seed = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  [[nodiscard]] double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  [[nodiscard]] std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

/// Rows of a sample whose conditioned coordinate fell in [u - eps, u + eps],
/// with that coordinate removed. Shortfalls are recorded, never padded.
struct SliceSample {
  std::size_t cols = 0;
  std::vector<double> data;
  double level = 0.0;
  double window = 0.0;
  std::size_t j = 0;
  std::size_t requested_k = 0;
  std::size_t achieved_k = 0;

  [[nodiscard]] bool complete() const noexcept { return achieved_k == requested_k; }
  [[nodiscard]] std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

/// Marshall-Olkin frailty sampler: U_i = phi^{-1}(E_i / V) where V has Laplace
/// transform phi^{-1} and the E_i are unit exponentials.
///   Gumbel   V positive stable(1/theta), Chambers-Mallows-Stuck
///   Clayton  V ~ Gamma(1/theta, scale theta)
///   Frank    V ~ logarithmic series(1 - e^{-theta})
class FrailtySampler {
 public:
  /// Rows are generated in blocks of this many, each block on its own derived stream.
  static constexpr std::size_t kBlockRows = 4096;

  explicit FrailtySampler(const CopulaModel& model);

  [[nodiscard]] const CopulaModel& model() const noexcept { return model_; }

  double frailty(RandomStream& rng) const;

  /// Frailty given phi(U_j) = y: density proportional to v e^{-vy} f_V(v).
  double posterior_frailty(RandomStream& rng, double y) const;

  /// One observation of the full d-vector.
  void draw(RandomStream& rng, std::span<double> row) const;

  /// One observation of the d-1 unconditioned coordinates given that the conditioned
  /// one fell in [lo, hi]. The conditioned coordinate is uniform on the window and
  /// the rest follow the exact conditional law (the model is exchangeable, so which
  /// coordinate is conditioned does not matter).
  void draw_window_conditional(RandomStream& rng, double lo, double hi, std::span<double> out) const;

  /// Streams n observations derived from `seed` to visit(row_index, row).
  /// Identical to the rows stored by sample_archimedean for the same seed.
  template <class Visit>
  void generate(std::size_t n, std::uint64_t seed, Visit&& visit) const {
    std::vector<double> row(model_.dim());
    for (std::size_t block = 0, start = 0; start < n; ++block, start += kBlockRows) {
      RandomStream rng = RandomStream::derive(seed, {block});
      const std::size_t stop = start + kBlockRows < n ? start + kBlockRows : n;
      for (std::size_t r = start; r < stop; ++r) {
        draw(rng, row);
        visit(r, std::span<const double>(row));
      }
    }
  }

 private:
  double stable(RandomStream& rng) const;

  CopulaModel model_;
  double alpha_ = 1.0;       // Gumbel stable index 1/theta
  double log_series_p_ = 0;  // Frank success probability
};

SampleMatrix sample_archimedean(const CopulaModel& model, std::size_t n, std::uint64_t seed);

/// Scans rows in order, keeping the first k whose j-th entry lies in [u - eps, u + eps].
SliceSample conditional_slice(const SampleMatrix& sample, std::size_t j, double u, double eps, std::size_t k);

/// Same law as conditional_slice applied to an unbounded stream of observations,
/// but drawn directly: always returns k rows.
SliceSample sample_window_conditional(const CopulaModel& model, std::size_t j, double u, double eps,
                                      std::size_t k, std::uint64_t seed);

}  // namespace tailcond

#endif  // TAILCOND_SAMPLING_HPP
