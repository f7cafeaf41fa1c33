#ifndef TAILCOND_MAXIMA_HPP
#define TAILCOND_MAXIMA_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tailcond/copulas.hpp"
#include "tailcond/sampling.hpp"

namespace tailcond {

/// How unconditional maxima are scaled.
///   FirstOrder  n (max - 1): df tends to exp(x) on x <= 0 (default).
///   Literal     (max - 1) / n: the same affine family with the reciprocal scale.
/// Both are strictly increasing maps of the raw maxima, so rank-based statistics agree.
enum class MaximaScale { FirstOrder, Literal };

enum class NormingKind { Unconditional, Conditional };

std::string_view maxima_scale_name(MaximaScale scale) noexcept;
MaximaScale parse_maxima_scale(std::string_view name);

struct MaximaNorming {
  NormingKind kind = NormingKind::Unconditional;
  MaximaScale scale = MaximaScale::FirstOrder;
  double c = 1.0;    // conditional only
  double a = 1.0;    // a_n (unconditional: n) or a_k
  double b = 1.0;    // centring, unconditional only
  std::size_t block = 0;
};

/// N repetitions x m coordinates of normalized componentwise maxima.
class MaximaSample {
 public:
  MaximaSample(std::size_t cols, MaximaNorming norming) : cols_(cols), norming_(norming) {}

  void append(std::span<const double> row);

  [[nodiscard]] std::size_t rows() const noexcept { return cols_ == 0 ? 0 : data_.size() / cols_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] const MaximaNorming& norming() const noexcept { return norming_; }
  [[nodiscard]] const std::vector<double>& data() const noexcept { return data_; }
  [[nodiscard]] double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  [[nodiscard]] std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] std::vector<double> column(std::size_t c) const;

  /// Keeps only the listed coordinates (e.g. a pair projection).
  [[nodiscard]] MaximaSample project(std::span<const std::size_t> coords) const;

 private:
  std::size_t cols_;
  MaximaNorming norming_;
  std::vector<double> data_;
};

/// Raw componentwise maximum of a stream of rows.
class RunningMax {
 public:
  explicit RunningMax(std::size_t cols);
  void update(std::span<const double> row);
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::size_t count() const noexcept { return count_; }

 private:
  std::vector<double> values_;
  std::size_t count_ = 0;
};

/// (max_i u_ij - b) / a with b = 1: n (max - 1) for FirstOrder, (max - 1)/n for Literal.
std::vector<double> normalize_unconditional(std::span<const double> raw_max, std::size_t n, MaximaScale scale);

std::vector<double> componentwise_max_unconditional(const SampleMatrix& sample,
                                                    MaximaScale scale = MaximaScale::FirstOrder);

/// max_i u_is / (c a_k) for every unconditioned coordinate s. Throws ShortfallError
/// when the slice holds fewer than the requested k rows.
std::vector<double> componentwise_max_conditional(const SliceSample& slice, const NormingConstants& nc);

MaximaNorming unconditional_norming(std::size_t n, MaximaScale scale);
MaximaNorming conditional_norming(const NormingConstants& nc);

}  // namespace tailcond

#endif  // TAILCOND_MAXIMA_HPP
