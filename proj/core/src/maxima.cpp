#include "tailcond/maxima.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "tailcond/error.hpp"

namespace tailcond {

std::string_view maxima_scale_name(MaximaScale scale) noexcept {
  return scale == MaximaScale::FirstOrder ? "first-order" : "literal";
}

MaximaScale parse_maxima_scale(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "first-order" || lower == "first_order" || lower == "default") return MaximaScale::FirstOrder;
  if (lower == "literal") return MaximaScale::Literal;
  throw InvalidParameter("unknown maxima scale '" + std::string(name) + "'");
}

void MaximaSample::append(std::span<const double> row) {
  if (row.size() != cols_) throw DimensionError("MaximaSample::append: row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
}

std::vector<double> MaximaSample::column(std::size_t c) const {
  if (c >= cols_) throw DimensionError("MaximaSample::column: index out of range");
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = (*this)(r, c);
  return out;
}

MaximaSample MaximaSample::project(std::span<const std::size_t> coords) const {
  MaximaSample out(coords.size(), norming_);
  std::vector<double> buf(coords.size());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] >= cols_) throw DimensionError("MaximaSample::project: index out of range");
      buf[i] = (*this)(r, coords[i]);
    }
    out.append(buf);
  }
  return out;
}

RunningMax::RunningMax(std::size_t cols) : values_(cols, -std::numeric_limits<double>::infinity()) {}

void RunningMax::update(std::span<const double> row) {
  if (row.size() != values_.size()) throw DimensionError("RunningMax::update: row length mismatch");
  for (std::size_t c = 0; c < row.size(); ++c) values_[c] = std::max(values_[c], row[c]);
  ++count_;
}

std::vector<double> normalize_unconditional(std::span<const double> raw_max, std::size_t n, MaximaScale scale) {
  if (n == 0) throw InvalidParameter("normalize_unconditional: block size must be positive");
  const double size = static_cast<double>(n);
  std::vector<double> out(raw_max.size());
  for (std::size_t c = 0; c < raw_max.size(); ++c) {
    const double centred = raw_max[c] - 1.0;
    out[c] = scale == MaximaScale::FirstOrder ? centred * size : centred / size;
  }
  return out;
}

std::vector<double> componentwise_max_unconditional(const SampleMatrix& sample, MaximaScale scale) {
  if (sample.rows == 0) throw InvalidParameter("componentwise_max_unconditional: empty sample");
  RunningMax running(sample.cols);
  for (std::size_t r = 0; r < sample.rows; ++r) running.update(sample.row(r));
  return normalize_unconditional(running.values(), sample.rows, scale);
}

std::vector<double> componentwise_max_conditional(const SliceSample& slice, const NormingConstants& nc) {
  if (!slice.complete()) {
    std::ostringstream msg;
    msg << "componentwise_max_conditional: slice holds " << slice.achieved_k << " of " << slice.requested_k
        << " requested rows";
    throw ShortfallError(msg.str());
  }
  const double scale = nc.scale();
  if (!(scale > 0.0)) throw DegenerateError("componentwise_max_conditional: c * a_k must be positive");
  RunningMax running(slice.cols);
  for (std::size_t r = 0; r < slice.achieved_k; ++r) running.update(slice.row(r));
  std::vector<double> out(running.values().begin(), running.values().end());
  for (double& v : out) v /= scale;
  return out;
}

MaximaNorming unconditional_norming(std::size_t n, MaximaScale scale) {
  MaximaNorming norming;
  norming.kind = NormingKind::Unconditional;
  norming.scale = scale;
  norming.a = static_cast<double>(n);
  norming.b = 1.0;
  norming.block = n;
  return norming;
}

MaximaNorming conditional_norming(const NormingConstants& nc) {
  MaximaNorming norming;
  norming.kind = NormingKind::Conditional;
  norming.c = nc.c;
  norming.a = nc.a_n;
  norming.b = 0.0;
  norming.block = nc.n;
  return norming;
}

}  // namespace tailcond
