#include "tailcond/dnorms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "tailcond/error.hpp"

namespace tailcond {

std::string_view norm_kind_name(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::Logistic: return "logistic";
    case NormKind::Sup: return "sup";
    case NormKind::Sum: return "sum";
  }
  return "unknown";
}

NormKind parse_norm_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "logistic") return NormKind::Logistic;
  if (lower == "sup" || lower == "max" || lower == "inf") return NormKind::Sup;
  if (lower == "sum" || lower == "l1" || lower == "independence") return NormKind::Sum;
  throw InvalidParameter("unknown D-norm kind '" + std::string(name) + "'");
}

namespace {
void require_dim(std::size_t dim) {
  if (dim == 0) throw InvalidParameter("D-norm dimension must be positive");
}
}  // namespace

DNorm DNorm::logistic(double q, std::size_t dim) {
  require_dim(dim);
  if (!(q >= 1.0) || !std::isfinite(q)) {
    std::ostringstream msg;
    msg << "logistic D-norm needs finite q >= 1, got " << q;
    throw InvalidParameter(msg.str());
  }
  return {NormKind::Logistic, q, dim};
}

DNorm DNorm::sup(std::size_t dim) {
  require_dim(dim);
  return {NormKind::Sup, std::numeric_limits<double>::infinity(), dim};
}

DNorm DNorm::sum(std::size_t dim) {
  require_dim(dim);
  return {NormKind::Sum, 1.0, dim};
}

double DNorm::q() const noexcept { return q_; }

double DNorm::operator()(std::span<const double> x) const {
  if (x.size() != dim_) {
    std::ostringstream msg;
    msg << "D-norm of dimension " << dim_ << " applied to vector of length " << x.size();
    throw DimensionError(msg.str());
  }
  switch (kind_) {
    case NormKind::Sum: {
      double acc = 0.0;
      for (double v : x) acc += std::abs(v);
      return acc;
    }
    case NormKind::Sup: {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      return m;
    }
    case NormKind::Logistic: {
      if (q_ == 1.0) {
        double acc = 0.0;
        for (double v : x) acc += std::abs(v);
        return acc;
      }
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      if (m == 0.0 || !std::isfinite(m)) return m;
      double acc = 0.0;
      for (double v : x) acc += std::pow(std::abs(v) / m, q_);
      return m * std::pow(acc, 1.0 / q_);
    }
  }
  return 0.0;
}

DNorm DNorm::power_transform(double p) const {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    std::ostringstream msg;
    msg << "power transform needs p >= 1, got " << p;
    throw InvalidParameter(msg.str());
  }
  if (p == 1.0) return *this;
  switch (kind_) {
    case NormKind::Sup: return *this;
    case NormKind::Sum: return logistic(p, dim_);
    case NormKind::Logistic: return logistic(p * q_, dim_);
  }
  return *this;
}

std::string DNorm::describe() const {
  std::ostringstream out;
  out << norm_kind_name(kind_);
  if (kind_ == NormKind::Logistic) out << "(q=" << q_ << ")";
  out << "[d=" << dim_ << "]";
  return out.str();
}

}  // namespace tailcond
