#include "tailcond/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "tailcond/error.hpp"

namespace tailcond {

namespace {

void require_open_unit(double t, const char* what) {
  if (!(t > 0.0 && t < 1.0)) {
    std::ostringstream msg;
    msg << what << ": argument " << t << " outside (0,1)";
    throw DomainError(msg.str());
  }
}

void require_half_open_unit(double t, const char* what) {
  if (!(t > 0.0 && t <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": argument " << t << " outside (0,1]";
    throw DomainError(msg.str());
  }
}

// s = 1 - t is exact for t in [0.5, 1] (Sterbenz); below that the t-form is used.
constexpr double kUseComplement = 0.5;

}  // namespace

std::string_view family_name(Family family) noexcept {
  switch (family) {
    case Family::GumbelHougaard: return "gumbel";
    case Family::Clayton: return "clayton";
    case Family::Frank: return "frank";
    case Family::Logistic: return "logistic";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "gumbel" || lower == "gumbel-hougaard" || lower == "gumbelhougaard" || lower == "gh") {
    return Family::GumbelHougaard;
  }
  if (lower == "clayton") return Family::Clayton;
  if (lower == "frank") return Family::Frank;
  if (lower == "logistic" || lower == "phi_p") return Family::Logistic;
  throw InvalidParameter("unknown generator family '" + std::string(name) + "'");
}

Generator::Generator(Family family, double theta) : family_(family), theta_(theta) {
  const bool ok = [&] {
    if (!std::isfinite(theta)) return false;
    switch (family) {
      case Family::GumbelHougaard: return theta >= 1.0;
      case Family::Clayton: return theta > 0.0;
      case Family::Frank: return theta > 0.0 && theta <= 700.0;
      case Family::Logistic: return theta >= 1.0;
    }
    return false;
  }();
  if (!ok) {
    std::ostringstream msg;
    msg << "invalid parameter " << theta << " for " << family_name(family) << " generator";
    throw InvalidParameter(msg.str());
  }
}

Generator Generator::power(double q) const {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    std::ostringstream msg;
    msg << "power transform needs q >= 1, got " << q;
    throw InvalidParameter(msg.str());
  }
  Generator out = *this;
  out.exponent_ = exponent_ * q;
  return out;
}

double Generator::tail_index() const noexcept {
  const double base = [&] {
    switch (family_) {
      case Family::GumbelHougaard: return theta_;
      case Family::Logistic: return theta_;
      case Family::Clayton:
      case Family::Frank: return 1.0;
    }
    return 1.0;
  }();
  return base * exponent_;
}

std::optional<double> Generator::slope_const() const noexcept {
  double a = 1.0;
  if (family_ == Family::Frank) a = theta_ / std::expm1(theta_);
  return std::pow(a, exponent_);
}

bool Generator::samplable() const noexcept {
  return family_ != Family::Logistic && exponent_ == 1.0;
}

double Generator::base_phi(double t, double s) const {
  switch (family_) {
    case Family::GumbelHougaard: {
      const double l = t > kUseComplement ? -std::log1p(-s) : -std::log(t);
      return theta_ == 1.0 ? l : std::pow(l, theta_);
    }
    case Family::Clayton: {
      const double lt = t > kUseComplement ? std::log1p(-s) : std::log(t);
      return std::expm1(-theta_ * lt) / theta_;
    }
    case Family::Frank:
      if (t > kUseComplement) return -std::log1p(-std::expm1(theta_ * s) / std::expm1(theta_));
      return -std::log(std::expm1(-theta_ * t) / std::expm1(-theta_));
    case Family::Logistic:
      return theta_ == 1.0 ? s : std::pow(s, theta_);
  }
  return 0.0;
}

double Generator::base_prime(double t, double s) const {
  switch (family_) {
    case Family::GumbelHougaard: {
      const double l = t > kUseComplement ? -std::log1p(-s) : -std::log(t);
      return -theta_ * std::pow(l, theta_ - 1.0) / t;
    }
    case Family::Clayton: {
      const double lt = t > kUseComplement ? std::log1p(-s) : std::log(t);
      return -std::exp((-theta_ - 1.0) * lt);
    }
    case Family::Frank:
      return -theta_ / std::expm1(theta_ * t);
    case Family::Logistic:
      return -theta_ * std::pow(s, theta_ - 1.0);
  }
  return 0.0;
}

double Generator::base_second(double t, double s) const {
  switch (family_) {
    case Family::GumbelHougaard: {
      const double l = t > kUseComplement ? -std::log1p(-s) : -std::log(t);
      double v = theta_ * std::pow(l, theta_ - 1.0);
      if (theta_ != 1.0) v += theta_ * (theta_ - 1.0) * std::pow(l, theta_ - 2.0);
      return v / (t * t);
    }
    case Family::Clayton: {
      const double lt = t > kUseComplement ? std::log1p(-s) : std::log(t);
      return (theta_ + 1.0) * std::exp((-theta_ - 2.0) * lt);
    }
    case Family::Frank: {
      const double a = theta_ * t;
      return theta_ * theta_ / (std::expm1(a) * -std::expm1(-a));
    }
    case Family::Logistic:
      if (theta_ == 1.0) return 0.0;
      return theta_ * (theta_ - 1.0) * std::pow(s, theta_ - 2.0);
  }
  return 0.0;
}

double Generator::base_inverse(double y) const {
  switch (family_) {
    case Family::GumbelHougaard: return std::exp(-std::pow(y, 1.0 / theta_));
    case Family::Clayton: return std::exp(-std::log1p(theta_ * y) / theta_);
    case Family::Frank:
      if (y == 0.0) return 1.0;
      return -std::log1p(std::exp(-y) * std::expm1(-theta_)) / theta_;
    case Family::Logistic: return 1.0 - std::pow(y, 1.0 / theta_);
  }
  return 1.0;
}

double Generator::base_inverse_complement(double y) const {
  switch (family_) {
    case Family::GumbelHougaard: return -std::expm1(-std::pow(y, 1.0 / theta_));
    case Family::Clayton: return -std::expm1(-std::log1p(theta_ * y) / theta_);
    case Family::Frank: return std::log1p(-std::expm1(theta_) * std::expm1(-y)) / theta_;
    case Family::Logistic: return std::pow(y, 1.0 / theta_);
  }
  return 0.0;
}

double Generator::phi(double t) const {
  require_half_open_unit(t, "phi");
  const double base = base_phi(t, 1.0 - t);
  return exponent_ == 1.0 ? base : std::pow(base, exponent_);
}

double Generator::phi_upper(double s) const {
  if (!(s >= 0.0 && s < 1.0)) {
    std::ostringstream msg;
    msg << "phi_upper: offset " << s << " outside [0,1)";
    throw DomainError(msg.str());
  }
  const double base = base_phi(1.0 - s, s);
  return exponent_ == 1.0 ? base : std::pow(base, exponent_);
}

double Generator::phi_prime(double t) const {
  require_open_unit(t, "phi_prime");
  const double s = 1.0 - t;
  const double d1 = base_prime(t, s);
  if (exponent_ == 1.0) return d1;
  const double f = base_phi(t, s);
  return exponent_ * std::pow(f, exponent_ - 1.0) * d1;
}

double Generator::phi_prime_upper(double s) const {
  require_open_unit(s, "phi_prime_upper");
  const double t = 1.0 - s;
  const double d1 = base_prime(t, s);
  if (exponent_ == 1.0) return d1;
  const double f = base_phi(t, s);
  return exponent_ * std::pow(f, exponent_ - 1.0) * d1;
}

double Generator::phi_second(double t) const {
  require_open_unit(t, "phi_second");
  const double s = 1.0 - t;
  const double d2 = base_second(t, s);
  if (exponent_ == 1.0) return d2;
  const double f = base_phi(t, s);
  const double d1 = base_prime(t, s);
  const double q = exponent_;
  return q * (q - 1.0) * std::pow(f, q - 2.0) * d1 * d1 + q * std::pow(f, q - 1.0) * d2;
}

InverseValue Generator::phi_inverse_checked(double y) const {
  if (!(y >= 0.0)) {
    std::ostringstream msg;
    msg << "phi_inverse: argument " << y << " is negative";
    throw DomainError(msg.str());
  }
  const double base_y = exponent_ == 1.0 ? y : std::pow(y, 1.0 / exponent_);
  if (family_ == Family::Logistic && base_y > 1.0) return {0.0, true};
  return {base_inverse(base_y), false};
}

double Generator::phi_inverse_complement(double y) const {
  if (!(y >= 0.0)) {
    std::ostringstream msg;
    msg << "phi_inverse_complement: argument " << y << " is negative";
    throw DomainError(msg.str());
  }
  const double base_y = exponent_ == 1.0 ? y : std::pow(y, 1.0 / exponent_);
  if (family_ == Family::Logistic && base_y > 1.0) return 1.0;
  return base_inverse_complement(base_y);
}

std::string Generator::describe() const {
  std::ostringstream out;
  out << family_name(family_) << "(theta=" << theta_ << ")";
  if (exponent_ != 1.0) out << "^" << exponent_;
  return out.str();
}

std::vector<double> tail_index_probe(const Generator& g, double x, std::span<const double> s_grid) {
  if (!(x > 0.0)) throw DomainError("tail_index_probe: x must be positive");
  std::vector<double> ratios;
  ratios.reserve(s_grid.size());
  for (double s : s_grid) {
    if (!(s > 0.0 && s < 1.0 && s * x < 1.0)) {
      std::ostringstream msg;
      msg << "tail_index_probe: grid point s=" << s << " with x=" << x << " leaves (0,1)";
      throw DomainError(msg.str());
    }
    ratios.push_back(g.phi_upper(s * x) / g.phi_upper(s));
  }
  return ratios;
}

std::vector<double> default_limit_grid() {
  std::vector<double> grid;
  for (int k = 2; k <= 10; ++k) grid.push_back(std::pow(10.0, -k));
  return grid;
}

LimitEstimate extrapolate_limit(std::span<const double> s_grid, std::span<const double> values) {
  if (s_grid.size() != values.size() || values.size() < 3) {
    throw DimensionError("extrapolate_limit: need matching grids with at least three points");
  }
  // Error model f(s) = L + K s; eliminate K between consecutive points.
  auto richardson = [&](std::size_t k) {
    const double r = s_grid[k] / s_grid[k + 1];
    return (r * values[k + 1] - values[k]) / (r - 1.0);
  };
  const std::size_t last = values.size() - 2;
  const double current = richardson(last);
  const double previous = richardson(last - 1);
  const bool finite = std::isfinite(current) && std::isfinite(previous);
  const bool converged =
      finite && std::abs(current - previous) <= 1e-6 * std::max(1.0, std::abs(current));
  return {current, converged};
}

ConditionReport condition_report(const Generator& g) {
  const auto grid = default_limit_grid();
  const double p = g.tail_index();
  std::vector<double> c1, c2, c3;
  for (double s : grid) {
    const double f = g.phi_upper(s);
    const double d = g.phi_prime_upper(s);
    c1.push_back(f / std::pow(s, p));
    c2.push_back(-d / std::pow(s, p - 1.0));
    c3.push_back(-s * d / f);
  }
  ConditionReport report{};
  report.p = p;
  report.slope_const = g.slope_const();
  report.c1 = extrapolate_limit(grid, c1);
  report.c2 = extrapolate_limit(grid, c2);
  report.c3 = extrapolate_limit(grid, c3);
  report.c1_holds = report.c1.converged && report.c1.value > 0.0;
  report.c2_holds = report.c2.converged && report.c1_holds &&
                    std::abs(report.c2.value - p * report.c1.value) <= 1e-6 * std::abs(report.c2.value);
  report.c3_limit = report.c3.value;
  return report;
}

}  // namespace tailcond
