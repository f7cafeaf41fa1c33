#include "tailcond/copulas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "tailcond/error.hpp"

namespace tailcond {

namespace {

using Quadrature = boost::math::quadrature::gauss<double, 8>;

void require_length(std::span<const double> v, std::size_t expected, const char* what) {
  if (v.size() != expected) {
    std::ostringstream msg;
    msg << what << ": expected " << expected << " coordinates, got " << v.size();
    throw DimensionError(msg.str());
  }
}

void require_in_region(const CopulaModel& model, std::size_t i, double value, const char* what) {
  const double lo = model.lower_valid()[i];
  if (!(value >= lo && value <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": coordinate " << i << " = " << value << " outside [" << lo << ", 1]";
    throw RegionError(msg.str());
  }
}

void require_level(const CopulaModel& model, std::size_t j, double u, const char* what) {
  if (j >= model.dim()) {
    std::ostringstream msg;
    msg << what << ": conditioned coordinate " << j << " out of range for d=" << model.dim();
    throw DimensionError(msg.str());
  }
  require_in_region(model, j, u, what);
  if (!(u < 1.0)) {
    std::ostringstream msg;
    msg << what << ": conditioning level must be below 1, got " << u;
    throw RegionError(msg.str());
  }
}

// Lower bound of the region seen by the unconditioned coordinates, in slot order.
double lower_for_slot(const CopulaModel& model, std::size_t j, std::size_t slot) {
  return model.lower_valid()[slot < j ? slot : slot + 1];
}

// 1 - phi'(u)/phi'(w) with w = phi^{-1}(phi(u) + increment).
//
// Writing I = phi'(u) - phi'(w) = int_w^u phi'' >= 0, the survival is I / (I + |phi'(u)|).
// For increments that are small next to phi(u), the gap u - w is found by Newton
// iteration on int_{u-gap}^u -phi' = increment and both integrals go through
// Gauss-Legendre quadrature, so nothing is lost to cancellation.
double survival_from_increment(const Generator& g, double u, double increment) {
  if (increment == 0.0) return 0.0;
  const double fu = g.phi(u);
  const double du = g.phi_prime(u);
  if (!(du < 0.0) || !std::isfinite(du)) {
    throw DegenerateError("conditional df: phi'(u) vanishes or is not finite at the conditioning level");
  }
  if (increment > 1e-3 * fu) {
    const auto w = g.phi_inverse_checked(fu + increment);
    if (w.clamped || w.value <= 0.0) {
      throw DegenerateError("conditional df: C(u) = 0 at the requested point");
    }
    const double dw = g.phi_prime(w.value);
    if (!std::isfinite(dw)) throw DegenerateError("conditional df: phi'(C(u)) is not finite");
    const double gap_integral = du - dw;
    return gap_integral / (gap_integral - du);
  }
  // Integrate in the offset x = u - t; u - gap can round to u when the gap is tiny.
  auto minus_prime = [&](double x) { return -g.phi_prime(u - x); };
  auto second = [&](double x) { return g.phi_second(u - x); };
  double gap = increment / -du;
  for (int iter = 0; iter < 6; ++iter) {
    const double area = Quadrature::integrate(minus_prime, 0.0, gap);
    const double step = (area - increment) / minus_prime(gap);
    gap -= step;
    if (std::abs(step) <= 1e-15 * gap) break;
  }
  const double gap_integral = Quadrature::integrate(second, 0.0, gap);
  return gap_integral / (gap_integral - du);
}

}  // namespace

CopulaModel::CopulaModel(Generator generator, DNorm norm, std::vector<double> lower_valid)
    : generator_(std::move(generator)), norm_(norm), lower_valid_(std::move(lower_valid)) {
  if (norm_.dimension() < 2) throw InvalidParameter("copula model needs dimension d >= 2");
  if (lower_valid_.size() != norm_.dimension()) {
    throw DimensionError("lower_valid length must equal the D-norm dimension");
  }
  for (double v : lower_valid_) {
    if (!(v > 0.0 && v < 1.0)) {
      std::ostringstream msg;
      msg << "lower_valid entries must lie in (0,1), got " << v;
      throw InvalidParameter(msg.str());
    }
  }
}

CopulaModel::CopulaModel(Generator generator, DNorm norm)
    : CopulaModel(generator, norm, default_lower_valid(generator, norm.dimension())) {}

CopulaModel CopulaModel::archimedean(Generator generator, std::size_t dim) {
  return {generator, DNorm::sum(dim)};
}

std::vector<double> CopulaModel::default_lower_valid(const Generator& generator, std::size_t dim) {
  if (dim < 2) throw InvalidParameter("copula model needs dimension d >= 2");
  if (generator.family() != Family::Logistic) return std::vector<double>(dim, 0.5);
  const double level = generator.phi_inverse(1.0 / static_cast<double>(dim));
  return std::vector<double>(dim, level);
}

double CopulaModel::v0() const noexcept {
  return *std::max_element(lower_valid_.begin(), lower_valid_.end());
}

Generator CopulaModel::conditioning_generator() const {
  switch (norm_.kind()) {
    case NormKind::Sum: return generator_;
    case NormKind::Logistic: return archimax_logistic_reduction(generator_, norm_.q());
    case NormKind::Sup: break;
  }
  throw UnsupportedError("conditioning is only available for Sum and Logistic D-norms");
}

std::string CopulaModel::describe() const {
  std::ostringstream out;
  out << generator_.describe() << " with " << norm_.describe();
  return out.str();
}

double cdf(const CopulaModel& model, std::span<const double> u) {
  require_length(u, model.dim(), "cdf");
  for (std::size_t i = 0; i < u.size(); ++i) require_in_region(model, i, u[i], "cdf");
  const Generator& g = model.generator();
  if (model.dnorm().kind() == NormKind::Sup) {
    // phi is strictly decreasing, so max_i phi(u_i) = phi(min_i u_i) and the inverse undoes it.
    return *std::min_element(u.begin(), u.end());
  }
  std::vector<double> mapped(u.size());
  std::transform(u.begin(), u.end(), mapped.begin(), [&](double t) { return g.phi(t); });
  return g.phi_inverse_checked(model.dnorm()(mapped)).value;
}

double conditional_cdf(const CopulaModel& model, std::size_t j, double u, std::span<const double> v) {
  require_level(model, j, u, "conditional_cdf");
  require_length(v, model.dim() - 1, "conditional_cdf");
  const Generator g = model.conditioning_generator();
  double increment = 0.0;
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (!(v[s] >= lower_for_slot(model, j, s) && v[s] <= 1.0)) {
      std::ostringstream msg;
      msg << "conditional_cdf: coordinate " << s << " = " << v[s] << " outside the validity region";
      throw RegionError(msg.str());
    }
    increment += g.phi(v[s]);
  }
  const double du = g.phi_prime(u);
  if (!(du < 0.0) || !std::isfinite(du)) {
    throw DegenerateError("conditional_cdf: phi'(u) vanishes or is not finite");
  }
  if (increment == 0.0) return 1.0;
  const auto w = g.phi_inverse_checked(g.phi(u) + increment);
  if (w.clamped || w.value <= 0.0) throw DegenerateError("conditional_cdf: C(u) = 0 at the requested point");
  if (w.value >= 1.0) return 1.0;
  const double dw = g.phi_prime(w.value);
  if (!std::isfinite(dw) || dw == 0.0) throw DegenerateError("conditional_cdf: phi'(C(u)) is degenerate");
  return du / dw;
}

double conditional_survival(const CopulaModel& model, std::size_t j, double u, std::span<const double> v) {
  require_level(model, j, u, "conditional_survival");
  require_length(v, model.dim() - 1, "conditional_survival");
  const Generator g = model.conditioning_generator();
  double increment = 0.0;
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (!(v[s] >= lower_for_slot(model, j, s) && v[s] <= 1.0)) {
      std::ostringstream msg;
      msg << "conditional_survival: coordinate " << s << " = " << v[s] << " outside the validity region";
      throw RegionError(msg.str());
    }
    increment += g.phi_upper(1.0 - v[s]);
  }
  return survival_from_increment(g, u, increment);
}

double conditional_margin(const CopulaModel& model, double u, double v) {
  const double v0 = model.v0();
  if (!(u >= v0 && u < 1.0)) throw RegionError("conditional_margin: level u outside [v0, 1)");
  if (!(v >= v0 && v <= 1.0)) throw RegionError("conditional_margin: argument v outside [v0, 1]");
  const Generator g = model.conditioning_generator();
  const double du = g.phi_prime(u);
  if (!(du < 0.0) || !std::isfinite(du)) throw DegenerateError("conditional_margin: phi'(u) is degenerate");
  if (v == 1.0) return 1.0;
  const auto w = g.phi_inverse_checked(g.phi(u) + g.phi(v));
  if (w.clamped || w.value <= 0.0) throw DegenerateError("conditional_margin: C(u, v) = 0");
  if (w.value >= 1.0) return 1.0;
  return du / g.phi_prime(w.value);
}

double conditional_margin_survival(const CopulaModel& model, double u, double s) {
  const double v0 = model.v0();
  if (!(u >= v0 && u < 1.0)) throw RegionError("conditional_margin_survival: level u outside [v0, 1)");
  if (!(s >= 0.0 && 1.0 - s >= v0)) throw RegionError("conditional_margin_survival: 1 - s outside [v0, 1]");
  const Generator g = model.conditioning_generator();
  return survival_from_increment(g, u, g.phi_upper(s));
}

NormingConstants norming_constants(const CopulaModel& model, double u, std::size_t j, std::size_t n) {
  require_level(model, j, u, "norming_constants");
  if (n == 0) throw InvalidParameter("norming_constants: block size must be at least 1");
  const Generator g = model.conditioning_generator();
  const double d1 = g.phi_prime(u);
  const double d2 = g.phi_second(u);
  if (!(d2 > 0.0) || !std::isfinite(d2) || d1 == 0.0) {
    throw DegenerateError("norming_constants: phi''(u) must be positive and phi'(u) nonzero");
  }
  const double p = g.tail_index();
  NormingConstants out{};
  out.c = std::pow(d1 * d1 / d2, 1.0 / p);
  out.a_n = g.phi_inverse_complement(1.0 / static_cast<double>(n));
  out.n = n;
  out.u = u;
  out.j = j;
  return out;
}

std::vector<ProbeRow> doa_convergence_probe(const CopulaModel& model, std::span<const double> x,
                                            std::span<const double> n_grid) {
  require_length(x, model.dim(), "doa_convergence_probe");
  for (double xi : x) {
    if (!(xi <= 0.0)) throw DomainError("doa_convergence_probe: x must be nonpositive");
  }
  const Generator& g = model.generator();
  const double target = model.dnorm().power_transform(g.tail_index())(x);
  std::vector<ProbeRow> rows;
  rows.reserve(n_grid.size());
  std::vector<double> mapped(x.size());
  for (double n : n_grid) {
    if (!(n >= 1.0)) throw DomainError("doa_convergence_probe: block sizes must be >= 1");
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double offset = -x[i] / n;
      if (!(1.0 - offset >= model.lower_valid()[i])) {
        std::ostringstream msg;
        msg << "doa_convergence_probe: n=" << n << " puts coordinate " << i << " below u0";
        throw RegionError(msg.str());
      }
      mapped[i] = g.phi_upper(offset);
    }
    const double value = n * g.phi_inverse_complement(model.dnorm()(mapped));
    const double rel = target == 0.0 ? std::abs(value) : std::abs(value - target) / target;
    rows.push_back({n, value, target, rel, false});
  }
  return rows;
}

std::vector<ProbeRow> conditional_limit_probe(const CopulaModel& model, double u, std::size_t j,
                                              std::span<const double> x, std::span<const double> n_grid) {
  require_level(model, j, u, "conditional_limit_probe");
  require_length(x, model.dim() - 1, "conditional_limit_probe");
  for (double xi : x) {
    if (!(xi <= 0.0)) throw DomainError("conditional_limit_probe: x must be nonpositive");
  }
  const Generator g = model.conditioning_generator();
  const double p = g.tail_index();
  double target = 0.0;
  for (double xi : x) target += std::pow(-xi, p);

  std::vector<ProbeRow> rows;
  rows.reserve(n_grid.size());
  for (double n : n_grid) {
    if (!(n >= 1.0)) throw DomainError("conditional_limit_probe: block sizes must be >= 1");
    const auto nc = norming_constants(model, u, j, static_cast<std::size_t>(n));
    bool clamped = false;
    double increment = 0.0;
    for (std::size_t s = 0; s < x.size(); ++s) {
      double offset = -nc.scale() * x[s];
      const double floor = lower_for_slot(model, j, s) + 1e-12;
      if (1.0 - offset < floor) {
        offset = 1.0 - floor;
        clamped = true;
      }
      increment += g.phi_upper(offset);
    }
    const double value = n * survival_from_increment(g, u, increment);
    const double rel = target == 0.0 ? std::abs(value) : std::abs(value - target) / target;
    rows.push_back({n, value, target, rel, clamped});
  }
  return rows;
}

Generator archimax_logistic_reduction(const Generator& generator, double q) {
  return generator.power(q);
}

}  // namespace tailcond
