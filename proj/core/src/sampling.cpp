#include "tailcond/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tailcond/error.hpp"

namespace tailcond {

namespace {

constexpr double kBelowOne = 1.0 - 0x1.0p-53;

double keep_inside(double u) noexcept {
  return std::clamp(u, std::numeric_limits<double>::min(), kBelowOne);
}

void require_slice_arguments(std::size_t dim, std::size_t j, double u, double eps, std::size_t k) {
  if (j >= dim) {
    std::ostringstream msg;
    msg << "slice: conditioned coordinate " << j << " out of range for d=" << dim;
    throw DimensionError(msg.str());
  }
  if (!(u > 0.0 && u < 1.0)) throw DomainError("slice: level u must lie in (0,1)");
  if (!(eps > 0.0)) throw DomainError("slice: window half-width must be positive");
  if (k == 0) throw InvalidParameter("slice: k must be at least 1");
}

}  // namespace

FrailtySampler::FrailtySampler(const CopulaModel& model) : model_(model) {
  if (!model.is_archimedean()) {
    throw UnsupportedError("sampling is only available for Archimedean (Sum norm) models");
  }
  const Generator& g = model.generator();
  if (!g.samplable()) {
    throw UnsupportedError("no sampler for " + g.describe() + "; only Gumbel, Clayton and Frank are samplable");
  }
  if (g.family() == Family::GumbelHougaard) alpha_ = 1.0 / g.theta();
  if (g.family() == Family::Frank) log_series_p_ = -std::expm1(-g.theta());
}

double FrailtySampler::stable(RandomStream& rng) const {
  // Chambers-Mallows-Stuck with beta = 1, scaled so that E exp(-sV) = exp(-s^alpha);
  // with U = pi * uniform this is Kanter's form.
  if (alpha_ == 1.0) return 1.0;
  const double a = alpha_;
  const double angle = std::numbers::pi * rng.uniform();
  const double w = rng.exponential();
  const double log_v = std::log(std::sin(a * angle)) - std::log(std::sin(angle)) / a +
                       (1.0 - a) / a * (std::log(std::sin((1.0 - a) * angle)) - std::log(w));
  return std::exp(log_v);
}

double FrailtySampler::frailty(RandomStream& rng) const {
  const Generator& g = model_.generator();
  switch (g.family()) {
    case Family::GumbelHougaard:
      return stable(rng);
    case Family::Clayton:
      return g.theta() * rng.gamma(1.0 / g.theta());
    case Family::Frank: {
      // Sequential search on P(V = k) = p^k / (k theta).
      const double p = log_series_p_;
      const double u = rng.uniform();
      double prob = p / g.theta();
      double cumulative = prob;
      double k = 1.0;
      while (u > cumulative && prob > 0.0) {
        prob *= p * k / (k + 1.0);
        k += 1.0;
        cumulative += prob;
      }
      return k;
    }
    case Family::Logistic:
      break;
  }
  throw UnsupportedError("no frailty for the logistic generator");
}

double FrailtySampler::posterior_frailty(RandomStream& rng, double y) const {
  if (!(y > 0.0)) throw DomainError("posterior_frailty: phi(u_j) must be positive");
  const Generator& g = model_.generator();
  switch (g.family()) {
    case Family::GumbelHougaard: {
      // Laplace transform ((y+s)/y)^{alpha-1} exp(-((y+s)^alpha - y^alpha)):
      // an exponentially tilted stable plus an independent Gamma(1 - alpha, rate y).
      if (alpha_ == 1.0) return 1.0;
      double tilted = 0.0;
      do {
        tilted = stable(rng);
      } while (rng.uniform() > std::exp(-y * tilted));
      return tilted + rng.gamma(1.0 - alpha_) / y;
    }
    case Family::Clayton: {
      const double theta = g.theta();
      return rng.gamma(1.0 / theta + 1.0) * theta / (1.0 + theta * y);
    }
    case Family::Frank: {
      // P(W = k) proportional to (p e^{-y})^k: geometric on {1, 2, ...}.
      const double log_q = std::log(log_series_p_) - y;
      return 1.0 + std::floor(std::log(rng.uniform()) / log_q);
    }
    case Family::Logistic:
      break;
  }
  throw UnsupportedError("no frailty for the logistic generator");
}

void FrailtySampler::draw(RandomStream& rng, std::span<double> row) const {
  const Generator& g = model_.generator();
  const double v = frailty(rng);
  for (double& x : row) x = keep_inside(g.phi_inverse(rng.exponential() / v));
}

void FrailtySampler::draw_window_conditional(RandomStream& rng, double lo, double hi,
                                             std::span<double> out) const {
  const Generator& g = model_.generator();
  const double uj = lo + (hi - lo) * rng.uniform();
  const double w = posterior_frailty(rng, g.phi(uj));
  for (double& x : out) x = keep_inside(g.phi_inverse(rng.exponential() / w));
}

SampleMatrix sample_archimedean(const CopulaModel& model, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidParameter("sample_archimedean: n must be at least 1");
  FrailtySampler sampler(model);
  SampleMatrix out{model, seed, n, model.dim(), {}};
  out.data.resize(n * model.dim());
  sampler.generate(n, seed, [&](std::size_t r, std::span<const double> row) {
    std::copy(row.begin(), row.end(), out.data.begin() + static_cast<std::ptrdiff_t>(r * out.cols));
  });
  return out;
}

SliceSample conditional_slice(const SampleMatrix& sample, std::size_t j, double u, double eps, std::size_t k) {
  require_slice_arguments(sample.cols, j, u, eps, k);
  SliceSample out;
  out.cols = sample.cols - 1;
  out.level = u;
  out.window = eps;
  out.j = j;
  out.requested_k = k;
  out.data.reserve(std::min(k, sample.rows) * out.cols);
  const double lo = u - eps;
  const double hi = u + eps;
  for (std::size_t r = 0; r < sample.rows && out.achieved_k < k; ++r) {
    const auto row = sample.row(r);
    if (row[j] < lo || row[j] > hi) continue;
    for (std::size_t c = 0; c < sample.cols; ++c) {
      if (c != j) out.data.push_back(row[c]);
    }
    ++out.achieved_k;
  }
  return out;
}

SliceSample sample_window_conditional(const CopulaModel& model, std::size_t j, double u, double eps,
                                      std::size_t k, std::uint64_t seed) {
  require_slice_arguments(model.dim(), j, u, eps, k);
  const double lo = std::max(u - eps, 0.0);
  const double hi = std::min(u + eps, 1.0);
  if (!(lo > 0.0 && hi < 1.0)) throw DomainError("sample_window_conditional: window must lie inside (0,1)");
  FrailtySampler sampler(model);
  SliceSample out;
  out.cols = model.dim() - 1;
  out.level = u;
  out.window = eps;
  out.j = j;
  out.requested_k = k;
  out.achieved_k = k;
  out.data.resize(k * out.cols);
  RandomStream rng(derive_seed(seed, {0x51ce}));
  for (std::size_t r = 0; r < k; ++r) {
    sampler.draw_window_conditional(rng, lo, hi, {out.data.data() + r * out.cols, out.cols});
  }
  return out;
}

}  // namespace tailcond
