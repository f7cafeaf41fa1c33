#ifndef TAILCOND_COPULAS_HPP
#define TAILCOND_COPULAS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tailcond/dnorms.hpp"
#include "tailcond/generators.hpp"

namespace tailcond {

/// Archimax model C(u) = phi^{-1}(||(phi(u_1), ..., phi(u_d))||_D), asserted on
/// the upper box [u0, 1]. The Sum norm gives the Archimedean case.
class CopulaModel {
 public:
  CopulaModel(Generator generator, DNorm norm, std::vector<double> lower_valid);
  /// Uses default_lower_valid for the corner.
  CopulaModel(Generator generator, DNorm norm);

  static CopulaModel archimedean(Generator generator, std::size_t dim);

  /// 0.5 in every coordinate for the proper copula families; for the Logistic
  /// family the level with d * phi(u0) = 1, which keeps the df inside its valid branch.
  static std::vector<double> default_lower_valid(const Generator& generator, std::size_t dim);

  [[nodiscard]] const Generator& generator() const noexcept { return generator_; }
  [[nodiscard]] const DNorm& dnorm() const noexcept { return norm_; }
  [[nodiscard]] std::size_t dim() const noexcept { return norm_.dimension(); }
  [[nodiscard]] const std::vector<double>& lower_valid() const noexcept { return lower_valid_; }
  /// max_i u0_i, the lower end of the region where margins are uniform.
  [[nodiscard]] double v0() const noexcept;

  [[nodiscard]] bool is_archimedean() const noexcept { return norm_.kind() == NormKind::Sum; }

  /// Generator of the Archimedean model equivalent to this one, used for
  /// conditioning. Sum norm: the generator itself. Logistic(q): phi^q.
  /// Throws UnsupportedError for the Sup norm.
  [[nodiscard]] Generator conditioning_generator() const;

  [[nodiscard]] std::string describe() const;

 private:
  Generator generator_;
  DNorm norm_;
  std::vector<double> lower_valid_;
};

/// Theorem-level norming for the conditional maxima: x -> 1 + c a_n x.
struct NormingConstants {
  double c;
  double a_n;
  std::size_t n;
  double u;
  std::size_t j;

  [[nodiscard]] double scale() const noexcept { return c * a_n; }
};

/// One row of a convergence probe: block size, probe value, limit, relative error.
struct ProbeRow {
  double n;
  double value;
  double target;
  double rel_error;
  bool clamped = false;
};

double cdf(const CopulaModel& model, std::span<const double> u);

/// Conditional df of the remaining d-1 coordinates given U_j = u:
/// phi'(u) / phi'(phi^{-1}(phi(u) + sum_i phi(v_i))). j is 0-based.
double conditional_cdf(const CopulaModel& model, std::size_t j, double u, std::span<const double> v);

/// 1 - conditional_cdf, evaluated without cancellation when the result is tiny.
double conditional_survival(const CopulaModel& model, std::size_t j, double u, std::span<const double> v);

/// Univariate upper-tail margin H_u(v) shared by every coordinate of the conditional df.
double conditional_margin(const CopulaModel& model, double u, double v);

/// 1 - H_u(1 - s), accurate down to s where phi(1 - s) underflows relative to phi(u).
double conditional_margin_survival(const CopulaModel& model, double u, double s);

/// c = (phi'(u)^2 / phi''(u))^{1/p}, a_n = 1 - phi^{-1}(1/n).
NormingConstants norming_constants(const CopulaModel& model, double u, std::size_t j, std::size_t n);

/// n (1 - C(1 + x/n)) along the grid, against ||(|x_1|^p, ..., |x_d|^p)||_D^{1/p}.
std::vector<ProbeRow> doa_convergence_probe(const CopulaModel& model, std::span<const double> x,
                                            std::span<const double> n_grid);

/// n (1 - H_{j,u}(1 + c a_n x)) along the grid, against sum_i |x_i|^p.
/// Points that would leave [u0, 1) are clamped to u0 + 1e-12 and flagged.
std::vector<ProbeRow> conditional_limit_probe(const CopulaModel& model, double u, std::size_t j,
                                              std::span<const double> x, std::span<const double> n_grid);

/// psi = phi^q: the Archimedean generator equivalent to the Archimax model with Logistic(q) norm.
Generator archimax_logistic_reduction(const Generator& generator, double q);

}  // namespace tailcond

#endif  // TAILCOND_COPULAS_HPP
