#ifndef TAILCOND_GENERATORS_HPP
#define TAILCOND_GENERATORS_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tailcond {

enum class Family { GumbelHougaard, Clayton, Frank, Logistic };

std::string_view family_name(Family family) noexcept;

/// Parses "gumbel", "clayton", "frank", "logistic" (case-insensitive, a few aliases).
Family parse_family(std::string_view name);

/// Result of inverting a generator. `clamped` is set when the argument is
/// outside the range of phi (only possible for the Logistic family, y > 1);
/// the value is then 0, i.e. the max(0, .) branch of the logistic df.
struct InverseValue {
  double value;
  bool clamped;
};

/// Archimedean generator phi : (0,1] -> [0, inf), convex, strictly decreasing, phi(1) = 0.
///
/// Four closed-form families are supported:
///   GumbelHougaard  (-log t)^theta,                      theta >= 1
///   Clayton         (t^-theta - 1) / theta,              theta > 0
///   Frank           -log((e^{-theta t}-1)/(e^{-theta}-1)), theta > 0
///   Logistic        (1 - t)^theta,                       theta = p >= 1
///
/// A generator may carry an outer exponent q >= 1, representing psi = phi^q.
/// This is the generator that turns an Archimax copula with logistic norm
/// ||.||_q back into an Archimedean one.
///
/// All evaluations near t = 1 go through the complement s = 1 - t so that
/// the tail behaviour is resolved to full relative precision. The `_upper`
/// variants take s directly.
class Generator {
 public:
  Generator(Family family, double theta);

  static Generator gumbel(double theta) { return {Family::GumbelHougaard, theta}; }
  static Generator clayton(double theta) { return {Family::Clayton, theta}; }
  static Generator frank(double theta) { return {Family::Frank, theta}; }
  static Generator logistic(double p) { return {Family::Logistic, p}; }

  /// psi = phi^q. Composes with an existing exponent multiplicatively.
  [[nodiscard]] Generator power(double q) const;

  [[nodiscard]] Family family() const noexcept { return family_; }
  [[nodiscard]] double theta() const noexcept { return theta_; }
  [[nodiscard]] double exponent() const noexcept { return exponent_; }

  /// The exponent p of the regular-variation condition phi(1-sx)/phi(1-s) -> x^p.
  [[nodiscard]] double tail_index() const noexcept;

  /// The constant A of phi(1-s) ~ A s^p.
  [[nodiscard]] std::optional<double> slope_const() const noexcept;

  /// Frailty sampling exists for the three proper families without outer exponent.
  [[nodiscard]] bool samplable() const noexcept;

  [[nodiscard]] double phi(double t) const;
  [[nodiscard]] double phi_prime(double t) const;
  [[nodiscard]] double phi_second(double t) const;

  /// phi(1 - s) for s in [0, 1).
  [[nodiscard]] double phi_upper(double s) const;
  /// phi'(1 - s) for s in (0, 1).
  [[nodiscard]] double phi_prime_upper(double s) const;

  [[nodiscard]] InverseValue phi_inverse_checked(double y) const;
  [[nodiscard]] double phi_inverse(double y) const { return phi_inverse_checked(y).value; }
  /// 1 - phi^{-1}(y), accurate for small y. Clamped to 1 on the logistic overflow branch.
  [[nodiscard]] double phi_inverse_complement(double y) const;

  [[nodiscard]] std::string describe() const;

  friend bool operator==(const Generator&, const Generator&) = default;

 private:
  // Base family at (t, s = 1 - t), both supplied so each formula can use the stable one.
  [[nodiscard]] double base_phi(double t, double s) const;
  [[nodiscard]] double base_prime(double t, double s) const;
  [[nodiscard]] double base_second(double t, double s) const;
  [[nodiscard]] double base_inverse(double y) const;
  [[nodiscard]] double base_inverse_complement(double y) const;

  Family family_;
  double theta_;
  double exponent_ = 1.0;
};

/// phi(1 - s x) / phi(1 - s) along a grid of s values. Tends to x^p.
std::vector<double> tail_index_probe(const Generator& g, double x, std::span<const double> s_grid);

/// Limit of a sequence sampled on the geometric grid s_k = 10^{-k}, obtained by
/// first-order Richardson extrapolation of the last two points.
struct LimitEstimate {
  double value;
  bool converged;
};

/// Geometric probe grid 1e-2, 1e-3, ..., 1e-10.
std::vector<double> default_limit_grid();

LimitEstimate extrapolate_limit(std::span<const double> s_grid, std::span<const double> values);

/// Numerical check of the tail conditions on the generator.
///   (C1) phi(1-s)/s^p -> A
///   (C2) -phi'(1-s)/s^{p-1} -> pA
///   (C3) -s phi'(1-s)/phi(1-s) -> p
struct ConditionReport {
  double p;
  std::optional<double> slope_const;
  LimitEstimate c1;
  LimitEstimate c2;
  LimitEstimate c3;
  bool c1_holds;
  bool c2_holds;
  double c3_limit;
};

ConditionReport condition_report(const Generator& g);

}  // namespace tailcond

#endif  // TAILCOND_GENERATORS_HPP
