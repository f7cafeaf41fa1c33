#ifndef TAILCOND_DNORMS_HPP
#define TAILCOND_DNORMS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace tailcond {

enum class NormKind { Logistic, Sup, Sum };

std::string_view norm_kind_name(NormKind kind) noexcept;
NormKind parse_norm_kind(std::string_view name);

/// A D-norm on R^d: ||x||_inf <= ||x||_D <= ||x||_1, ||e_i||_D = 1.
///
/// Only the three kinds that matter here exist: the logistic norm
/// (sum |x_i|^q)^{1/q}, the sup norm (complete dependence) and the
/// sum norm (independence). Logistic(1) and Sum evaluate identically.
class DNorm {
 public:
  static DNorm logistic(double q, std::size_t dim);
  static DNorm sup(std::size_t dim);
  static DNorm sum(std::size_t dim);

  [[nodiscard]] NormKind kind() const noexcept { return kind_; }
  /// Logistic exponent; 1 for Sum and +inf for Sup.
  [[nodiscard]] double q() const noexcept;
  [[nodiscard]] std::size_t dimension() const noexcept { return dim_; }

  [[nodiscard]] double operator()(std::span<const double> x) const;

  /// x -> ||(|x_1|^p, ..., |x_d|^p)||_D^{1/p}, which is again a D-norm.
  /// Closed under the three kinds: Logistic(q) -> Logistic(pq), Sum -> Logistic(p), Sup -> Sup.
  [[nodiscard]] DNorm power_transform(double p) const;

  [[nodiscard]] std::string describe() const;

  friend bool operator==(const DNorm&, const DNorm&) = default;

 private:
  DNorm(NormKind kind, double q, std::size_t dim) : kind_(kind), q_(q), dim_(dim) {}

  NormKind kind_;
  double q_;
  std::size_t dim_;
};

inline double dnorm_eval(const DNorm& norm, std::span<const double> x) { return norm(x); }

}  // namespace tailcond

#endif  // TAILCOND_DNORMS_HPP
