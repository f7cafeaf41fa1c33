#ifndef TAILCOND_ERROR_HPP
#define TAILCOND_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tailcond {

/// Argument outside the mathematical domain of a function (e.g. t <= 0 for phi).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Bad construction parameter (theta out of range, q < 1, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Vector length does not match the model dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Point lies below the lower corner u0 of the validity region.
class RegionError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A quantity the formula divides by vanishes or blows up.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation not available for this model (sampling a Logistic generator, ...).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A conditional slice collected fewer rows than requested.
class ShortfallError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tailcond

#endif  // TAILCOND_ERROR_HPP
