#ifndef TAILCOND_RANDOM_HPP
#define TAILCOND_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace tailcond {

/// Seed used by every entry point when the caller does not pass one.
inline constexpr std::uint64_t kDefaultSeed = 20190705;

/// Mixes a path of indices into a seed (SplitMix64 finalizer chained per element).
/// Distinct paths give statistically independent streams.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept;

/// A single deterministic random stream. Streams for parallel work are derived
/// from (seed, index path), never shared between threads.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    return RandomStream(derive_seed(seed, path));
  }

  /// Uniform on the open interval (0,1), 53-bit resolution.
  double uniform() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Unit exponential.
  double exponential() noexcept;

  /// Gamma(shape, scale = 1).
  double gamma(double shape);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tailcond

#endif  // TAILCOND_RANDOM_HPP
