#include "tailcond/random.hpp"

#include <cmath>

namespace tailcond {

namespace {
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t state = splitmix64(seed);
  for (std::uint64_t index : path) state = splitmix64(state ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  return state;
}

double RandomStream::exponential() noexcept { return -std::log(uniform()); }

double RandomStream::gamma(double shape) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

}  // namespace tailcond
