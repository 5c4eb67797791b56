#pragma once

#include <cstdint>
#include <random>

namespace lgcn {

using Rng = std::mt19937_64;

/// Independent sub-streams derived from one user seed.
enum class Stream : std::uint64_t {
  kDataGen = 1,
  kSplits = 2,
  kInit = 3,
  kDropConnect = 4,
  kNegatives = 5,
  kSampling = 6,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng derive_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(stream) * 0x100000001b3ULL + index)));
}

/// Uniform double in [0, 1) built from the raw 53 high bits, so results do not
/// depend on the standard library's distribution implementation.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Uniform integer in [0, n) by rejection.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

/// Standard normal via Box-Muller on uniform01.
double standard_normal(Rng& rng);

}  // namespace lgcn
