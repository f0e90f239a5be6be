#pragma once

#include <cstdint>

#include "randfib/rational.hpp"

namespace randfib {

// Counter-style splittable generator. Substreams are derived by hashing
// (seed, stream) through the splitmix64 finalizer, so stream k and stream
// k+1 are unrelated sequences and results do not depend on scheduling.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  SplitMix64(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ULL))) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  bool next_bit() { return (next() >> 63) != 0; }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

private:
  std::uint64_t state_;
};

/// Random nonnegative rational num/den with num in [0, span*den] and
/// den in [1, max_den]. Used by the fuzz suites and witness searches.
inline Rational random_rational(SplitMix64& rng, std::uint64_t span = 8,
                                std::uint64_t max_den = 16) {
  const std::uint64_t den = 1 + rng.next_below(max_den);
  const std::uint64_t num = rng.next_below(span * den + 1);
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace randfib
