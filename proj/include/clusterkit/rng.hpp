#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace clusterkit {

/// 64-bit seed for every randomized operation in the library.
/// Contract: identical seed implies an identical pseudo-random stream,
/// bit for bit, on every platform.
struct RngSeed {
  std::uint64_t value = 0;
};

/// Deterministic pseudo-random stream based on SplitMix64
/// (Steele, Lea & Flood, "Fast splittable pseudorandom number generators").
///
/// The full generation scheme is documented here so that golden output
/// files can be reproduced in any language:
///
///   state  = seed
///   next_u64():  state += 0x9e3779b97f4a7c15
///                z = state
///                z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///                z = (z ^ (z >> 27)) * 0x94d049bb133111eb
///                return z ^ (z >> 31)
///   next_unit():     (next_u64() >> 11) * 2^-53              -> [0, 1)
///   next_gaussian(): u1 = 1 - next_unit(), u2 = next_unit()
///                    return sqrt(-2 ln u1) * cos(2 pi u2)
///                    (plain Box-Muller; every call consumes exactly two draws)
///   next_below(b):   modulo rejection on next_u64(), unbiased
class Rng {
 public:
  explicit Rng(RngSeed seed) : state_(seed.value) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) {
      throw std::invalid_argument("Rng::next_below: bound must be positive");
    }
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;  // multiple of bound
    std::uint64_t x = next_u64();
    while (x >= limit) {
      x = next_u64();
    }
    return x % bound;
  }

  /// Standard normal variate (Box-Muller, cosine branch only).
  double next_gaussian() {
    const double u1 = 1.0 - next_unit();  // (0, 1], keeps the log finite
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Seed for sub-stream `stream` of `base`: the (stream+1)-th raw output of
  /// a SplitMix64 started at `base`. Used to give each restart of a
  /// multi-restart run an independent deterministic stream.
  static RngSeed derive(RngSeed base, std::uint64_t stream) {
    std::uint64_t z = base.value + (stream + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return RngSeed{z ^ (z >> 31)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace clusterkit
