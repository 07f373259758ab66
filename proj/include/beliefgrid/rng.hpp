#pragma once

#include <cstdint>
#include <span>

namespace beliefgrid {

/**
 * Deterministic, splittable random generator used by every sampling routine.
 *
 * Core stream: xoshiro256++ seeded through SplitMix64, so any 64-bit seed
 * yields a well-mixed state. Substreams are derived by hashing (seed, index),
 * which keeps replication r's trajectory independent of the total replication
 * count: adding replications never reshuffles earlier ones.
 *
 * All outputs are computed from integer bit operations and a fixed 53-bit
 * double conversion, so sequences are identical across platforms.
 */
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {
    SplitMix64 sm(seed);
    for (auto& s : s_) s = sm.next();
  }

  /// Derived generator for substream `index`; deterministic in (seed, index).
  Rng substream(std::uint64_t index) const {
    SplitMix64 sm(seed_ ^ (0x5851F42D4C957F2Dull * (index + 1)));
    return Rng(sm.next());
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Index sampled from an unnormalized nonnegative weight vector by CDF
  /// inversion in storage order (fixed order keeps results reproducible).
  std::size_t categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return weights.empty() ? 0 : weights.size() - 1;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed_;
  std::uint64_t s_[4];
};

}  // namespace beliefgrid
