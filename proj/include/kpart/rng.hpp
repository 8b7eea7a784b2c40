#pragma once

#include <cstdint>

namespace kpart {

/// splitmix64 (Steele, Lea, Flood; public-domain reference constants):
///   z  = (state += 0x9E3779B97F4A7C15)
///   z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
///   z ^= z >> 27;  z *= 0x94D049BB133111EB
///   return z ^ (z >> 31)
/// Used only to expand a 64-bit seed into xoshiro state.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

/// xoshiro256** 1.0 (Blackman & Vigna, public-domain reference
/// implementation). State s[0..3] is seeded with four splitmix64 outputs;
/// each draw computes
///   result = rotl(s[1] * 5, 7) * 9
///   t = s[1] << 17
///   s[2] ^= s[0]; s[3] ^= s[1]; s[1] ^= s[2]; s[0] ^= s[3]; s[2] ^= t
///   s[3] = rotl(s[3], 45)
/// All arithmetic is mod 2^64, so streams reproduce bit-exactly on any
/// conforming platform for a fixed seed.
class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  uint64_t next() {
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [lo, hi] by modulo reduction: lo + next() % (hi - lo + 1).
  /// The modulo bias is below 2^-44 for spans up to 2^20 and is accepted in
  /// exchange for a one-line, platform-independent reduction.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    uint64_t span = (uint64_t)hi - (uint64_t)lo + 1;  // full range wraps to 0
    uint64_t r = next();
    return span == 0 ? (int64_t)r : (int64_t)((uint64_t)lo + r % span);
  }

  /// Uniform in [0, 1) with 53 random bits: (next() >> 11) * 2^-53.
  double unit_double() { return (double)(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi): lo + unit * (hi - lo).
  double uniform_double(double lo, double hi) { return lo + unit_double() * (hi - lo); }

  /// Box-Muller with u1 in (0, 1]: mean + stddev * sqrt(-2 ln u1) cos(2 pi u2).
  /// Two draws per value, no caching. Bit-exact per platform libm.
  double gaussian(double mean, double stddev);

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t s_[4];
};

}  // namespace kpart
