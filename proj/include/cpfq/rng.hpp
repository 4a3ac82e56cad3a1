// Seeded deterministic random source. All randomized routines take an explicit
// Rng (or a seed) so results are reproducible byte-for-byte across platforms.
#pragma once

#include <random>

#include "cpfq/numeric.hpp"

namespace cpfq {

inline u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(u64 seed) : eng_(splitmix64(seed)) {}

  /// Independent child stream; deterministic function of (seed, index).
  static Rng stream(u64 seed, u64 index) {
    return Rng(splitmix64(seed ^ (0xa0761d6478bd642full * (index + 1))));
  }

  u64 next() { return eng_(); }

  /// Uniform in [0, bound). Rejection sampling, identical on every platform.
  u64 below(u64 bound) {
    if (bound == 0) throw error("Rng::below(0)");
    u64 threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      u64 x = eng_();
      if (x >= threshold) return x % bound;
    }
  }

  /// Uniform BigInt in [0, bound), exact.
  BigInt below(const BigInt& bound) {
    if (bound <= 0) throw error("Rng::below: nonpositive bound");
    size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    size_t words = (bits + 63) / 64;
    for (;;) {
      BigInt x = 0;
      for (size_t w = 0; w < words; ++w) {
        u64 word = eng_();
        BigInt bw;
        mpz_import(bw.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &word);
        x = (x << 64) | bw;
      }
      x >>= words * 64 - bits;
      if (x < bound) return x;
    }
  }

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace cpfq
