#pragma once

#include <cstdint>
#include <random>

namespace blotto {

// Deterministic RNG wrapper. All randomness in the library flows through
// this type so that a (seed, call sequence) pair reproduces bit-identical
// results on any platform: mt19937_64 has a standard-mandated output
// sequence and the double mapping below avoids the implementation-defined
// std::uniform_real_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // Uniform integer in {lo, ..., hi}, unbiased via rejection.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return lo + v % span;
  }

 private:
  std::mt19937_64 eng_;
};

// splitmix64 finalizer; used to derive independent child seeds.
inline std::uint64_t mix_u64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Child seed for shard k of a computation rooted at `seed`. Distinct k give
// streams that are independent for practical purposes.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  return mix_u64(seed ^ mix_u64(k + 1));
}

}  // namespace blotto
