#pragma once

#include <cstdint>
#include <random>

namespace atomsort {

/// Deterministic RNG used by loading and noise. Wraps std::mt19937_64 (the
/// engine sequence is fixed by the standard) and derives doubles directly
/// from the raw 64-bit stream so results do not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_unit() < p; }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    return n == 0 ? 0 : next_u64() % n;
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed derivation for sweep cells: adding cells or trials never perturbs
/// the seeds of existing ones.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell,
                                 std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(base) ^ cell) ^ trial);
}

}  // namespace atomsort
