#pragma once

#include <cstdint>
#include <random>

namespace netred {

/// SplitMix64 finalizer. Used to expand seeds and derive per-trial child
/// seeds; the output is fully determined by the input on every platform.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seedable, portable random stream: std::mt19937_64 (bit-exact by the
/// standard) with explicit 53-bit double conversion, so sequences are
/// reproducible across compilers and platforms.
///
/// Stream splitting: Monte Carlo suites give trial k the independent stream
/// Rng(child_seed(master, k)); nested sub-streams use the same rule again
/// on the trial seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t next_u64() { return engine_(); }

  static std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace netred
