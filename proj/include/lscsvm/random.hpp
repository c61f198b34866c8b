#ifndef LSCSVM_RANDOM_HPP_
#define LSCSVM_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace lscsvm {

// All randomness in the library goes through std::mt19937_64, whose output
// sequence is fixed by the standard. Distributions are implemented here
// rather than with <random> distributions, whose algorithms are
// implementation-defined, so the same seed yields the same bytes everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer applied to seed + stream * golden-ratio increment.
// Gives independent-looking seeds for numbered sub-streams (per start,
// per experiment row) from one user seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace lscsvm

#endif  // LSCSVM_RANDOM_HPP_
