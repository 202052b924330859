#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace sivt {

// splitmix64 step; also used as the seed-mixing primitive so every derived
// stream (per-epoch shuffle, per-step partition, ensemble member) is a pure
// function of the global seed.
std::uint64_t splitmix64(std::uint64_t& state);

// Fold a list of words into one well-mixed seed.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words);

// Deterministic RNG: the engine is std::mt19937_64 (bit-stable across
// platforms per the standard) but all distributions are implemented here,
// since the standard library leaves distribution sequences unspecified.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform();

  // Uniform integer in [0, n), n >= 1. Unbiased (rejection sampling).
  std::uint64_t uniform_int(std::uint64_t n);

  // Standard normal via Box-Muller; caches the second value of each pair.
  double normal();

  // Normal(0, std) resampled until within [lo, hi].
  double truncated_normal(double stddev, double lo, double hi);

  // Fisher-Yates using uniform_int.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sivt
