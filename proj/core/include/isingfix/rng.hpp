#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace isingfix {

/// Counter-based generator: output k of stream s is a pure function of
/// (seed, s, k). Streams are how independent consumers (retry rounds, worker
/// blocks, MC chunks) get non-overlapping randomness from one user seed.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next();
  /// Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

  /// k distinct values from [0, n), sorted ascending.
  std::vector<int> sample_without_replacement(int n, int k);

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace isingfix
