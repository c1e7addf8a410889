#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "isingfix/rng.hpp"

namespace isingfix {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Sigma = sum_i a_i sigma_i with independent uniform sigma_i in {+1,-1}.
class WeightedSum {
 public:
  /// Throws std::invalid_argument when some |a_i| < 1 and
  /// std::overflow_error when sum |a_i| leaves the 64-bit range.
  explicit WeightedSum(std::vector<std::int64_t> a);

  std::span<const std::int64_t> weights() const { return a_; }
  std::size_t size() const { return a_.size(); }
  /// sum |a_i|; Sigma lies in [-support, support].
  std::int64_t support() const { return support_; }

 private:
  std::vector<std::int64_t> a_;
  std::int64_t support_ = 0;
};

/// Largest support accepted by the exact routines.
inline constexpr std::int64_t kMaxExactSupport = 10'000'000;

/// counts[s + support] = #{sigma : Sigma = s}; total 2^n.
/// Throws LimitError above kMaxExactSupport.
std::vector<BigInt> sum_distribution(const WeightedSum& w);

/// Pr(|Sigma + h| <= delta), exact. Throws std::invalid_argument for
/// delta < 0.
Rational exact_interval_prob(const WeightedSum& w, std::int64_t delta, std::int64_t h);

struct MaxInterval {
  std::int64_t h = 0;
  Rational value;
};

/// max over integer h of Pr(|Sigma + h| <= delta); smallest h among ties.
MaxInterval max_interval_prob(const WeightedSum& w, std::int64_t delta);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

/// Sample chunks of fixed size draw from stream c of `seed`, so the result
/// is the same for every worker count. samples must be >= 1.
McEstimate mc_interval_prob(const WeightedSum& w, std::int64_t delta, std::int64_t h, std::uint64_t samples,
                            std::uint64_t seed, unsigned workers = 1);

/// Weights for a sum of n terms; the generator may draw from `rng`.
using WeightGenerator = std::function<std::vector<std::int64_t>(std::size_t n, CounterRng& rng)>;

WeightGenerator unit_weights();
/// Each weight drawn uniformly from `choices`.
WeightGenerator weights_from(std::vector<std::int64_t> choices);

struct ScalingRow {
  std::size_t n = 0;
  std::int64_t h = 0;
  Rational value;
  double value_double = 0.0;
  /// value * sqrt(n) / delta.
  double normalized = 0.0;
};

/// One row per n; row k draws its weights from stream k of `seed`.
std::vector<ScalingRow> lemma_scaling_report(std::span<const std::size_t> n_list, const WeightGenerator& weight_gen,
                                             std::int64_t delta, std::uint64_t seed);

}  // namespace isingfix
