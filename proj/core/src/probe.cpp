#include "isingfix/probe.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "isingfix/error.hpp"
#include "parallel.hpp"

namespace isingfix {

namespace {

constexpr std::uint64_t kChunk = 1U << 16;

void require_delta(std::int64_t delta) {
  if (delta < 0) throw std::invalid_argument("probe: delta must be nonnegative");
}

// Prefix sums P[k] = sum_{s < k} counts[s].
std::vector<BigInt> prefix(const std::vector<BigInt>& counts) {
  std::vector<BigInt> p(counts.size() + 1);
  for (std::size_t k = 0; k < counts.size(); ++k) p[k + 1] = p[k] + counts[k];
  return p;
}

// Mass of Sigma in [lo, hi] (clamped to the support).
BigInt window(const std::vector<BigInt>& p, std::int64_t support, std::int64_t lo, std::int64_t hi) {
  lo = std::max(lo, -support);
  hi = std::min(hi, support);
  if (lo > hi) return 0;
  return p[static_cast<std::size_t>(hi + support + 1)] - p[static_cast<std::size_t>(lo + support)];
}

Rational over_total(const BigInt& mass, std::size_t n) {
  BigInt total = 1;
  total <<= static_cast<unsigned>(n);
  return Rational(mass, total);
}

}  // namespace

WeightedSum::WeightedSum(std::vector<std::int64_t> a) : a_(std::move(a)) {
  for (std::int64_t x : a_) {
    if (x == 0 || x == std::numeric_limits<std::int64_t>::min()) {
      throw std::invalid_argument("WeightedSum: weights need 1 <= |a_i| < 2^63");
    }
    const std::int64_t ax = x < 0 ? -x : x;
    if (support_ > std::numeric_limits<std::int64_t>::max() - ax) {
      throw std::overflow_error("WeightedSum: sum of |a_i| exceeds 64 bits");
    }
    support_ += ax;
  }
}

std::vector<BigInt> sum_distribution(const WeightedSum& w) {
  const std::int64_t s = w.support();
  if (s > kMaxExactSupport) {
    throw LimitError("probe: support " + std::to_string(s) + " exceeds " + std::to_string(kMaxExactSupport));
  }
  std::vector<BigInt> cur(static_cast<std::size_t>(2 * s + 1));
  std::vector<BigInt> next(cur.size());
  cur[static_cast<std::size_t>(s)] = 1;
  std::int64_t reach = 0;
  for (std::int64_t a : w.weights()) {
    const std::int64_t ax = a < 0 ? -a : a;
    const std::int64_t nreach = reach + ax;
    for (std::int64_t v = -nreach; v <= nreach; ++v) next[static_cast<std::size_t>(v + s)] = 0;
    for (std::int64_t v = -reach; v <= reach; ++v) {
      const auto& c = cur[static_cast<std::size_t>(v + s)];
      if (c.is_zero()) continue;
      next[static_cast<std::size_t>(v + ax + s)] += c;
      next[static_cast<std::size_t>(v - ax + s)] += c;
    }
    std::swap(cur, next);
    reach = nreach;
  }
  return cur;
}

Rational exact_interval_prob(const WeightedSum& w, std::int64_t delta, std::int64_t h) {
  require_delta(delta);
  const auto counts = sum_distribution(w);
  const std::int64_t s = w.support();
  BigInt mass = 0;
  // |Sigma + h| <= delta  <=>  -h - delta <= Sigma <= -h + delta.
  const __int128 lo = -static_cast<__int128>(h) - delta;
  const __int128 hi = -static_cast<__int128>(h) + delta;
  for (std::int64_t v = -s; v <= s; ++v) {
    if (v >= lo && v <= hi) mass += counts[static_cast<std::size_t>(v + s)];
  }
  return over_total(mass, w.size());
}

MaxInterval max_interval_prob(const WeightedSum& w, std::int64_t delta) {
  require_delta(delta);
  const auto counts = sum_distribution(w);
  const auto p = prefix(counts);
  const std::int64_t s = w.support();
  MaxInterval best;
  BigInt best_mass = -1;
  for (std::int64_t h = -s - delta; h <= s + delta; ++h) {
    BigInt mass = window(p, s, -h - delta, -h + delta);
    if (mass > best_mass) {
      best_mass = std::move(mass);
      best.h = h;
    }
  }
  best.value = over_total(best_mass, w.size());
  return best;
}

McEstimate mc_interval_prob(const WeightedSum& w, std::int64_t delta, std::int64_t h, std::uint64_t samples,
                            std::uint64_t seed, unsigned workers) {
  require_delta(delta);
  if (samples == 0) throw std::invalid_argument("mc_interval_prob: samples must be >= 1");
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  const auto a = w.weights();
  detail::for_each_block(chunks, workers, [&](std::size_t c) {
    CounterRng rng(seed, c);
    const std::uint64_t count = std::min<std::uint64_t>(kChunk, samples - c * kChunk);
    std::uint64_t local = 0;
    for (std::uint64_t t = 0; t < count; ++t) {
      __int128 sum = h;
      std::uint64_t bits = 0;
      int left = 0;
      for (std::int64_t x : a) {
        if (left == 0) {
          bits = rng.next();
          left = 64;
        }
        sum += (bits & 1U) ? x : -x;
        bits >>= 1;
        --left;
      }
      if (sum >= -delta && sum <= delta) ++local;
    }
    hits[c] = local;
  });
  McEstimate out;
  out.samples = samples;
  for (auto v : hits) out.hits += v;
  const double n = static_cast<double>(samples);
  out.estimate = static_cast<double>(out.hits) / n;
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / n);
  return out;
}

WeightGenerator unit_weights() {
  return [](std::size_t n, CounterRng&) { return std::vector<std::int64_t>(n, 1); };
}

WeightGenerator weights_from(std::vector<std::int64_t> choices) {
  if (choices.empty()) throw std::invalid_argument("weights_from: empty choice list");
  return [choices = std::move(choices)](std::size_t n, CounterRng& rng) {
    std::vector<std::int64_t> a(n);
    for (auto& x : a) x = choices[rng.below(choices.size())];
    return a;
  };
}

std::vector<ScalingRow> lemma_scaling_report(std::span<const std::size_t> n_list, const WeightGenerator& weight_gen,
                                             std::int64_t delta, std::uint64_t seed) {
  if (delta < 1) throw std::invalid_argument("lemma_scaling_report: delta must be >= 1");
  std::vector<ScalingRow> rows;
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    CounterRng rng(seed, k);
    const WeightedSum w(weight_gen(n_list[k], rng));
    const auto m = max_interval_prob(w, delta);
    ScalingRow row;
    row.n = n_list[k];
    row.h = m.h;
    row.value = m.value;
    row.value_double = static_cast<double>(m.value);
    row.normalized = row.value_double * std::sqrt(static_cast<double>(row.n)) / static_cast<double>(delta);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace isingfix
