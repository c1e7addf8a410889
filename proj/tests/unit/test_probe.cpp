#include <gtest/gtest.h>

#include <cmath>

#include "isingfix/error.hpp"
#include "isingfix/probe.hpp"
#include "naive.hpp"

using namespace isingfix;

namespace {

Rational ratio(std::uint64_t p, std::uint64_t q) { return Rational(BigInt(p), BigInt(q)); }

Rational oracle_prob(const std::vector<std::int64_t>& a, std::int64_t delta, std::int64_t h) {
  const auto [hits, total] = oracle::interval_count(a, delta, h);
  return ratio(hits, total);
}

}  // namespace

TEST(WeightedSum, Validation) {
  EXPECT_THROW(WeightedSum({1, 0, 2}), std::invalid_argument);
  EXPECT_THROW(WeightedSum({INT64_MAX, 1}), std::overflow_error);
  const WeightedSum w({1, -3, 2});
  EXPECT_EQ(w.support(), 6);
  EXPECT_EQ(w.size(), 3u);
  EXPECT_THROW(sum_distribution(WeightedSum({kMaxExactSupport, 1})), LimitError);
}

TEST(ExactInterval, Examples) {
  EXPECT_EQ(exact_interval_prob(WeightedSum({1, 1, 1, 1}), 1, 0), ratio(6, 16));
  EXPECT_EQ(exact_interval_prob(WeightedSum({1}), 1, 0), ratio(1, 1));
  EXPECT_EQ(exact_interval_prob(WeightedSum({2, 2}), 1, 0), ratio(1, 2));
  EXPECT_THROW(exact_interval_prob(WeightedSum({1}), -1, 0), std::invalid_argument);
}

TEST(ExactInterval, MatchesEnumeration) {
  const std::vector<std::vector<std::int64_t>> cases{{1, 2, 3}, {5, -1, 1, 2, 7}, {1, 1, 1, 1, 1, 1, 1}, {3, 3, 4, -2, 9, 1}};
  for (const auto& a : cases) {
    const WeightedSum w(a);
    for (std::int64_t delta : {0, 1, 2, 5}) {
      for (std::int64_t h = -w.support() - 2; h <= w.support() + 2; ++h) {
        EXPECT_EQ(exact_interval_prob(w, delta, h), oracle_prob(a, delta, h));
      }
    }
  }
}

TEST(Distribution, TotalMassAndSymmetry) {
  const WeightedSum w({1, 3, 4, 2, 2, 7});
  const auto dist = sum_distribution(w);
  BigInt total = 0;
  for (const auto& c : dist) total += c;
  EXPECT_EQ(total, BigInt(64));
  for (std::size_t i = 0; i < dist.size(); ++i) EXPECT_EQ(dist[i], dist[dist.size() - 1 - i]);
  EXPECT_EQ(exact_interval_prob(w, w.support(), 0), ratio(1, 1));
  for (std::int64_t h = 0; h < 12; ++h) {
    EXPECT_EQ(exact_interval_prob(w, 2, h), exact_interval_prob(w, 2, -h));
    for (std::int64_t d = 0; d < 10; ++d) EXPECT_LE(exact_interval_prob(w, d, h), exact_interval_prob(w, d + 1, h));
  }
}

TEST(MaxInterval, Examples) {
  const auto four = max_interval_prob(WeightedSum({1, 1, 1, 1}), 1);
  EXPECT_EQ(four.h, -1);
  EXPECT_EQ(four.value, ratio(10, 16));
  EXPECT_EQ(exact_interval_prob(WeightedSum({1, 1, 1, 1}), 1, 1), ratio(10, 16));

  const auto one = max_interval_prob(WeightedSum({1}), 0);
  EXPECT_EQ(one.h, -1);
  EXPECT_EQ(one.value, ratio(1, 2));

  for (std::int64_t k : {1, 2, 7}) {
    const auto r = max_interval_prob(WeightedSum({k}), k);
    EXPECT_EQ(r.value, ratio(1, 1));
    EXPECT_EQ(r.h, 0);
  }

  const auto mixed = max_interval_prob(WeightedSum({1, 3, 1, 3, 3}), 2);
  EXPECT_EQ(mixed.h, -3);
  EXPECT_EQ(mixed.value, ratio(12, 32));
}

TEST(MaxInterval, MatchesEnumeration) {
  const std::vector<std::int64_t> a{2, 5, 1, 1, 3};
  const WeightedSum w(a);
  for (std::int64_t delta : {0, 1, 3}) {
    Rational best = -1;
    std::int64_t arg = 0;
    for (std::int64_t h = -w.support() - delta; h <= w.support() + delta; ++h) {
      const auto p = oracle_prob(a, delta, h);
      if (p > best) {
        best = p;
        arg = h;
      }
    }
    const auto r = max_interval_prob(w, delta);
    EXPECT_EQ(r.value, best);
    EXPECT_EQ(r.h, arg);
  }
}

TEST(MonteCarlo, AgreesWithExact) {
  const WeightedSum w({1, 1, 1, 1});
  const auto r = mc_interval_prob(w, 1, 0, 1'000'000, 17, 2);
  EXPECT_EQ(r.samples, 1'000'000u);
  EXPECT_NEAR(r.estimate, 0.375, 3 * r.std_error);
  EXPECT_NEAR(r.std_error, std::sqrt(r.estimate * (1 - r.estimate) / 1e6), 1e-12);
}

TEST(MonteCarlo, DeterministicAndWorkerInvariant) {
  const WeightedSum w({3, 1, 4, 1, 5, 9, 2, 6});
  const auto a = mc_interval_prob(w, 2, 1, 300'000, 99, 1);
  const auto b = mc_interval_prob(w, 2, 1, 300'000, 99, 1);
  const auto c = mc_interval_prob(w, 2, 1, 300'000, 99, 5);
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_EQ(a.hits, c.hits);
  EXPECT_EQ(a.estimate, c.estimate);
  EXPECT_NE(a.hits, mc_interval_prob(w, 2, 1, 300'000, 100, 1).hits);
}

TEST(MonteCarlo, SingleSample) {
  const auto r = mc_interval_prob(WeightedSum({1, 1}), 0, 0, 1, 3);
  EXPECT_TRUE(r.estimate == 0.0 || r.estimate == 1.0);
  EXPECT_THROW(mc_interval_prob(WeightedSum({1}), 0, 0, 0, 3), std::invalid_argument);
}

TEST(Scaling, UnitWeights) {
  const std::vector<std::size_t> ns{16, 64, 256};
  const auto rows = lemma_scaling_report(ns, unit_weights(), 1, 0);
  ASSERT_EQ(rows.size(), 3u);
  // C(16,8) + C(16,7) over 2^16.
  EXPECT_EQ(rows[0].value, ratio(12155, 32768));
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    EXPECT_LE(static_cast<double>(rows[k + 1].value / rows[k].value), 0.6);
  }
  const double limit = 2.0 * std::sqrt(2.0 / M_PI);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.normalized, r.value_double * std::sqrt(static_cast<double>(r.n)), 1e-12);
    EXPECT_LT(r.normalized, limit);
    EXPECT_GT(r.normalized, 1.4);
  }
  EXPECT_NEAR(rows[0].normalized, 1.4837646484375, 1e-12);
  EXPECT_NEAR(rows[2].normalized, 1.5880324035458009, 1e-9);
}

TEST(Scaling, SingleTermAndMixed) {
  const std::vector<std::size_t> one{1};
  const auto r = lemma_scaling_report(one, unit_weights(), 1, 0);
  EXPECT_EQ(r[0].value, ratio(1, 1));
  EXPECT_LE(r[0].normalized, 1.0);

  const std::vector<std::size_t> ns{8, 32, 128};
  const auto mixed = lemma_scaling_report(ns, weights_from({1, 3}), 2, 4);
  for (const auto& row : mixed) {
    EXPECT_TRUE(std::isfinite(row.normalized));
    EXPECT_GT(row.value, 0);
    EXPECT_LE(row.value, 1);
  }
  const auto again = lemma_scaling_report(ns, weights_from({1, 3}), 2, 4);
  for (std::size_t k = 0; k < ns.size(); ++k) EXPECT_EQ(mixed[k].value, again[k].value);
  EXPECT_THROW(lemma_scaling_report(ns, unit_weights(), 0, 0), std::invalid_argument);
}
