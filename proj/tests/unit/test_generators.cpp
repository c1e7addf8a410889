#include <gtest/gtest.h>

#include "isingfix/error.hpp"
#include "isingfix/generators.hpp"
#include "isingfix/landscape.hpp"
#include "naive.hpp"

using namespace isingfix;

namespace {

std::size_t strict_minima(const IsingInstance& inst) { return oracle::k_minima(inst, 1).size(); }

}  // namespace

TEST(Csse, Structure) {
  const auto inst = gen_csse(4);
  EXPECT_EQ(inst.size(), 4u);
  EXPECT_EQ(inst.couplings().size(), 6u);
  EXPECT_EQ(inst.c0(), 12);
  EXPECT_THROW(gen_csse(5), std::invalid_argument);
  EXPECT_THROW(gen_csse(0), std::invalid_argument);
}

TEST(Csse, LocalMinimaCounts) {
  EXPECT_EQ(strict_minima(gen_csse(4)), 6u);
  EXPECT_EQ(strict_minima(gen_csse(2)), 2u);
  EXPECT_EQ(strict_minima(gen_csse(6)), 20u);
  const auto two = oracle::k_minima(gen_csse(2), 1);
  EXPECT_EQ(two, (std::vector<std::uint64_t>{0b01, 0b10}));
}

TEST(Csse, MinimaAreBalanced) {
  for (auto m : oracle::k_minima(gen_csse(8), 1)) EXPECT_EQ(std::popcount(m), 4);
}

TEST(Multicopy, Counts) {
  const auto two = gen_multicopy(2, 4);
  EXPECT_EQ(two.size(), 8u);
  EXPECT_EQ(degree_graph(two).max_degree, 3);
  EXPECT_EQ(strict_minima(two), 36u);
  EXPECT_EQ(digest(gen_multicopy(1, 4)), digest(gen_csse(4)));
  EXPECT_EQ(enumerate_k_minima(gen_multicopy(3, 4), 1).minima_count, 216u);
  EXPECT_EQ(digest(wcnf_to_ising(gen_multicopy_wcnf(3, 4))), digest(gen_multicopy(3, 4)));
  EXPECT_THROW(gen_multicopy(0, 4), std::invalid_argument);
}

TEST(Column, Structure) {
  for (auto [f, l] : {std::pair{1, 4}, {2, 2}, {2, 4}, {3, 2}, {2, 6}}) {
    const auto ci = gen_column(f, l, ColumnTargets::kZeros);
    std::size_t n = 1;
    for (int a = 0; a < f; ++a) n *= static_cast<std::size_t>(l);
    EXPECT_EQ(ci.inst.size(), n);
    EXPECT_EQ(ci.columns.size(), static_cast<std::size_t>(f) * n / static_cast<std::size_t>(l));
    std::vector<int> membership(n, 0);
    for (const auto& c : ci.columns) {
      EXPECT_EQ(c.size(), static_cast<std::size_t>(l));
      for (int v : c) ++membership[static_cast<std::size_t>(v)];
    }
    for (int m : membership) EXPECT_EQ(m, f);
    for (int d : degree_graph(ci.inst).degree) EXPECT_EQ(d, f * (l - 1));
  }
  EXPECT_THROW(gen_column(2, 3, ColumnTargets::kZeros), std::invalid_argument);
  EXPECT_THROW(gen_column(0, 2, ColumnTargets::kZeros), std::invalid_argument);
  EXPECT_THROW(gen_column(21, 2, ColumnTargets::kZeros), LimitError);
}

TEST(Column, F1IsScaledCsse) {
  // E4 = 4 (sum S)^2 against csse's (sum S)^2 + const: same landscape.
  const auto col = gen_column(1, 4, ColumnTargets::kZeros).inst;
  const auto csse = gen_csse(4);
  for (std::uint64_t m = 0; m < 16; ++m) {
    EXPECT_EQ(oracle::energy(col, m), 4 * (oracle::energy(csse, m) - 8));
  }
}

TEST(Column, EnergyIsSumOfSquares) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto ci = gen_column(2, 4, ColumnTargets::kSampled, seed);
    for (std::uint64_t m = 0; m < (1U << 16); m += 97) {
      Weight e = 0;
      for (std::size_t c = 0; c < ci.columns.size(); ++c) {
        Weight s = 0;
        for (int v : ci.columns[c]) s += oracle::spin_of(m, v);
        e += 4 * (s - ci.targets[c]) * (s - ci.targets[c]);
      }
      ASSERT_EQ(oracle::energy(ci.inst, m), e);
    }
  }
}

TEST(Column, ZeroEnergyExamples) {
  const auto c22 = gen_column(2, 2, ColumnTargets::kZeros);
  const auto z22 = zero_energy_assignments(c22);
  ASSERT_EQ(z22.size(), 2u);
  EXPECT_EQ(z22[0].hamming(z22[1]), 4u);
  EXPECT_EQ(zero_energy_assignments(gen_column(1, 4, ColumnTargets::kZeros)).size(), 6u);
  const auto c24 = gen_column(2, 4, ColumnTargets::kZeros);
  const auto z24 = zero_energy_assignments(c24, 26, 4);
  EXPECT_EQ(z24.size(), 90u);
  std::size_t brute = 0;
  for (auto e : oracle::all_energies(c24.inst)) brute += e == 0;
  EXPECT_EQ(brute, 90u);
  EXPECT_TRUE(std::is_sorted(z24.begin(), z24.end()));
}

TEST(Column, SampledPlantsAssignment) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ci = gen_column(2, 2, ColumnTargets::kSampled, seed);
    ASSERT_TRUE(ci.planted.has_value());
    EXPECT_EQ(energy(ci.inst, *ci.planted), 0);
    const auto zs = zero_energy_assignments(ci);
    EXPECT_NE(std::find(zs.begin(), zs.end(), *ci.planted), zs.end());
    for (Weight t : ci.targets) EXPECT_EQ(((t % 2) + 2) % 2, 0);
  }
}

TEST(Column, SampledIsReproducible) {
  const auto a = gen_column(3, 2, ColumnTargets::kSampled, 9);
  const auto b = gen_column(3, 2, ColumnTargets::kSampled, 9);
  EXPECT_EQ(digest(a.inst), digest(b.inst));
  EXPECT_EQ(*a.planted, *b.planted);
}

TEST(Random, ReproducibleAndInRange) {
  const RandomInstanceSpec spec{12, 0.5, -3, 3, -2, 2};
  const auto a = gen_random(spec, 5);
  EXPECT_EQ(digest(a), digest(gen_random(spec, 5)));
  EXPECT_NE(digest(a), digest(gen_random(spec, 6)));
  for (const auto& c : a.couplings()) {
    EXPECT_NE(c.w, 0);
    EXPECT_GE(c.w, -3);
    EXPECT_LE(c.w, 3);
  }
  for (int i = 0; i < 12; ++i) {
    EXPECT_GE(a.h(i), -2);
    EXPECT_LE(a.h(i), 2);
  }
}

TEST(Regular, DegreesAreExact) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = gen_random_regular(20, 3, seed);
    for (int d : degree_graph(inst).degree) EXPECT_EQ(d, 3);
  }
  EXPECT_THROW(gen_random_regular(5, 3, 0), std::invalid_argument);
}

TEST(Edgeless, Fields) {
  const auto z = gen_edgeless(6);
  EXPECT_TRUE(z.couplings().empty());
  for (int i = 0; i < 6; ++i) EXPECT_EQ(z.h(i), 0);
  const auto r = gen_edgeless(6, 3, 1, 4);
  for (int i = 0; i < 6; ++i) {
    EXPECT_GE(r.h(i), 1);
    EXPECT_LE(r.h(i), 4);
  }
}
