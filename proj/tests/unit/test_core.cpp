#include <gtest/gtest.h>

#include <sstream>
#include <stdexcept>

#include "isingfix/assignment.hpp"
#include "isingfix/generators.hpp"
#include "isingfix/instance.hpp"
#include "isingfix/instance_json.hpp"
#include "isingfix/error.hpp"
#include "naive.hpp"

using namespace isingfix;

namespace {

Assignment spins(std::initializer_list<int> s) {
  std::vector<int> v(s);
  return Assignment::from_spins(v);
}

}  // namespace

TEST(Assignment, BitsAndSpins) {
  auto a = Assignment::from_bit_string("1001");
  EXPECT_EQ(a.size(), 4u);
  EXPECT_EQ(a.spin(0), 1);
  EXPECT_EQ(a.spin(1), -1);
  EXPECT_EQ(a.mask(), 0b1001u);
  EXPECT_EQ(a.bit_string(), "1001");
  a.flip(1);
  EXPECT_EQ(a.bit_string(), "1101");
  EXPECT_EQ(a.count_up(), 3u);
  EXPECT_THROW(Assignment::from_bit_string("10x"), std::invalid_argument);
}

TEST(Assignment, LexicographicOrder) {
  EXPECT_TRUE(Assignment::from_bit_string("0011") < Assignment::from_bit_string("0101"));
  EXPECT_FALSE(Assignment::from_bit_string("1000") < Assignment::from_bit_string("0111"));
  EXPECT_TRUE(mask::lex_less(Assignment::from_bit_string("0011").mask(), Assignment::from_bit_string("0101").mask()));
  EXPECT_FALSE(mask::lex_less(5, 5));
}

TEST(Assignment, LongVectors) {
  Assignment a(130);
  a.set_spin(129, 1);
  a.set_spin(64, 1);
  EXPECT_EQ(a.count_up(), 2u);
  Assignment b(130);
  EXPECT_EQ(a.hamming(b), 2u);
  EXPECT_TRUE(b < a);
  EXPECT_THROW(a.mask(), std::exception);
}

TEST(Instance, EnergyExamples) {
  const auto csse = gen_csse(4);
  EXPECT_EQ(energy(csse, spins({1, 1, -1, -1})), 8);
  const IsingInstance single(1, {1}, {});
  EXPECT_EQ(energy(single, spins({1})), 1);
  const auto col = gen_column(1, 4, ColumnTargets::kZeros);
  EXPECT_EQ(energy(col.inst, spins({1, 1, -1, -1})), 0);
}

TEST(Instance, LocalFieldExamples) {
  const IsingInstance pair(2, {0, 0}, {{0, 1, 3}});
  EXPECT_EQ(local_field(pair, spins({1, 1}), 0), 3);
  EXPECT_EQ(local_field(gen_csse(4), spins({1, 1, -1, -1}), 0), -2);
  const IsingInstance five(1, {5}, {});
  EXPECT_EQ(local_field(five, spins({-1}), 0), 5);
  EXPECT_EQ(local_field(five, spins({1}), 0), 5);
  EXPECT_THROW(local_field(five, spins({1}), 1), std::out_of_range);
}

TEST(Instance, FlipDeltaExamples) {
  const IsingInstance one(1, {1}, {});
  EXPECT_EQ(flip_delta(one, spins({-1}), 0), 2);
  EXPECT_EQ(flip_delta(one, spins({1}), 0), -2);
}

TEST(Instance, FlipDeltaMatchesRecomputationExhaustively) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = gen_random({10, 0.4, -7, 7, -7, 7}, seed);
    for (std::uint64_t m = 0; m < 1024; m += 7) {
      const auto a = Assignment::from_mask(m, 10);
      EXPECT_EQ(energy(inst, a), oracle::energy(inst, m));
      for (int i = 0; i < 10; ++i) {
        auto b = a;
        b.flip(static_cast<std::size_t>(i));
        ASSERT_EQ(energy(inst, b) - energy(inst, a), flip_delta(inst, a, i));
      }
    }
  }
}

TEST(Instance, LocalMinimumExamples) {
  const auto csse = gen_csse(4);
  EXPECT_TRUE(is_local_minimum(csse, spins({1, 1, -1, -1})));
  EXPECT_FALSE(is_local_minimum(csse, spins({1, 1, 1, -1})));
  const IsingInstance zero(4, {0, 0, 0, 0}, {});
  for (std::uint64_t m = 0; m < 16; ++m) EXPECT_FALSE(is_local_minimum(zero, Assignment::from_mask(m, 4)));
}

TEST(Instance, LocalMinimumIffFieldsOpposeSpins) {
  const auto inst = gen_random({8, 0.5, -3, 3, -2, 2}, 11);
  for (std::uint64_t m = 0; m < 256; ++m) {
    const auto a = Assignment::from_mask(m, 8);
    bool all = true;
    for (int i = 0; i < 8; ++i) all = all && a.spin(static_cast<std::size_t>(i)) * local_field(inst, a, i) < 0;
    EXPECT_EQ(is_local_minimum(inst, a), all);
  }
}

TEST(Instance, Validation) {
  EXPECT_THROW(IsingInstance(2, {0, 0}, {{0, 0, 1}}), std::invalid_argument);
  EXPECT_THROW(IsingInstance(2, {0, 0}, {{0, 2, 1}}), std::invalid_argument);
  EXPECT_THROW(IsingInstance(2, {0, 0}, {{1, 0, 1}}), std::invalid_argument);
  EXPECT_THROW(IsingInstance(2, {0, 0}, {{0, 1, 1}, {0, 1, 2}}), std::invalid_argument);
  EXPECT_THROW(IsingInstance(2, {0}, {}), std::invalid_argument);
  const Weight big = std::numeric_limits<Weight>::max() / 2;
  EXPECT_THROW(IsingInstance(2, {big, big}, {{0, 1, big}}), std::overflow_error);
  const IsingInstance dropped(3, {0, 0, 0}, {{0, 1, 0}, {1, 2, 4}});
  EXPECT_EQ(dropped.couplings().size(), 1u);
}

TEST(Instance, BuilderMergesBothOrders) {
  InstanceBuilder b(3);
  b.add_coupling(2, 0, 3).add_coupling(0, 2, -1).add_field(1, 4).add_constant(7);
  const auto inst = b.build();
  EXPECT_EQ(inst.coupling(0, 2), 2);
  EXPECT_EQ(inst.coupling(2, 0), 2);
  EXPECT_EQ(inst.h(1), 4);
  EXPECT_EQ(inst.c0(), 7);
}

TEST(DegreeGraph, Examples) {
  const auto k4 = degree_graph(gen_csse(4));
  EXPECT_EQ(k4.max_degree, 3);
  EXPECT_EQ(k4.edge_count, 6u);
  const auto empty = degree_graph(IsingInstance(5, std::vector<Weight>(5, 1), {}));
  EXPECT_EQ(empty.max_degree, 0);
  EXPECT_EQ(empty.edge_count, 0u);
  const auto col = degree_graph(gen_column(2, 2, ColumnTargets::kZeros).inst);
  for (int d : col.degree) EXPECT_EQ(d, 2);
}

TEST(DegreeGraph, EdgeCountMatchesCouplings) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = gen_random({15, 0.3}, seed);
    const auto g = degree_graph(inst);
    EXPECT_EQ(g.edge_count, inst.couplings().size());
    std::size_t sum = 0;
    for (std::size_t v = 0; v < g.size(); ++v) {
      EXPECT_EQ(static_cast<std::size_t>(g.degree[v]), g.adjacency[v].size());
      sum += g.adjacency[v].size();
    }
    EXPECT_EQ(sum, 2 * g.edge_count);
  }
}

TEST(Instance, InducedSubinstance) {
  const auto inst = gen_csse(4);
  const std::vector<int> keep{1, 3};
  const auto sub = induced_subinstance(inst, keep);
  EXPECT_EQ(sub.inst.size(), 2u);
  EXPECT_EQ(sub.inst.coupling(0, 1), 2);
  EXPECT_EQ(sub.to_parent, keep);
}

TEST(InstanceJson, RoundTrip) {
  const auto inst = gen_random({9, 0.5}, 3);
  const auto doc = instance_to_json(inst);
  const auto back = instance_from_json(doc);
  EXPECT_EQ(digest(back), digest(inst));
  EXPECT_EQ(digest_hex(inst).size(), 16u);
  std::istringstream in(doc.dump());
  EXPECT_EQ(digest(read_instance_json(in)), digest(inst));
}

TEST(InstanceJson, Errors) {
  EXPECT_THROW(instance_from_json(nlohmann::json::parse(R"({"h": [0, 0]})")), ParseError);
  const auto bare = instance_from_json(nlohmann::json::parse(R"({"n": 2})"));
  EXPECT_EQ(bare.size(), 2u);
  EXPECT_EQ(bare.c0(), 0);
  EXPECT_THROW(instance_from_json(nlohmann::json::parse(R"({"n": 2, "h": [0], "J": []})")), ParseError);
  std::istringstream bad("{not json");
  EXPECT_THROW(read_instance_json(bad), ParseError);
  const auto ok = instance_from_json(nlohmann::json::parse(R"({"n": 2, "h": [1, 0], "J": [[0, 1, 3]], "meta": 1})"));
  EXPECT_EQ(ok.coupling(0, 1), 3);
}
