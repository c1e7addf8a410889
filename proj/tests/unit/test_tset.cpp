#include <gtest/gtest.h>

#include <cmath>

#include "isingfix/error.hpp"
#include "isingfix/generators.hpp"
#include "isingfix/tset.hpp"
#include "naive.hpp"

using namespace isingfix;

namespace {

Weight absw(Weight w) { return w < 0 ? -w : w; }

// Conditions recomputed from the definitions with a dense matrix; strong
// edges are taken from the certificate and checked for admissibility.
void expect_certificate_consistent(const IsingInstance& inst, const TSetCertificate& cert,
                                   const std::optional<TConstraint>& constraint = std::nullopt) {
  const int n = static_cast<int>(inst.size());
  const auto J = oracle::dense(inst);
  std::vector<char> in_t(n, 0);
  for (int v : cert.T) in_t[v] = 1;
  bool deg_ok = true, strong_ok = true, load_ok = true;
  std::vector<int> attached(n, 0);
  std::map<int, std::vector<int>> strong(cert.strong_edges.begin(), cert.strong_edges.end());
  for (int i : cert.T) {
    int internal = 0;
    Weight mx = 0;
    for (int j = 0; j < n; ++j) {
      if (j != i && in_t[j] && J[i][j] != 0) {
        ++internal;
        mx = std::max(mx, absw(J[i][j]));
      }
    }
    deg_ok = deg_ok && internal <= cert.thresholds.d_T + 1e-9;
    const bool needs = constraint.has_value() || internal > 0;
    if (!needs) continue;
    const auto& picked = strong[i];
    if (static_cast<std::int64_t>(picked.size()) != cert.thresholds.d_TTbar) strong_ok = false;
    for (int j : picked) {
      EXPECT_FALSE(in_t[j]);
      EXPECT_NE(J[i][j], 0);
      EXPECT_GE(absw(J[i][j]), mx);
      ++attached[j];
    }
  }
  for (int i : cert.T) {
    std::int64_t load = 0;
    for (int j = 0; j < n; ++j) {
      if (j != i && !in_t[j] && J[i][j] != 0) load += attached[j];
    }
    load_ok = load_ok && load <= cert.thresholds.delta;
  }
  if (cert.checks.strong_edges) EXPECT_TRUE(strong_ok);
  EXPECT_EQ(cert.checks.internal_degree, deg_ok);
  if (cert.checks.strong_edges) EXPECT_EQ(cert.checks.strong_load, load_ok);
  if (constraint) {
    bool t12_ok = true;
    const auto sizes = static_cast<Weight>(constraint->t1.size() + constraint->t2.size());
    for (int i : cert.T) {
      Weight s = 0;
      for (int j : constraint->t1) s += absw(J[i][j]);
      for (int j : constraint->t2) s += absw(J[i][j]);
      t12_ok = t12_ok && s * static_cast<Weight>(constraint->v0_size) <= 99 * constraint->j_max * sizes;
    }
    ASSERT_TRUE(cert.checks.t12_coupling.has_value());
    EXPECT_EQ(*cert.checks.t12_coupling, t12_ok);
  }
}

}  // namespace

TEST(Thresholds, DefaultsAndClamp) {
  const auto th = resolve_thresholds(gen_csse(8), {});
  EXPECT_EQ(th.d, 7);
  EXPECT_DOUBLE_EQ(th.epsilon, std::log2(7.0) / 7.0);
  EXPECT_EQ(th.d_TTbar, 1);
  EXPECT_TRUE(th.d_TTbar_clamped);
  EXPECT_EQ(th.delta, 99 * 7);
  const auto edgeless = resolve_thresholds(gen_edgeless(4), {});
  EXPECT_DOUBLE_EQ(edgeless.epsilon, 0.5);
  TParams p;
  p.epsilon = 0.001;
  p.c_dTbar = 1;
  EXPECT_EQ(resolve_thresholds(gen_csse(8), p).d_TTbar, 1000);
  p.epsilon = 1.5;
  EXPECT_THROW(resolve_thresholds(gen_csse(8), p), std::invalid_argument);
}

TEST(CheckT, EdgelessPassesVacuously) {
  const auto inst = gen_edgeless(10);
  const std::vector<int> T{0, 3, 4, 9};
  const auto cert = check_T(inst, T, {});
  EXPECT_TRUE(cert.success);
  EXPECT_TRUE(cert.strong_edges.empty());
}

TEST(CheckT, CompleteGraphHandValues) {
  // K8, T = 5 vertices, epsilon 1/4: d = 7, d_T = 173.25, d_TTbar clamps
  // to 1; each member has internal degree 4 <= d_T, 3 equal-weight outside
  // neighbors, picks the lowest (5), and sees load 5 <= 693.
  TParams p;
  p.epsilon = 0.25;
  const std::vector<int> T{0, 1, 2, 3, 4};
  const auto inst = gen_csse(8);
  const auto cert = check_T(inst, T, p);
  EXPECT_DOUBLE_EQ(cert.thresholds.d_T, 173.25);
  EXPECT_EQ(cert.thresholds.d_TTbar, 1);
  EXPECT_TRUE(cert.checks.internal_degree);
  EXPECT_TRUE(cert.checks.strong_edges);
  EXPECT_TRUE(cert.checks.strong_load);
  EXPECT_TRUE(cert.success);
  ASSERT_EQ(cert.strong_edges.size(), 5u);
  for (const auto& [i, js] : cert.strong_edges) EXPECT_EQ(js, (std::vector<int>{5}));
  for (const auto& m : cert.members) {
    EXPECT_EQ(m.internal_degree, 4);
    EXPECT_EQ(m.qualifying, 3);
    EXPECT_EQ(m.strong_load, 5);
  }
  expect_certificate_consistent(inst, cert);
}

TEST(CheckT, FailuresAreReported) {
  TParams p;
  p.epsilon = 0.01;
  p.c_dT = 1;
  p.c_dTbar = 1;
  const auto inst = gen_csse(8);
  const std::vector<int> T{0, 1, 2};
  const auto cert = check_T(inst, T, p);
  EXPECT_FALSE(cert.checks.internal_degree);
  EXPECT_FALSE(cert.checks.strong_edges);
  EXPECT_FALSE(cert.success);
  EXPECT_FALSE(cert.failure.empty());
}

TEST(CheckT, SingleVertexPasses) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = gen_random({12, 0.5}, seed);
    const std::vector<int> T{static_cast<int>(seed)};
    EXPECT_TRUE(check_T(inst, T, {}).success);
  }
}

TEST(CheckT, RejectsBadInput) {
  const auto inst = gen_csse(4);
  EXPECT_THROW(check_T(inst, std::vector<int>{0, 0}, {}), std::invalid_argument);
  EXPECT_THROW(check_T(inst, std::vector<int>{4}, {}), std::invalid_argument);
  TConstraint c{{0}, {}, 10, 3};
  EXPECT_THROW(check_T(inst, std::vector<int>{0, 1}, {}, c), std::invalid_argument);
}

TEST(CheckT, GreedyPrefersHeavierCouplings) {
  InstanceBuilder b(4);
  b.add_coupling(0, 1, 1).add_coupling(0, 2, 3).add_coupling(0, 3, -5);
  const auto inst = b.build();
  const auto cert = check_T(inst, std::vector<int>{0, 1}, {});
  // Vertex 1 has no outside neighbor, so only vertex 0 carries an edge.
  ASSERT_EQ(cert.strong_edges.size(), 1u);
  EXPECT_EQ(cert.strong_edges[0].first, 0);
  EXPECT_EQ(cert.strong_edges[0].second, (std::vector<int>{3}));
  EXPECT_FALSE(cert.checks.strong_edges);
}

TEST(CheckT, RandomStrongEdgesStayAdmissible) {
  TParams p;
  p.strong_edges = StrongEdgeRule::kRandom;
  p.strong_edge_seed = 5;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = gen_random({16, 0.4}, seed);
    const auto cert = find_T_randomized(inst, p, seed, 16);
    expect_certificate_consistent(inst, cert);
  }
}

TEST(CheckT, ConstrainedFourthCondition) {
  const auto inst = gen_random_regular(16, 4, 3);
  const TConstraint c{{0, 1}, {14, 15}, 20, 12};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::vector<int> pool;
    for (int v = 2; v < 14; ++v) pool.push_back(v);
    const auto cert = find_T_randomized(inst, {}, seed, 8, pool, c);
    EXPECT_TRUE(cert.constrained);
    for (int v : cert.T) EXPECT_TRUE(v >= 2 && v < 14);
    expect_certificate_consistent(inst, cert, c);
    const auto again = check_T(inst, cert.T, {}, c);
    EXPECT_EQ(again.checks.all(), cert.checks.all());
  }
}

TEST(CheckT, ConstrainedModeNeedsNonzeroStrongEdges) {
  // Vertex 0 has no couplings: fine unconstrained, fails when constrained.
  InstanceBuilder b(4);
  b.add_coupling(1, 2, 1).add_coupling(2, 3, 1);
  const auto inst = b.build();
  EXPECT_TRUE(check_T(inst, std::vector<int>{0}, {}).success);
  const TConstraint c{{3}, {}, 2, 3};
  EXPECT_FALSE(check_T(inst, std::vector<int>{0}, {}, c).checks.strong_edges);
}

TEST(FindTRandomized, EdgelessSize) {
  TParams p;
  p.epsilon = 0.1;
  const auto cert = find_T_randomized(gen_edgeless(100), p, 1, 16);
  EXPECT_TRUE(cert.success);
  EXPECT_GE(cert.T.size(), 5u);
  EXPECT_LE(cert.T.size(), 25u);
}

TEST(FindTRandomized, MulticopyValidates) {
  const auto inst = gen_multicopy(25, 4);
  TParams p;
  p.epsilon = std::log2(3.0) / 3.0;
  const auto cert = find_T_randomized(inst, p, 7, 32);
  EXPECT_TRUE(cert.success);
  EXPECT_TRUE(check_T(inst, cert.T, p).success);
  expect_certificate_consistent(inst, cert);
}

TEST(FindTRandomized, ZeroRoundsFails) {
  const auto cert = find_T_randomized(gen_csse(10), {}, 1, 0);
  EXPECT_FALSE(cert.success);
  EXPECT_TRUE(cert.T.empty());
  EXPECT_FALSE(cert.failure.empty());
}

TEST(FindTRandomized, Reproducible) {
  const auto inst = gen_random({30, 0.2}, 2);
  const auto a = find_T_randomized(inst, {}, 42, 8);
  const auto b = find_T_randomized(inst, {}, 42, 8);
  EXPECT_EQ(a.T, b.T);
  EXPECT_EQ(a.attempts, b.attempts);
}

TEST(FindTDeterministic, Examples) {
  const auto e = find_T_deterministic(gen_edgeless(6), {}, 3);
  EXPECT_TRUE(e.success);
  EXPECT_EQ(e.T, (std::vector<int>{0, 1, 2}));
  EXPECT_FALSE(find_T_deterministic(gen_edgeless(6), {}, 0).success);

  // K6: d = 5, d_T = 99 * log2(5) = 229.9, so every subset passes degree;
  // with all six vertices inside there is no outside strong edge.
  const auto full = find_T_deterministic(gen_csse(6), {}, 6);
  EXPECT_FALSE(full.success);
  const auto five = find_T_deterministic(gen_csse(6), {}, 5);
  EXPECT_TRUE(five.success);
  EXPECT_EQ(five.T, (std::vector<int>{0, 1, 2, 3, 4}));
  EXPECT_THROW(find_T_deterministic(gen_edgeless(25), {}, 2), LimitError);
}

TEST(T1T2, TargetSize) {
  const auto g = degree_graph(gen_random_regular(20, 4, 1));
  EXPECT_EQ(t1t2_target_size(g, 0.5), static_cast<std::size_t>(std::floor(0.5 * 20 * std::log(4.0) / 4.0)));
  EXPECT_EQ(t1t2_target_size(degree_graph(gen_edgeless(10)), 0.5), 0u);
  EXPECT_THROW(t1t2_target_size(g, 1.0), std::invalid_argument);
}

TEST(T1T2, Edgeless) {
  const auto g = degree_graph(gen_edgeless(10));
  const auto r = find_T1T2(g, 3, T1T2Method::kDeterministic);
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.t1, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(r.t2, (std::vector<int>{3, 4, 5}));
}

TEST(T1T2, CompleteGraphFails) {
  const auto g = degree_graph(gen_csse(10));
  for (std::size_t target : {1u, 2u, 3u}) {
    const auto r = find_T1T2(g, target);
    EXPECT_FALSE(r.success);
    EXPECT_FALSE(r.failure.empty());
    EXPECT_TRUE(r.t1.empty());
  }
}

TEST(T1T2, TwoCliques) {
  const auto g = degree_graph(gen_multicopy(2, 6));
  const auto r = find_T1T2(g, 2, T1T2Method::kDeterministic);
  ASSERT_TRUE(r.success);
  auto block = [](int v) { return v / 6; };
  EXPECT_EQ(block(r.t1[0]), block(r.t1[1]));
  EXPECT_EQ(block(r.t2[0]), block(r.t2[1]));
  EXPECT_NE(block(r.t1[0]), block(r.t2[0]));
}

TEST(T1T2, NoCrossingEdgesOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = degree_graph(gen_random_regular(24, 3, seed));
    const auto target = t1t2_target_size(g, 0.5);
    const auto r = find_T1T2(g, target, T1T2Method::kAuto, seed);
    ASSERT_TRUE(r.success);
    EXPECT_EQ(r.t1.size(), target);
    EXPECT_EQ(r.t2.size(), target);
    for (int u : r.t1) {
      for (int v : r.t2) {
        EXPECT_NE(u, v);
        EXPECT_FALSE(g.adjacent(u, v));
      }
    }
  }
}

TEST(NonsparseGoodSet, Examples) {
  const auto e = good_set_nonsparse(gen_edgeless(20), 0.25, 1);
  EXPECT_TRUE(e.success);
  EXPECT_EQ(e.T, e.T0);

  const auto inst = gen_csse(16);
  const auto r = good_set_nonsparse(inst, 0.25, 3);
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.T0.size(), 4u);
  // All |J| equal: every j outside T0 is in the top tier, 12 >= 2.
  EXPECT_EQ(r.T, r.T0);

  const auto tiny = good_set_nonsparse(gen_csse(2), 0.5, 0);
  EXPECT_EQ(tiny.T0.size(), 1u);
  EXPECT_TRUE(tiny.success);
}

TEST(NonsparseGoodSet, MembersMeetTheirRequirement) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = gen_random({24, 0.5}, seed);
    const auto r = good_set_nonsparse(inst, 0.2, seed);
    const auto J = oracle::dense(inst);
    std::vector<char> in0(24, 0);
    for (int v : r.T0) in0[v] = 1;
    for (int i : r.T) {
      Weight mx = 0;
      for (int k : r.T0) {
        if (k != i) mx = std::max(mx, absw(J[i][k]));
      }
      int count = 0;
      for (int j = 0; j < 24; ++j) {
        if (!in0[j] && absw(J[i][j]) >= mx) ++count;
      }
      EXPECT_GE(2 * count, 5);
    }
  }
}
