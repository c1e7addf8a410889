#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isingfix/instance.hpp"

namespace isingfix {

enum class StrongEdgeRule {
  /// Descending |J_ij|, ties to the lower index.
  kGreedy,
  /// Uniform choice among qualifying neighbors, seeded per vertex.
  kRandom,
};

/// Constants of the sparse T-set conditions. An epsilon of 0 selects the
/// default log2(d)/d for maximum degree d (1/2 when d < 2).
struct TParams {
  double epsilon = 0.0;
  int c_dT = 99;
  int c_dTbar = 99;
  int c_Delta = 99;
  /// Constant of the T1/T2 coupling bound (constrained mode).
  int c_T12 = 99;
  /// Randomized search accepts |T| >= target_fraction * epsilon * |pool|.
  double target_fraction = 0.5;
  StrongEdgeRule strong_edges = StrongEdgeRule::kGreedy;
  std::uint64_t strong_edge_seed = 0;
};

/// TParams evaluated on a concrete instance.
struct TThresholds {
  int d = 0;
  double epsilon = 0.0;
  /// Internal-degree bound c_dT * epsilon * d.
  double d_T = 0.0;
  /// floor(1 / (c_dTbar * epsilon)), raised to 1 when it would be 0.
  std::int64_t d_TTbar = 1;
  bool d_TTbar_clamped = false;
  /// Strong-edge load bound c_Delta * d.
  std::int64_t delta = 0;
};

TThresholds resolve_thresholds(const IsingInstance& inst, const TParams& params);

/// Side information for the constrained mode: T must avoid t1 and t2, every
/// member needs d_TTbar strong edges with J_ij != 0 regardless of its
/// internal degree, and
///   sum_{j in t1 u t2} |J_ij| <= c_T12 * j_max * (|t1| + |t2|) / v0_size.
struct TConstraint {
  std::vector<int> t1;
  std::vector<int> t2;
  Weight j_max = 0;
  std::size_t v0_size = 0;
};

struct TChecks {
  bool internal_degree = true;
  bool strong_edges = true;
  bool strong_load = true;
  /// Present only in constrained mode.
  std::optional<bool> t12_coupling;

  bool all() const {
    return internal_degree && strong_edges && strong_load && t12_coupling.value_or(true);
  }
};

enum class TMethod { kChecked, kRandomized, kDeterministic };

/// Per-member diagnostics, aligned with TSetCertificate::T.
struct TMemberStats {
  int internal_degree = 0;
  int qualifying = 0;
  std::int64_t strong_load = 0;
  Weight t12_coupling = 0;
};

struct TSetCertificate {
  /// Sorted ascending.
  std::vector<int> T;
  /// (i, selected outside neighbors) for members that carry strong edges.
  std::vector<std::pair<int, std::vector<int>>> strong_edges;
  TParams params;
  TThresholds thresholds;
  TChecks checks;
  std::vector<TMemberStats> members;
  bool constrained = false;
  TMethod method = TMethod::kChecked;
  std::uint64_t seed = 0;
  int attempts = 0;
  /// check_T: all conditions hold. find_*: additionally T is nonempty and
  /// large enough.
  bool success = false;
  std::string failure;
};

/// Evaluates every condition for `T` and reports each; never throws on a
/// failing condition. Throws std::invalid_argument for indices out of range
/// or, in constrained mode, T intersecting t1/t2.
TSetCertificate check_T(const IsingInstance& inst, std::span<const int> T, const TParams& params,
                        const std::optional<TConstraint>& constraint = std::nullopt);

/// Sample T0 from `pool` (all vertices when empty) with inclusion
/// probability epsilon, label members good or bad, keep the good ones and
/// re-validate with check_T. Round r uses stream r of `seed`; after
/// `max_rounds` unsuccessful rounds the best certificate so far is returned
/// with success == false.
TSetCertificate find_T_randomized(const IsingInstance& inst, const TParams& params, std::uint64_t seed,
                                  int max_rounds, std::span<const int> pool = {},
                                  const std::optional<TConstraint>& constraint = std::nullopt);

/// First size-`size` subset in lexicographic order passing check_T.
/// Throws LimitError for n > 24.
TSetCertificate find_T_deterministic(const IsingInstance& inst, const TParams& params, int size,
                                     const std::optional<TConstraint>& constraint = std::nullopt);

enum class T1T2Method { kRandomized, kDeterministic, kAuto };

struct T1T2Result {
  std::vector<int> t1;
  std::vector<int> t2;
  std::size_t target = 0;
  bool success = false;
  int attempts = 0;
  T1T2Method method = T1T2Method::kAuto;
  std::string failure;
};

/// floor(alpha * n * ln(d) / d) for average degree d; 0 when d <= 1.
std::size_t t1t2_target_size(const DegreeGraph& graph, double alpha);

/// Two disjoint vertex sets of size `target` with no edge between them.
/// T1 is drawn (or enumerated), T2 is the lowest-indexed `target` vertices
/// outside T1 with no neighbor in T1. kAuto runs `rounds` random draws, then
/// the exhaustive search when n <= 24.
T1T2Result find_T1T2(const DegreeGraph& graph, std::size_t target, T1T2Method method = T1T2Method::kAuto,
                     std::uint64_t seed = 0, int rounds = 64);

struct NonsparseGoodSet {
  std::vector<int> T;
  std::vector<int> T0;
  double epsilon = 0.0;
  bool success = false;
  int attempts = 0;
};

/// Good set for the unbounded-degree argument: T0 is a uniform subset of
/// size floor(epsilon n); i in T0 is good when at least floor(1/epsilon)/2
/// variables j outside T0 have |J_ij| >= max_{k in T0} |J_ik|. Retries until
/// |T| >= floor(epsilon n)/2. epsilon 0 selects log2(n)/n.
NonsparseGoodSet good_set_nonsparse(const IsingInstance& inst, double epsilon, std::uint64_t seed,
                                    int max_rounds = 64);

const char* to_string(TMethod m);
const char* to_string(T1T2Method m);

}  // namespace isingfix
