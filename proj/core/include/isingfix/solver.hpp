#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "isingfix/assignment.hpp"
#include "isingfix/instance.hpp"
#include "isingfix/tset.hpp"

namespace isingfix {

/// Exact for n <= 64; accumulates 2^{|F|} over at most 2^62 outer assignments.
__extension__ typedef unsigned __int128 BigCount;

std::string to_string(BigCount value);

/// First-level effective Hamiltonian on T for a fixed assignment of the
/// complement.
struct EffectiveView {
  /// Sorted ascending.
  std::vector<int> T;
  /// Complement of T, ascending; `outer` holds their spins in this order.
  std::vector<int> outer_vars;
  Assignment outer;
  /// Aligned with T: h_i + sum_{j not in T} J_ij S_j.
  std::vector<Weight> h_eff;
  /// Aligned with T: sum_{j in T} |J_ij|.
  std::vector<Weight> h_max;
  /// |h_eff| >= h_max.
  std::vector<int> fixed;
  std::vector<int> free;
  /// Aligned with T: -sign(h_eff) for fixed variables (+1 when h_eff == 0),
  /// 0 for free ones.
  std::vector<int> forced;
};

/// `outer` is either a full-length assignment (entries on T ignored) or one
/// of length n - |T| listing the complement in ascending order. Throws
/// std::invalid_argument on any other length or a bad T.
EffectiveView effective_view(const IsingInstance& inst, std::span<const int> T, const Assignment& outer);

enum class SolveMethod { kBrute, kColoring, kEffective, kAvgDegree, kCombined };

const char* to_string(SolveMethod m);
/// Throws std::invalid_argument for unknown names.
SolveMethod parse_solve_method(const std::string& name);

struct SolveOptions {
  unsigned workers = 1;
  std::uint64_t seed = 0;
  /// Largest enumerated space (outer variables, branch set, T1, T2, or n for
  /// brute force) before LimitError.
  int max_bits = 30;
  /// Rounds for randomized T and T1/T2 searches.
  int rounds = 64;
  /// Automatic paths use the coloring baseline below this maximum degree.
  int min_degree = 16;
  TParams tparams;
};

struct SolveResult {
  Assignment best;
  Weight energy = 0;
  /// Assignments of the enumerated branch variables summed over outer
  /// assignments (2^n for brute force).
  std::uint64_t leaves_explored = 0;
  std::uint64_t outer_assignments = 0;
  /// Sum over outer assignments of 2^{|F|}, F = {|h_eff| < h_max}.
  BigCount z = 0;
  /// Outer assignments where a variable with |h_eff| == h_max > 0 was
  /// branched; leaves_explored == z iff this is 0.
  std::uint64_t tie_branches = 0;
  /// T1 and T2 assignments evaluated across all leaves.
  std::uint64_t split_evaluations = 0;
  SolveMethod method = SolveMethod::kBrute;
  /// Route actually taken, e.g. "effective", "coloring", "combined",
  /// "combined/low-degree", "combined->effective".
  std::string path;
  std::vector<int> T;
  std::vector<int> t1;
  std::vector<int> t2;
};

/// Gray-code scan over all 2^n assignments.
SolveResult solve_brute(const IsingInstance& inst, const SolveOptions& options = {});

/// Enumerates the complement of cert.T, fixes variables with
/// |h_eff| > h_max, branches over the rest of T. Exact for any T.
SolveResult solve_effective(const IsingInstance& inst, const TSetCertificate& cert,
                            const SolveOptions& options = {});

/// Effective solver with a randomized T; coloring baseline when the maximum
/// degree is below options.min_degree or no valid T is found, brute force
/// when that hits a limit.
SolveResult solve_effective_auto(const IsingInstance& inst, const SolveOptions& options = {});

/// Greedy coloring in index order, smallest free color.
std::vector<int> greedy_coloring(const DegreeGraph& graph);
/// Largest greedy color class (lowest color on ties), ascending.
std::vector<int> largest_color_class(const DegreeGraph& graph);

SolveResult solve_coloring_baseline(const IsingInstance& inst, const SolveOptions& options = {});

/// W = {i : deg(i) <= 2 * average degree} and its complement.
struct DegreeSplit {
  double average_degree = 0.0;
  std::vector<int> low;
  std::vector<int> high;
};
DegreeSplit avg_degree_split(const IsingInstance& inst);

/// T is searched inside W (induced instance, maximum degree <= 2 * average),
/// the complement of T is enumerated.
SolveResult solve_avg_degree(const IsingInstance& inst, const SolveOptions& options = {});

/// Requires sum_j |J_ij| <= j_max for every i (std::invalid_argument
/// otherwise); j_max == 0 uses the largest row sum. alpha in (0,1).
SolveResult solve_combined(const IsingInstance& inst, double alpha, Weight j_max,
                           const SolveOptions& options = {});

/// Sum over assignments of the complement of T of 2^{|F|}.
BigCount compute_Z(const IsingInstance& inst, std::span<const int> T, const SolveOptions& options = {});

/// Dispatch by method; the effective method uses solve_effective_auto.
SolveResult solve(const IsingInstance& inst, SolveMethod method, const SolveOptions& options = {},
                  double alpha = 0.5, Weight j_max = 0);

}  // namespace isingfix
