#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "isingfix/assignment.hpp"
#include "isingfix/instance.hpp"
#include "isingfix/wcnf.hpp"

namespace isingfix {

/// All-pairs construction on an even number of variables: clauses
/// (x_i or x_j) and (not x_i or not x_j) for every pair, i.e. J_ij = 2,
/// h = 0, c0 = 2*C(n,2). Its local minima are exactly the balanced
/// assignments.
IsingInstance gen_csse(int n);
/// The same construction as clauses, for WCNF output.
Wcnf gen_csse_wcnf(int n);

/// `copies` decoupled copies of gen_csse(block); variables of copy c are
/// c*block ... c*block + block - 1.
IsingInstance gen_multicopy(int copies, int block);
Wcnf gen_multicopy_wcnf(int copies, int block);

enum class ColumnTargets { kZeros, kSampled };

/// Hypercube column construction on [0,l)^f:
///   E4 = 4 * sum_C (sum_{i in C} S_i - M_C)^2
/// so an assignment has energy 0 exactly when every column sum hits its
/// target. Variable (x_0, ..., x_{f-1}) has index sum_a x_a l^a.
struct ColumnInstance {
  int f = 0;
  int l = 0;
  /// Columns ordered by varying axis b, then by the index of their first
  /// point; each lists its l variables in increasing order.
  std::vector<std::vector<int>> columns;
  std::vector<Weight> targets;
  IsingInstance inst;
  ColumnTargets mode = ColumnTargets::kZeros;
  std::optional<std::uint64_t> seed;
  /// The assignment whose column sums became the targets (sampled mode).
  std::optional<Assignment> planted;
};

/// Requires f >= 1, l even and >= 2, l^f <= 2^20. The sampled mode draws a
/// uniform assignment from `seed` and uses its column sums as targets.
ColumnInstance gen_column(int f, int l, ColumnTargets mode, std::uint64_t seed = 0);

/// All assignments meeting every column target, in lexicographic order.
/// Exhaustive; throws LimitError when l^f > max_bits.
std::vector<Assignment> zero_energy_assignments(const ColumnInstance& ci, int max_bits = 26,
                                                unsigned workers = 1);

/// Erdos-Renyi interaction graph with edge probability `density`, couplings
/// uniform in [w_lo, w_hi] excluding 0, fields uniform in [h_lo, h_hi].
struct RandomInstanceSpec {
  int n = 0;
  double density = 0.3;
  Weight w_lo = -5;
  Weight w_hi = 5;
  Weight h_lo = -5;
  Weight h_hi = 5;
};
IsingInstance gen_random(const RandomInstanceSpec& spec, std::uint64_t seed);

/// Random simple d-regular graph (pairing model with restarts), couplings
/// uniform in [w_lo, w_hi] excluding 0, zero fields. Requires n*d even and
/// d < n.
IsingInstance gen_random_regular(int n, int d, std::uint64_t seed, Weight w_lo = -5,
                                 Weight w_hi = 5);

/// No couplings; fields uniform in [h_lo, h_hi] (all zero by default).
IsingInstance gen_edgeless(int n, std::uint64_t seed = 0, Weight h_lo = 0, Weight h_hi = 0);

}  // namespace isingfix
