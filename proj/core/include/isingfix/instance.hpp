#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "isingfix/assignment.hpp"

namespace isingfix {

/// Every weight and energy is an integer in "E4 units": four times the
/// violated-clause weight for instances produced by wcnf_to_ising.
using Weight = std::int64_t;

struct Coupling {
  int i = 0;
  int j = 0;
  Weight w = 0;
  friend bool operator==(const Coupling&, const Coupling&) = default;
};

struct Neighbor {
  int j = 0;
  Weight w = 0;
};

/// E(S) = c0 + sum_i h_i S_i + sum_{i<j} J_ij S_i S_j over S in {+1,-1}^n.
///
/// Immutable once built. Couplings are kept once per unordered pair with
/// i < j, zero couplings are dropped, and construction rejects weights whose
/// absolute total could overflow a 64-bit energy.
class IsingInstance {
 public:
  IsingInstance() = default;

  /// Throws std::invalid_argument for diagonal, out-of-range, misordered or
  /// duplicate couplings and for a field vector of the wrong length;
  /// std::overflow_error when the weight total does not fit in 64 bits.
  IsingInstance(std::size_t n, std::vector<Weight> h, std::vector<Coupling> couplings,
                Weight c0 = 0);

  std::size_t size() const { return h_.size(); }
  Weight c0() const { return c0_; }
  Weight h(int i) const { return h_[static_cast<std::size_t>(i)]; }
  std::span<const Weight> fields() const { return h_; }
  /// Sorted by (i, j).
  std::span<const Coupling> couplings() const { return couplings_; }
  /// Sorted by neighbor index.
  std::span<const Neighbor> neighbors(int i) const;
  int degree(int i) const { return static_cast<int>(neighbors(i).size()); }
  /// J_ij, zero when absent or i == j.
  Weight coupling(int i, int j) const;
  /// sum_j |J_ij|.
  Weight abs_row_sum(int i) const;

 private:
  Weight c0_ = 0;
  std::vector<Weight> h_;
  std::vector<Coupling> couplings_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// Accumulates fields, couplings (in either index order) and the constant,
/// then validates once in build().
class InstanceBuilder {
 public:
  explicit InstanceBuilder(std::size_t n);

  InstanceBuilder& add_field(int i, Weight w);
  InstanceBuilder& add_coupling(int i, int j, Weight w);
  InstanceBuilder& add_constant(Weight w);

  std::size_t size() const { return h_.size(); }
  IsingInstance build() const;

 private:
  std::vector<Weight> h_;
  std::vector<Coupling> pending_;
  Weight c0_ = 0;
};

Weight energy(const IsingInstance& inst, const Assignment& a);
/// L_i = h_i + sum_{j != i} J_ij S_j.
Weight local_field(const IsingInstance& inst, const Assignment& a, int i);
/// energy(flip(a, i)) - energy(a) = -2 S_i L_i.
Weight flip_delta(const IsingInstance& inst, const Assignment& a, int i);
/// Strict: every single flip raises the energy.
bool is_local_minimum(const IsingInstance& inst, const Assignment& a);

/// Interaction graph: an edge (i, j) for every nonzero J_ij.
struct DegreeGraph {
  std::vector<std::vector<int>> adjacency;
  std::vector<int> degree;
  std::size_t edge_count = 0;
  double average_degree = 0.0;
  int max_degree = 0;

  std::size_t size() const { return adjacency.size(); }
  bool adjacent(int i, int j) const;
};

DegreeGraph degree_graph(const IsingInstance& inst);

/// Instance restricted to `vertices` (fields copied, couplings kept only when
/// both ends are inside, constant dropped). Local index k maps to
/// to_parent[k].
struct Subinstance {
  IsingInstance inst;
  std::vector<int> to_parent;
};

Subinstance induced_subinstance(const IsingInstance& inst, std::span<const int> vertices);

/// FNV-1a over a canonical serialization; stable across runs and platforms.
std::uint64_t digest(const IsingInstance& inst);

}  // namespace isingfix
