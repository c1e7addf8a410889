#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "isingfix/error.hpp"
#include "isingfix/instance.hpp"

namespace isingfix::detail {

constexpr int kMaxMaskBits = 62;

inline void require_bits(std::size_t bits, int max_bits, const char* what) {
  const int cap = std::min(max_bits, kMaxMaskBits);
  if (bits > static_cast<std::size_t>(cap)) {
    throw LimitError(std::string(what) + ": enumerating 2^" + std::to_string(bits) +
                     " assignments exceeds the limit 2^" + std::to_string(cap));
  }
}

/// Number of high-order variables fixed per parallel block.
inline int block_bits_for(int n) { return std::min(n, 6); }

/// Incremental state for a Gray-code walk over a full n <= 62 spin space:
/// energy, every local field, and the two counters that make the strict and
/// weak local-minimum tests O(1) per visited assignment.
class SpinScan {
 public:
  SpinScan(const IsingInstance& inst, std::uint64_t start) : inst_(inst), mask_(start) {
    const int n = static_cast<int>(inst.size());
    field_.assign(static_cast<std::size_t>(n), 0);
    energy_ = inst.c0();
    for (int i = 0; i < n; ++i) {
      Weight l = inst.h(i);
      for (const auto& nb : inst.neighbors(i)) l += nb.w * spin(nb.j);
      field_[static_cast<std::size_t>(i)] = l;
      energy_ += inst.h(i) * spin(i);
    }
    for (const auto& c : inst.couplings()) energy_ += c.w * spin(c.i) * spin(c.j);
    for (int i = 0; i < n; ++i) add_status(i, +1);
  }

  void flip(int p) {
    remove_neighborhood(p);
    const auto sp = static_cast<std::size_t>(p);
    energy_ += -2 * spin(p) * field_[sp];
    mask_ ^= std::uint64_t{1} << p;
    const Weight s = spin(p);
    for (const auto& nb : inst_.neighbors(p)) field_[static_cast<std::size_t>(nb.j)] += 2 * nb.w * s;
    add_neighborhood(p);
  }

  std::uint64_t mask() const { return mask_; }
  Weight energy() const { return energy_; }
  Weight field(int i) const { return field_[static_cast<std::size_t>(i)]; }
  int spin(int i) const { return ((mask_ >> i) & 1U) ? 1 : -1; }
  const std::vector<Weight>& fields() const { return field_; }
  /// Count of i with S_i L_i >= 0; zero iff strict local minimum.
  int unstable() const { return unstable_; }
  /// Count of i with S_i L_i > 0; zero iff no single flip lowers the energy.
  int improvable() const { return improvable_; }

 private:
  void add_status(int i, int sign) {
    const Weight sl = spin(i) * field_[static_cast<std::size_t>(i)];
    if (sl >= 0) unstable_ += sign;
    if (sl > 0) improvable_ += sign;
  }
  void remove_neighborhood(int p) {
    add_status(p, -1);
    for (const auto& nb : inst_.neighbors(p)) add_status(nb.j, -1);
  }
  void add_neighborhood(int p) {
    add_status(p, +1);
    for (const auto& nb : inst_.neighbors(p)) add_status(nb.j, +1);
  }

  const IsingInstance& inst_;
  std::uint64_t mask_;
  Weight energy_ = 0;
  std::vector<Weight> field_;
  int unstable_ = 0;
  int improvable_ = 0;
};

/// Visits every assignment whose top `block_bits` variables spell `block`,
/// in Gray-code order over the remaining low variables.
template <typename Visit>
void scan_block(const IsingInstance& inst, std::size_t block, int block_bits, Visit&& visit) {
  const int n = static_cast<int>(inst.size());
  const int low = n - block_bits;
  SpinScan scan(inst, static_cast<std::uint64_t>(block) << low);
  visit(scan);
  const std::uint64_t steps = std::uint64_t{1} << low;
  for (std::uint64_t t = 1; t < steps; ++t) {
    scan.flip(std::countr_zero(t));
    visit(scan);
  }
}

/// Row-major n x n coupling matrix for the small-n enumeration paths.
class DenseCouplings {
 public:
  explicit DenseCouplings(const IsingInstance& inst)
      : n_(inst.size()), j_(inst.size() * inst.size(), 0) {
    for (const auto& c : inst.couplings()) {
      j_[static_cast<std::size_t>(c.i) * n_ + static_cast<std::size_t>(c.j)] = c.w;
      j_[static_cast<std::size_t>(c.j) * n_ + static_cast<std::size_t>(c.i)] = c.w;
    }
  }
  Weight operator()(int i, int j) const {
    return j_[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)];
  }

 private:
  std::size_t n_;
  std::vector<Weight> j_;
};

/// Depth-first walk over every flip set U of 1..k variables (increasing
/// indices), passing the set and its exact energy change
///   dE(U) = sum_{i in U} -2 S_i L_i + 4 sum_{i<j in U} J_ij S_i S_j.
/// `visit(U, dE)` returns false to stop; the walk then returns false.
template <typename Coupling, typename Visit>
bool for_each_flip_set(int n, int k, const std::vector<int>& spins, const std::vector<Weight>& fields,
                       const Coupling& coupling, Visit&& visit) {
  std::vector<int> chosen;
  chosen.reserve(static_cast<std::size_t>(k));
  auto rec = [&](auto&& self, int start, Weight delta) -> bool {
    for (int v = start; v < n; ++v) {
      const auto sv = static_cast<std::size_t>(v);
      Weight d = delta - 2 * spins[sv] * fields[sv];
      for (int u : chosen) d += 4 * coupling(u, v) * spins[static_cast<std::size_t>(u)] * spins[sv];
      chosen.push_back(v);
      if (!visit(static_cast<const std::vector<int>&>(chosen), d)) return false;
      if (static_cast<int>(chosen.size()) < k && !self(self, v + 1, d)) return false;
      chosen.pop_back();
    }
    return true;
  };
  return rec(rec, 0, 0);
}

}  // namespace isingfix::detail
