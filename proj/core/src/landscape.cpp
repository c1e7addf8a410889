#include "isingfix/landscape.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gray_scan.hpp"
#include "parallel.hpp"

namespace isingfix {

namespace {

void check_k(const IsingInstance& inst, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > inst.size()) {
    throw std::invalid_argument("k must satisfy 1 <= k <= n (k=" + std::to_string(k) +
                                ", n=" + std::to_string(inst.size()) + ")");
  }
}

struct SpinFields {
  std::vector<int> spins;
  std::vector<Weight> fields;
};

SpinFields spin_fields(const IsingInstance& inst, const Assignment& a) {
  SpinFields sf;
  sf.spins.resize(inst.size());
  sf.fields.resize(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) sf.spins[i] = a.spin(i);
  for (std::size_t i = 0; i < inst.size(); ++i) sf.fields[i] = local_field(inst, a, static_cast<int>(i));
  return sf;
}

SpinFields spin_fields(const detail::SpinScan& scan, int n) {
  SpinFields sf;
  sf.spins.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sf.spins[static_cast<std::size_t>(i)] = scan.spin(i);
  sf.fields = scan.fields();
  return sf;
}

// Multi-variable part of the tests: single flips are checked by the caller.
template <typename Coupling>
bool strict_beyond_singles(int n, int k, const SpinFields& sf, const Coupling& coupling) {
  if (k < 2) return true;
  return detail::for_each_flip_set(n, k, sf.spins, sf.fields, coupling,
                                   [](const std::vector<int>& set, Weight d) {
                                     return set.size() < 2 || d > 0;
                                   });
}

template <typename Coupling>
bool vertex_beyond_singles(int n, int k, const SpinFields& sf, const Coupling& coupling,
                           BasinRule rule) {
  if (k < 2) return true;
  return detail::for_each_flip_set(n, k, sf.spins, sf.fields, coupling,
                                   [rule](const std::vector<int>& set, Weight d) {
                                     if (set.size() < 2) return true;
                                     return rule == BasinRule::kNoImprovingMove ? d >= 0 : d <= 0;
                                   });
}

bool singles_allow_vertex(const detail::SpinScan& scan, int n, BasinRule rule) {
  if (rule == BasinRule::kNoImprovingMove) return scan.improvable() == 0;
  // No single flip may raise the energy: S_i L_i >= 0 for all i.
  for (int i = 0; i < n; ++i) {
    if (scan.spin(i) * scan.field(i) < 0) return false;
  }
  return true;
}

struct BlockResult {
  std::vector<std::uint64_t> minima;
  std::size_t minima_count = 0;
  std::vector<std::uint64_t> vertices;
};

std::vector<BlockResult> scan_blocks(const IsingInstance& inst, int k, const ScanOptions& options,
                                     bool collect_vertices, BasinRule rule) {
  const int n = static_cast<int>(inst.size());
  detail::require_bits(inst.size(), options.max_bits, "landscape scan");
  const int block_bits = detail::block_bits_for(n);
  const std::size_t blocks = std::size_t{1} << block_bits;
  const detail::DenseCouplings dense(inst);
  std::vector<BlockResult> results(blocks);
  detail::for_each_block(blocks, options.workers, [&](std::size_t b) {
    BlockResult& out = results[b];
    detail::scan_block(inst, b, block_bits, [&](const detail::SpinScan& scan) {
      if (scan.unstable() == 0) {
        bool strict = true;
        if (k > 1) strict = strict_beyond_singles(n, k, spin_fields(scan, n), dense);
        if (strict) {
          ++out.minima_count;
          if (out.minima.size() < options.max_listed) out.minima.push_back(scan.mask());
        }
      }
      if (collect_vertices && singles_allow_vertex(scan, n, rule)) {
        if (k == 1 || vertex_beyond_singles(n, k, spin_fields(scan, n), dense, rule)) {
          out.vertices.push_back(scan.mask());
        }
      }
    });
  });
  return results;
}

void fill_minima(LandscapeReport& report, std::vector<BlockResult>& blocks, std::size_t n,
                 std::size_t max_listed) {
  std::vector<std::uint64_t> all;
  for (auto& b : blocks) {
    report.minima_count += b.minima_count;
    all.insert(all.end(), b.minima.begin(), b.minima.end());
  }
  std::sort(all.begin(), all.end(), mask::lex_less);
  report.minima_truncated = report.minima_count > all.size() || all.size() > max_listed;
  if (all.size() > max_listed) all.resize(max_listed);
  report.minima.reserve(all.size());
  for (auto m : all) report.minima.push_back(Assignment::from_mask(m, n));
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  std::size_t size_of(std::size_t root) const { return size_[root]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

bool is_k_minimum(const IsingInstance& inst, const Assignment& a, int k) {
  check_k(inst, k);
  if (!is_local_minimum(inst, a)) return false;
  const auto sf = spin_fields(inst, a);
  return strict_beyond_singles(static_cast<int>(inst.size()), k, sf,
                               [&inst](int i, int j) { return inst.coupling(i, j); });
}

bool is_basin_vertex(const IsingInstance& inst, const Assignment& a, int k, BasinRule rule) {
  check_k(inst, k);
  if (a.size() != inst.size()) throw std::invalid_argument("is_basin_vertex: length mismatch");
  const auto sf = spin_fields(inst, a);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Weight sl = sf.spins[i] * sf.fields[i];
    if (rule == BasinRule::kNoImprovingMove ? sl > 0 : sl < 0) return false;
  }
  return vertex_beyond_singles(static_cast<int>(inst.size()), k, sf,
                               [&inst](int i, int j) { return inst.coupling(i, j); }, rule);
}

LandscapeReport enumerate_k_minima(const IsingInstance& inst, int k, const ScanOptions& options) {
  check_k(inst, k);
  auto blocks = scan_blocks(inst, k, options, false, BasinRule::kNoImprovingMove);
  LandscapeReport report;
  report.k = k;
  fill_minima(report, blocks, inst.size(), options.max_listed);
  return report;
}

LandscapeReport k_basins(const IsingInstance& inst, int k, BasinRule rule, const ScanOptions& options) {
  check_k(inst, k);
  const int n = static_cast<int>(inst.size());
  auto blocks = scan_blocks(inst, k, options, true, rule);
  LandscapeReport report;
  report.k = k;
  fill_minima(report, blocks, inst.size(), options.max_listed);

  std::vector<std::uint64_t> vertices;
  for (auto& b : blocks) vertices.insert(vertices.end(), b.vertices.begin(), b.vertices.end());
  std::sort(vertices.begin(), vertices.end());
  report.vertex_count = vertices.size();

  DisjointSets sets(vertices.size());
  // Flip sets are enumerated without energies here, so spins and fields are
  // placeholders.
  const std::vector<int> ones(static_cast<std::size_t>(n), 1);
  const std::vector<Weight> unused(static_cast<std::size_t>(n), 0);
  const auto no_coupling = [](int, int) { return Weight{0}; };
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const std::uint64_t base = vertices[v];
    // Only sets U whose image lies above `base` need checking; the smaller
    // endpoint of every edge handles it.
    detail::for_each_flip_set(n, k, ones, unused, no_coupling, [&](const std::vector<int>& set, Weight) {
      std::uint64_t other = base;
      for (int i : set) other ^= std::uint64_t{1} << i;
      if (other > base) {
        const auto it = std::lower_bound(vertices.begin(), vertices.end(), other);
        if (it != vertices.end() && *it == other) {
          sets.unite(v, static_cast<std::size_t>(it - vertices.begin()));
        }
      }
      return true;
    });
  }
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (sets.find(v) == v) report.basin_sizes.push_back(sets.size_of(v));
  }
  std::sort(report.basin_sizes.begin(), report.basin_sizes.end(), std::greater<>());
  report.basin_count = report.basin_sizes.size();
  return report;
}

std::size_t min_pairwise_hamming(std::span<const Assignment> assignments) {
  if (assignments.empty()) throw std::invalid_argument("min_pairwise_hamming: empty list");
  const std::size_t n = assignments.front().size();
  for (const auto& a : assignments) {
    if (a.size() != n) throw std::invalid_argument("min_pairwise_hamming: unequal lengths");
  }
  std::size_t best = n + 1;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    for (std::size_t j = i + 1; j < assignments.size(); ++j) {
      best = std::min(best, assignments[i].hamming(assignments[j]));
    }
  }
  return best;
}

}  // namespace isingfix
