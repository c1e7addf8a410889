#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "isingfix/assignment.hpp"
#include "isingfix/instance.hpp"

namespace isingfix {

/// Which assignments become vertices of the k-basin graph.
enum class BasinRule {
  /// No change of at most k variables strictly lowers the energy. Every
  /// strict k-minimum is then an isolated vertex.
  kNoImprovingMove,
  /// No change of at most k variables raises the energy (the literal
  /// "does not increase H" reading; kept for experimentation).
  kNoWorseningMove,
};

struct ScanOptions {
  int max_bits = 26;
  unsigned workers = 1;
  /// Cap on the number of minima stored in a report; counts stay exact.
  std::size_t max_listed = std::size_t{1} << 22;
};

struct LandscapeReport {
  int k = 1;
  /// Strict k-minima in lexicographic order (possibly truncated).
  std::vector<Assignment> minima;
  std::size_t minima_count = 0;
  bool minima_truncated = false;
  /// Basin decomposition; zero/empty for enumerate_k_minima.
  std::size_t vertex_count = 0;
  std::size_t basin_count = 0;
  /// Descending.
  std::vector<std::size_t> basin_sizes;
};

/// Every assignment at Hamming distance 1..k has strictly larger energy.
/// Throws std::invalid_argument unless 1 <= k <= n.
bool is_k_minimum(const IsingInstance& inst, const Assignment& a, int k);

/// Vertex predicate of the k-basin graph under `rule`.
bool is_basin_vertex(const IsingInstance& inst, const Assignment& a, int k,
                     BasinRule rule = BasinRule::kNoImprovingMove);

/// Exhaustive list and count of strict k-minima (Gray-code scan with
/// incremental fields). Throws LimitError when n > options.max_bits.
LandscapeReport enumerate_k_minima(const IsingInstance& inst, int k, const ScanOptions& options = {});

/// k-basins: connected components of the graph on basin vertices with edges
/// between vertices within Hamming distance k. Also fills the strict k-minima.
LandscapeReport k_basins(const IsingInstance& inst, int k, BasinRule rule = BasinRule::kNoImprovingMove,
                         const ScanOptions& options = {});

/// Minimum pairwise Hamming distance; n + 1 for a single assignment.
/// Throws std::invalid_argument on an empty list or unequal lengths.
std::size_t min_pairwise_hamming(std::span<const Assignment> assignments);

}  // namespace isingfix
