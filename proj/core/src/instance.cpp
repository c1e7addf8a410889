#include "isingfix/instance.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace isingfix {

namespace {

using Wide = __int128;

constexpr Wide kWeightLimit = std::numeric_limits<Weight>::max();

Wide wide_abs(Weight w) { return w < 0 ? -static_cast<Wide>(w) : static_cast<Wide>(w); }

void check_index(const IsingInstance& inst, int i, const char* what) {
  if (i < 0 || static_cast<std::size_t>(i) >= inst.size()) {
    throw std::out_of_range(std::string(what) + ": variable index " + std::to_string(i) +
                            " out of range");
  }
}

void check_length(const IsingInstance& inst, const Assignment& a, const char* what) {
  if (a.size() != inst.size()) {
    throw std::invalid_argument(std::string(what) + ": assignment length " +
                                std::to_string(a.size()) + " != instance size " +
                                std::to_string(inst.size()));
  }
}

}  // namespace

IsingInstance::IsingInstance(std::size_t n, std::vector<Weight> h,
                             std::vector<Coupling> couplings, Weight c0)
    : c0_(c0), h_(std::move(h)) {
  if (h_.size() != n) throw std::invalid_argument("IsingInstance: field vector length != n");
  if (n > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
    throw std::invalid_argument("IsingInstance: too many variables");
  }
  std::sort(couplings.begin(), couplings.end(), [](const Coupling& a, const Coupling& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  Wide total = wide_abs(c0_);
  for (Weight w : h_) total += wide_abs(w);
  for (std::size_t k = 0; k < couplings.size(); ++k) {
    const Coupling& c = couplings[k];
    if (c.i < 0 || c.j < 0 || static_cast<std::size_t>(c.j) >= n ||
        static_cast<std::size_t>(c.i) >= n) {
      throw std::invalid_argument("IsingInstance: coupling index out of range");
    }
    if (c.i == c.j) throw std::invalid_argument("IsingInstance: diagonal coupling J_ii");
    if (c.i > c.j) throw std::invalid_argument("IsingInstance: coupling must have i < j");
    if (k > 0 && couplings[k - 1].i == c.i && couplings[k - 1].j == c.j) {
      throw std::invalid_argument("IsingInstance: duplicate coupling (" + std::to_string(c.i) +
                                  "," + std::to_string(c.j) + ")");
    }
    // Each coupling enters two rows of sum_j |J_ij|.
    total += 2 * wide_abs(c.w);
    if (c.w != 0) couplings_.push_back(c);
  }
  if (total > kWeightLimit) {
    throw std::overflow_error("IsingInstance: total absolute weight exceeds 64-bit range");
  }

  std::vector<std::size_t> count(n, 0);
  for (const auto& c : couplings_) {
    ++count[static_cast<std::size_t>(c.i)];
    ++count[static_cast<std::size_t>(c.j)];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + count[i];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& c : couplings_) {
    adjacency_[fill[static_cast<std::size_t>(c.i)]++] = {c.j, c.w};
    adjacency_[fill[static_cast<std::size_t>(c.j)]++] = {c.i, c.w};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.j < b.j; });
  }
}

std::span<const Neighbor> IsingInstance::neighbors(int i) const {
  const auto k = static_cast<std::size_t>(i);
  return std::span<const Neighbor>(adjacency_).subspan(offsets_[k], offsets_[k + 1] - offsets_[k]);
}

Weight IsingInstance::coupling(int i, int j) const {
  if (i == j) return 0;
  const auto row = neighbors(i);
  const auto it = std::lower_bound(row.begin(), row.end(), j,
                                   [](const Neighbor& nb, int key) { return nb.j < key; });
  return (it != row.end() && it->j == j) ? it->w : 0;
}

Weight IsingInstance::abs_row_sum(int i) const {
  Weight s = 0;
  for (const auto& nb : neighbors(i)) s += nb.w < 0 ? -nb.w : nb.w;
  return s;
}

InstanceBuilder::InstanceBuilder(std::size_t n) : h_(n, 0) {}

InstanceBuilder& InstanceBuilder::add_field(int i, Weight w) {
  if (i < 0 || static_cast<std::size_t>(i) >= h_.size()) {
    throw std::out_of_range("InstanceBuilder::add_field: index out of range");
  }
  h_[static_cast<std::size_t>(i)] += w;
  return *this;
}

InstanceBuilder& InstanceBuilder::add_coupling(int i, int j, Weight w) {
  if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= h_.size() ||
      static_cast<std::size_t>(j) >= h_.size()) {
    throw std::out_of_range("InstanceBuilder::add_coupling: index out of range");
  }
  if (i == j) throw std::invalid_argument("InstanceBuilder::add_coupling: i == j");
  if (i > j) std::swap(i, j);
  pending_.push_back({i, j, w});
  return *this;
}

InstanceBuilder& InstanceBuilder::add_constant(Weight w) {
  c0_ += w;
  return *this;
}

IsingInstance InstanceBuilder::build() const {
  std::map<std::pair<int, int>, Wide> merged;
  for (const auto& c : pending_) merged[{c.i, c.j}] += c.w;
  std::vector<Coupling> couplings;
  couplings.reserve(merged.size());
  for (const auto& [key, w] : merged) {
    if (w > kWeightLimit || w < -kWeightLimit) {
      throw std::overflow_error("InstanceBuilder: coupling exceeds 64-bit range");
    }
    couplings.push_back({key.first, key.second, static_cast<Weight>(w)});
  }
  return IsingInstance(h_.size(), h_, std::move(couplings), c0_);
}

Weight energy(const IsingInstance& inst, const Assignment& a) {
  check_length(inst, a, "energy");
  Weight e = inst.c0();
  for (std::size_t i = 0; i < inst.size(); ++i) e += inst.h(static_cast<int>(i)) * a.spin(i);
  for (const auto& c : inst.couplings()) {
    e += c.w * a.spin(static_cast<std::size_t>(c.i)) * a.spin(static_cast<std::size_t>(c.j));
  }
  return e;
}

Weight local_field(const IsingInstance& inst, const Assignment& a, int i) {
  check_length(inst, a, "local_field");
  check_index(inst, i, "local_field");
  Weight l = inst.h(i);
  for (const auto& nb : inst.neighbors(i)) l += nb.w * a.spin(static_cast<std::size_t>(nb.j));
  return l;
}

Weight flip_delta(const IsingInstance& inst, const Assignment& a, int i) {
  const Weight l = local_field(inst, a, i);
  return -2 * a.spin(static_cast<std::size_t>(i)) * l;
}

bool is_local_minimum(const IsingInstance& inst, const Assignment& a) {
  check_length(inst, a, "is_local_minimum");
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (flip_delta(inst, a, static_cast<int>(i)) <= 0) return false;
  }
  return true;
}

bool DegreeGraph::adjacent(int i, int j) const {
  const auto& row = adjacency[static_cast<std::size_t>(i)];
  return std::binary_search(row.begin(), row.end(), j);
}

DegreeGraph degree_graph(const IsingInstance& inst) {
  DegreeGraph g;
  const std::size_t n = inst.size();
  g.adjacency.resize(n);
  g.degree.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& nb : inst.neighbors(static_cast<int>(i))) g.adjacency[i].push_back(nb.j);
    g.degree[i] = static_cast<int>(g.adjacency[i].size());
    g.max_degree = std::max(g.max_degree, g.degree[i]);
  }
  g.edge_count = inst.couplings().size();
  g.average_degree = n == 0 ? 0.0 : 2.0 * static_cast<double>(g.edge_count) / static_cast<double>(n);
  return g;
}

Subinstance induced_subinstance(const IsingInstance& inst, std::span<const int> vertices) {
  std::vector<int> local(inst.size(), -1);
  Subinstance sub;
  sub.to_parent.assign(vertices.begin(), vertices.end());
  std::vector<Weight> h;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const int v = vertices[k];
    check_index(inst, v, "induced_subinstance");
    if (local[static_cast<std::size_t>(v)] != -1) {
      throw std::invalid_argument("induced_subinstance: repeated vertex");
    }
    local[static_cast<std::size_t>(v)] = static_cast<int>(k);
    h.push_back(inst.h(v));
  }
  std::vector<Coupling> couplings;
  for (const auto& c : inst.couplings()) {
    int a = local[static_cast<std::size_t>(c.i)];
    int b = local[static_cast<std::size_t>(c.j)];
    if (a < 0 || b < 0) continue;
    if (a > b) std::swap(a, b);
    couplings.push_back({a, b, c.w});
  }
  sub.inst = IsingInstance(vertices.size(), std::move(h), std::move(couplings), 0);
  return sub;
}

std::uint64_t digest(const IsingInstance& inst) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&hash](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      hash ^= (v >> (8 * b)) & 0xffU;
      hash *= 0x100000001b3ULL;
    }
  };
  feed(inst.size());
  feed(static_cast<std::uint64_t>(inst.c0()));
  for (Weight w : inst.fields()) feed(static_cast<std::uint64_t>(w));
  for (const auto& c : inst.couplings()) {
    feed(static_cast<std::uint64_t>(c.i));
    feed(static_cast<std::uint64_t>(c.j));
    feed(static_cast<std::uint64_t>(c.w));
  }
  return hash;
}

}  // namespace isingfix
