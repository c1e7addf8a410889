#pragma once

// Deliberately slow reference implementations. They share no code with the
// library beyond the instance accessors and recompute everything from the
// definitions.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "isingfix/instance.hpp"
#include "isingfix/wcnf.hpp"

namespace oracle {

using isingfix::IsingInstance;
using isingfix::Weight;

inline int spin_of(std::uint64_t m, int i) { return ((m >> i) & 1U) ? 1 : -1; }

inline std::vector<std::vector<Weight>> dense(const IsingInstance& inst) {
  const auto n = inst.size();
  std::vector<std::vector<Weight>> J(n, std::vector<Weight>(n, 0));
  for (const auto& c : inst.couplings()) {
    J[c.i][c.j] = c.w;
    J[c.j][c.i] = c.w;
  }
  return J;
}

inline Weight energy(const IsingInstance& inst, std::uint64_t m) {
  const int n = static_cast<int>(inst.size());
  const auto J = dense(inst);
  Weight e = inst.c0();
  for (int i = 0; i < n; ++i) {
    e += inst.h(i) * spin_of(m, i);
    for (int j = i + 1; j < n; ++j) e += J[i][j] * spin_of(m, i) * spin_of(m, j);
  }
  return e;
}

inline std::vector<Weight> all_energies(const IsingInstance& inst) {
  const int n = static_cast<int>(inst.size());
  std::vector<Weight> out(std::size_t{1} << n);
  const auto J = dense(inst);
  for (std::uint64_t m = 0; m < out.size(); ++m) {
    Weight e = inst.c0();
    for (int i = 0; i < n; ++i) {
      e += inst.h(i) * spin_of(m, i);
      for (int j = i + 1; j < n; ++j) e += J[i][j] * spin_of(m, i) * spin_of(m, j);
    }
    out[m] = e;
  }
  return out;
}

// Bit string b_0 b_1 ... as text, so lexicographic order is string order.
inline std::string bits(std::uint64_t m, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s.push_back(((m >> i) & 1U) ? '1' : '0');
  return s;
}

struct Min {
  Weight energy;
  std::string assignment;
};

inline Min brute_min(const IsingInstance& inst) {
  const int n = static_cast<int>(inst.size());
  const auto E = all_energies(inst);
  Min best{E[0], bits(0, n)};
  for (std::uint64_t m = 1; m < E.size(); ++m) {
    const auto s = bits(m, n);
    if (E[m] < best.energy || (E[m] == best.energy && s < best.assignment)) best = {E[m], s};
  }
  return best;
}

// Strict k-minima by comparing against every assignment within distance k.
inline std::vector<std::uint64_t> k_minima(const IsingInstance& inst, int k) {
  const auto E = all_energies(inst);
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 0; a < E.size(); ++a) {
    bool ok = true;
    for (std::uint64_t b = 0; b < E.size() && ok; ++b) {
      const int d = std::popcount(a ^ b);
      if (d >= 1 && d <= k && E[b] <= E[a]) ok = false;
    }
    if (ok) out.push_back(a);
  }
  return out;
}

// Basins: vertices have no strictly better assignment within distance k;
// components by repeated relabeling.
inline std::vector<std::size_t> basin_sizes(const IsingInstance& inst, int k) {
  const auto E = all_energies(inst);
  std::vector<std::uint64_t> v;
  for (std::uint64_t a = 0; a < E.size(); ++a) {
    bool ok = true;
    for (std::uint64_t b = 0; b < E.size() && ok; ++b) {
      const int d = std::popcount(a ^ b);
      if (d >= 1 && d <= k && E[b] < E[a]) ok = false;
    }
    if (ok) v.push_back(a);
  }
  std::vector<std::size_t> label(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) label[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (std::popcount(v[i] ^ v[j]) <= k && label[j] < label[i]) {
          label[i] = label[j];
          changed = true;
        }
      }
    }
  }
  std::vector<std::size_t> count(v.size(), 0);
  for (auto l : label) ++count[l];
  std::vector<std::size_t> sizes;
  for (auto c : count) {
    if (c) sizes.push_back(c);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

// Z = sum over assignments of the complement of T of 2^{#free}, with
// free meaning |h_i + sum_{j not in T} J_ij S_j| < sum_{j in T} |J_ij|.
inline unsigned __int128 z_value(const IsingInstance& inst, const std::vector<int>& T) {
  const int n = static_cast<int>(inst.size());
  const auto J = dense(inst);
  std::vector<char> in_t(n, 0);
  for (int v : T) in_t[v] = 1;
  unsigned __int128 z = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    bool canonical = true;
    for (int v : T) {
      if ((m >> v) & 1U) canonical = false;
    }
    if (!canonical) continue;
    int free = 0;
    for (int i : T) {
      Weight he = inst.h(i);
      Weight hm = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        if (in_t[j]) hm += J[i][j] < 0 ? -J[i][j] : J[i][j];
        else he += J[i][j] * spin_of(m, j);
      }
      if ((he < 0 ? -he : he) < hm) ++free;
    }
    z += static_cast<unsigned __int128>(1) << free;
  }
  return z;
}

// Violated weight straight from literal truth values.
inline Weight violated(const isingfix::Wcnf& w, std::uint64_t m) {
  Weight total = 0;
  for (const auto& c : w.clauses) {
    bool sat = false;
    for (int lit : c.literals) {
      const int v = (lit > 0 ? lit : -lit) - 1;
      const bool value = (m >> v) & 1U;
      if (lit > 0 ? value : !value) sat = true;
    }
    if (!sat) total += c.weight;
  }
  return total;
}

// Pr(|Sigma + h| <= delta) as (favourable outcomes, 2^n).
inline std::pair<std::uint64_t, std::uint64_t> interval_count(const std::vector<std::int64_t>& a, std::int64_t delta,
                                                              std::int64_t h) {
  const int n = static_cast<int>(a.size());
  std::uint64_t hits = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::int64_t s = h;
    for (int i = 0; i < n; ++i) s += ((m >> i) & 1U) ? a[i] : -a[i];
    if (s >= -delta && s <= delta) ++hits;
  }
  return {hits, std::uint64_t{1} << n};
}

}  // namespace oracle
