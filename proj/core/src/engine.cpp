#include "engine.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "gray_scan.hpp"
#include "isingfix/error.hpp"
#include "parallel.hpp"

namespace isingfix::detail {

namespace {

enum Role : std::uint8_t { kOuter, kInner, kSplit1, kSplit2 };

struct Link {
  int local = 0;
  Weight w = 0;
};

// Exhaustive minimization of sum_i g_i S_i + sum_{i<j} J_ij S_i S_j over a
// small block; lowest local mask wins ties (ascending global order).
struct SplitBlock {
  std::vector<int> vars;
  std::vector<std::vector<Link>> links;

  void minimize(const std::vector<Weight>& g, std::vector<Weight>& field, Weight& best_e,
                std::uint64_t& best_local) const {
    const int m = static_cast<int>(vars.size());
    Weight e = 0;
    for (int a = 0; a < m; ++a) {
      Weight f = g[static_cast<std::size_t>(a)];
      for (const auto& l : links[static_cast<std::size_t>(a)]) f -= l.w;
      field[static_cast<std::size_t>(a)] = f;
      e -= g[static_cast<std::size_t>(a)];
    }
    for (int a = 0; a < m; ++a) {
      for (const auto& l : links[static_cast<std::size_t>(a)]) {
        if (l.local > a) e += l.w;
      }
    }
    std::uint64_t cur = 0;
    best_e = e;
    best_local = 0;
    const std::uint64_t steps = std::uint64_t{1} << m;
    for (std::uint64_t t = 1; t < steps; ++t) {
      const int p = std::countr_zero(t);
      const auto sp = static_cast<std::size_t>(p);
      const int s_old = mask::spin(cur, p);
      e += -2 * s_old * field[sp];
      cur ^= std::uint64_t{1} << p;
      for (const auto& l : links[sp]) field[static_cast<std::size_t>(l.local)] += -2 * s_old * l.w;
      if (e < best_e || (e == best_e && mask::lex_less(cur, best_local))) {
        best_e = e;
        best_local = cur;
      }
    }
  }

  std::uint64_t to_global(std::uint64_t local) const {
    std::uint64_t out = 0;
    for (std::size_t a = 0; a < vars.size(); ++a) {
      if ((local >> a) & 1U) out |= std::uint64_t{1} << vars[a];
    }
    return out;
  }
};

struct Best {
  bool valid = false;
  Weight energy = 0;
  std::uint64_t mask = 0;

  void offer(Weight e, std::uint64_t m) {
    if (!valid || e < energy || (e == energy && mask::lex_less(m, mask))) {
      valid = true;
      energy = e;
      mask = m;
    }
  }
};

struct BlockOutcome {
  Best best;
  std::uint64_t leaves = 0;
  std::uint64_t outer = 0;
  BigCount z = 0;
  std::uint64_t ties = 0;
  std::uint64_t split_evals = 0;
};

Weight abs_w(Weight w) { return w < 0 ? -w : w; }

}  // namespace

EngineOutcome run_engine(const IsingInstance& inst, const EngineSets& sets, const SolveOptions& options,
                         bool count_only) {
  const int n = static_cast<int>(inst.size());
  if (n > 64) throw LimitError("solver: at most 64 variables");
  std::vector<Role> role(static_cast<std::size_t>(n), kOuter);
  auto assign = [&](const std::vector<int>& vs, Role r) {
    for (int v : vs) {
      if (v < 0 || v >= n) throw std::invalid_argument("solver: variable index out of range");
      if (role[static_cast<std::size_t>(v)] != kOuter) throw std::invalid_argument("solver: variable sets overlap");
      role[static_cast<std::size_t>(v)] = r;
    }
  };
  assign(sets.T, kInner);
  assign(sets.t1, kSplit1);
  assign(sets.t2, kSplit2);

  std::vector<int> outer_vars;
  std::vector<int> inner;
  std::vector<int> local(static_cast<std::size_t>(n), -1);
  SplitBlock split[2];
  for (int v = 0; v < n; ++v) {
    switch (role[static_cast<std::size_t>(v)]) {
      case kOuter: local[static_cast<std::size_t>(v)] = static_cast<int>(outer_vars.size()); outer_vars.push_back(v); break;
      case kInner: local[static_cast<std::size_t>(v)] = static_cast<int>(inner.size()); inner.push_back(v); break;
      case kSplit1: local[static_cast<std::size_t>(v)] = static_cast<int>(split[0].vars.size()); split[0].vars.push_back(v); break;
      case kSplit2: local[static_cast<std::size_t>(v)] = static_cast<int>(split[1].vars.size()); split[1].vars.push_back(v); break;
    }
  }
  for (const auto& c : inst.couplings()) {
    const Role a = role[static_cast<std::size_t>(c.i)];
    const Role b = role[static_cast<std::size_t>(c.j)];
    if ((a == kSplit1 && b == kSplit2) || (a == kSplit2 && b == kSplit1)) {
      throw std::invalid_argument("solver: T1 and T2 must not be coupled");
    }
  }

  const int n_outer = static_cast<int>(outer_vars.size());
  const int n_inner = static_cast<int>(inner.size());
  require_bits(static_cast<std::size_t>(n_outer), options.max_bits, "outer enumeration");
  for (const auto& s : split) require_bits(s.vars.size(), options.max_bits, "T1/T2 enumeration");

  // h_max over T u T1 u T2, plus the inner wiring used by the branch walk.
  std::vector<Weight> h_max(static_cast<std::size_t>(n_inner), 0);
  std::vector<std::vector<Link>> inner_links(static_cast<std::size_t>(n_inner));
  std::vector<std::vector<std::pair<int, Link>>> split_links(static_cast<std::size_t>(n_inner));
  for (int a = 0; a < n_inner; ++a) {
    for (const auto& nb : inst.neighbors(inner[static_cast<std::size_t>(a)])) {
      const Role r = role[static_cast<std::size_t>(nb.j)];
      if (r == kOuter) continue;
      h_max[static_cast<std::size_t>(a)] += abs_w(nb.w);
      const int lj = local[static_cast<std::size_t>(nb.j)];
      if (r == kInner) inner_links[static_cast<std::size_t>(a)].push_back({lj, nb.w});
      else split_links[static_cast<std::size_t>(a)].push_back({r == kSplit1 ? 0 : 1, {lj, nb.w}});
    }
  }
  for (auto& s : split) s.links.assign(s.vars.size(), {});
  for (int k = 0; k < 2; ++k) {
    auto& s = split[k];
    for (std::size_t a = 0; a < s.vars.size(); ++a) {
      for (const auto& nb : inst.neighbors(s.vars[a])) {
        if (role[static_cast<std::size_t>(nb.j)] == role[static_cast<std::size_t>(s.vars[a])]) {
          s.links[a].push_back({local[static_cast<std::size_t>(nb.j)], nb.w});
        }
      }
    }
  }
  const std::uint64_t split_cost =
      (split[0].vars.empty() ? 0 : std::uint64_t{1} << split[0].vars.size()) +
      (split[1].vars.empty() ? 0 : std::uint64_t{1} << split[1].vars.size());

  const int block_bits = block_bits_for(n_outer);
  const int low = n_outer - block_bits;
  const std::size_t blocks = std::size_t{1} << block_bits;
  std::vector<BlockOutcome> results(blocks);

  for_each_block(blocks, options.workers, [&](std::size_t block) {
    BlockOutcome& out = results[block];
    // Outer state: spins, outer energy, and F_v = h_v + sum_{j outer} J_vj S_j.
    std::uint64_t omask = 0;
    for (int b = 0; b < block_bits; ++b) {
      if ((block >> b) & 1U) omask |= std::uint64_t{1} << outer_vars[static_cast<std::size_t>(low + b)];
    }
    std::vector<Weight> F(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      Weight f = inst.h(v);
      for (const auto& nb : inst.neighbors(v)) {
        if (role[static_cast<std::size_t>(nb.j)] == kOuter) f += nb.w * mask::spin(omask, nb.j);
      }
      F[static_cast<std::size_t>(v)] = f;
    }
    Weight e_outer = inst.c0();
    for (int v : outer_vars) e_outer += inst.h(v) * mask::spin(omask, v);
    for (const auto& c : inst.couplings()) {
      if (role[static_cast<std::size_t>(c.i)] == kOuter && role[static_cast<std::size_t>(c.j)] == kOuter) {
        e_outer += c.w * mask::spin(omask, c.i) * mask::spin(omask, c.j);
      }
    }

    std::vector<int> branch;
    std::vector<int> spin(static_cast<std::size_t>(n_inner));
    std::vector<Weight> q(static_cast<std::size_t>(n_inner));
    std::vector<Weight> g[2] = {std::vector<Weight>(split[0].vars.size()),
                                std::vector<Weight>(split[1].vars.size())};
    std::vector<Weight> scratch[2] = {std::vector<Weight>(split[0].vars.size()),
                                      std::vector<Weight>(split[1].vars.size())};
    branch.reserve(static_cast<std::size_t>(n_inner));

    auto visit = [&] {
      ++out.outer;
      branch.clear();
      int n_free = 0;
      bool tie = false;
      for (int a = 0; a < n_inner; ++a) {
        const auto sa = static_cast<std::size_t>(a);
        const Weight he = F[static_cast<std::size_t>(inner[sa])];
        const Weight ah = abs_w(he);
        if (ah > h_max[sa]) {
          spin[sa] = he > 0 ? -1 : 1;
        } else if (ah == 0 && h_max[sa] == 0) {
          spin[sa] = -1;
        } else {
          spin[sa] = -1;
          branch.push_back(a);
          if (ah < h_max[sa]) ++n_free;
          else tie = true;
        }
      }
      out.z += BigCount{1} << n_free;
      if (tie) ++out.ties;
      if (count_only) {
        out.leaves += std::uint64_t{1} << std::min<std::size_t>(branch.size(), 63);
        return;
      }
      require_bits(branch.size(), options.max_bits, "branch enumeration");
      const std::uint64_t leaves = std::uint64_t{1} << branch.size();
      out.leaves += leaves;
      out.split_evals += leaves * split_cost;

      std::uint64_t tmask = 0;
      Weight e_inner = 0;
      for (int a = 0; a < n_inner; ++a) {
        const auto sa = static_cast<std::size_t>(a);
        if (spin[sa] > 0) tmask |= std::uint64_t{1} << inner[sa];
        Weight f = F[static_cast<std::size_t>(inner[sa])];
        for (const auto& l : inner_links[sa]) f += l.w * spin[static_cast<std::size_t>(l.local)];
        q[sa] = f;
        e_inner += spin[sa] * F[static_cast<std::size_t>(inner[sa])];
        for (const auto& l : inner_links[sa]) {
          if (l.local > a) e_inner += l.w * spin[sa] * spin[static_cast<std::size_t>(l.local)];
        }
      }
      for (int k = 0; k < 2; ++k) {
        for (std::size_t a = 0; a < split[k].vars.size(); ++a) g[k][a] = F[static_cast<std::size_t>(split[k].vars[a])];
      }
      for (int a = 0; a < n_inner; ++a) {
        for (const auto& [k, l] : split_links[static_cast<std::size_t>(a)]) {
          g[k][static_cast<std::size_t>(l.local)] += l.w * spin[static_cast<std::size_t>(a)];
        }
      }

      auto leaf = [&] {
        Weight e = e_outer + e_inner;
        std::uint64_t m = omask | tmask;
        for (int k = 0; k < 2; ++k) {
          if (split[k].vars.empty()) continue;
          Weight be = 0;
          std::uint64_t bl = 0;
          split[k].minimize(g[k], scratch[k], be, bl);
          e += be;
          m |= split[k].to_global(bl);
        }
        out.best.offer(e, m);
      };
      leaf();
      for (std::uint64_t t = 1; t < leaves; ++t) {
        const int a = branch[static_cast<std::size_t>(std::countr_zero(t))];
        const auto sa = static_cast<std::size_t>(a);
        e_inner += -2 * spin[sa] * q[sa];
        spin[sa] = -spin[sa];
        tmask ^= std::uint64_t{1} << inner[sa];
        const Weight s2 = 2 * spin[sa];
        for (const auto& l : inner_links[sa]) q[static_cast<std::size_t>(l.local)] += s2 * l.w;
        for (const auto& [k, l] : split_links[sa]) g[k][static_cast<std::size_t>(l.local)] += s2 * l.w;
        leaf();
      }
    };

    visit();
    const std::uint64_t steps = std::uint64_t{1} << low;
    for (std::uint64_t t = 1; t < steps; ++t) {
      const int v = outer_vars[static_cast<std::size_t>(std::countr_zero(t))];
      const auto sv = static_cast<std::size_t>(v);
      const int s_old = mask::spin(omask, v);
      e_outer += -2 * s_old * F[sv];
      omask ^= std::uint64_t{1} << v;
      for (const auto& nb : inst.neighbors(v)) F[static_cast<std::size_t>(nb.j)] += -2 * s_old * nb.w;
      visit();
    }
  });

  EngineOutcome total;
  Best best;
  for (const auto& r : results) {
    if (r.best.valid) best.offer(r.best.energy, r.best.mask);
    total.leaves += r.leaves;
    total.outer += r.outer;
    total.z += r.z;
    total.tie_branches += r.ties;
    total.split_evaluations += r.split_evals;
  }
  total.best_mask = best.mask;
  total.energy = best.energy;
  return total;
}

}  // namespace isingfix::detail
