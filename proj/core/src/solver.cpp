#include "isingfix/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "engine.hpp"
#include "gray_scan.hpp"
#include "isingfix/error.hpp"
#include "parallel.hpp"

namespace isingfix {

namespace {

Weight abs_w(Weight w) { return w < 0 ? -w : w; }

std::vector<int> sorted_set(const IsingInstance& inst, std::span<const int> T) {
  std::vector<int> s(T.begin(), T.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("T: repeated variable");
  for (int v : s) {
    if (v < 0 || static_cast<std::size_t>(v) >= inst.size()) throw std::invalid_argument("T: variable out of range");
  }
  return s;
}

std::vector<int> to_parent(const Subinstance& sub, std::span<const int> local) {
  std::vector<int> out;
  out.reserve(local.size());
  for (int v : local) out.push_back(sub.to_parent[static_cast<std::size_t>(v)]);
  std::sort(out.begin(), out.end());
  return out;
}

SolveResult run(const IsingInstance& inst, detail::EngineSets sets, const SolveOptions& options,
                SolveMethod method, std::string path) {
  const auto o = detail::run_engine(inst, sets, options, false);
  SolveResult r;
  r.best = Assignment::from_mask(o.best_mask, inst.size());
  r.energy = o.energy;
  r.leaves_explored = o.leaves;
  r.outer_assignments = o.outer;
  r.z = o.z;
  r.tie_branches = o.tie_branches;
  r.split_evaluations = o.split_evaluations;
  r.method = method;
  r.path = std::move(path);
  r.T = std::move(sets.T);
  r.t1 = std::move(sets.t1);
  r.t2 = std::move(sets.t2);
  return r;
}

bool usable(const TSetCertificate& cert) { return cert.checks.all() && !cert.T.empty(); }

}  // namespace

std::string to_string(BigCount value) {
  if (value == 0) return "0";
  std::string s;
  while (value > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

EffectiveView effective_view(const IsingInstance& inst, std::span<const int> T, const Assignment& outer) {
  EffectiveView view;
  view.T = sorted_set(inst, T);
  const std::size_t n = inst.size();
  std::vector<char> in_t(n, 0);
  for (int v : view.T) in_t[static_cast<std::size_t>(v)] = 1;
  for (std::size_t v = 0; v < n; ++v) {
    if (!in_t[v]) view.outer_vars.push_back(static_cast<int>(v));
  }
  std::vector<int> spin(n, 0);
  if (outer.size() == n) {
    for (int v : view.outer_vars) spin[static_cast<std::size_t>(v)] = outer.spin(static_cast<std::size_t>(v));
  } else if (outer.size() == view.outer_vars.size()) {
    for (std::size_t k = 0; k < view.outer_vars.size(); ++k) {
      spin[static_cast<std::size_t>(view.outer_vars[k])] = outer.spin(k);
    }
  } else {
    throw std::invalid_argument("effective_view: outer assignment has the wrong length");
  }
  view.outer = Assignment(view.outer_vars.size());
  for (std::size_t k = 0; k < view.outer_vars.size(); ++k) {
    view.outer.set_spin(k, spin[static_cast<std::size_t>(view.outer_vars[k])]);
  }
  for (int i : view.T) {
    Weight he = inst.h(i);
    Weight hm = 0;
    for (const auto& nb : inst.neighbors(i)) {
      if (in_t[static_cast<std::size_t>(nb.j)]) hm += abs_w(nb.w);
      else he += nb.w * spin[static_cast<std::size_t>(nb.j)];
    }
    view.h_eff.push_back(he);
    view.h_max.push_back(hm);
    if (abs_w(he) >= hm) {
      view.fixed.push_back(i);
      view.forced.push_back(he > 0 ? -1 : 1);
    } else {
      view.free.push_back(i);
      view.forced.push_back(0);
    }
  }
  return view;
}

const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::kBrute: return "brute";
    case SolveMethod::kColoring: return "coloring";
    case SolveMethod::kEffective: return "effective";
    case SolveMethod::kAvgDegree: return "avg-degree";
    case SolveMethod::kCombined: return "combined";
  }
  return "unknown";
}

SolveMethod parse_solve_method(const std::string& name) {
  for (auto m : {SolveMethod::kBrute, SolveMethod::kColoring, SolveMethod::kEffective, SolveMethod::kAvgDegree,
                 SolveMethod::kCombined}) {
    if (name == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown solve method '" + name + "'");
}

SolveResult solve_brute(const IsingInstance& inst, const SolveOptions& options) {
  const int n = static_cast<int>(inst.size());
  detail::require_bits(inst.size(), options.max_bits, "solve_brute");
  const int block_bits = detail::block_bits_for(n);
  const std::size_t blocks = std::size_t{1} << block_bits;
  struct Partial {
    Weight energy = 0;
    std::uint64_t mask = 0;
  };
  std::vector<Partial> part(blocks);
  detail::for_each_block(blocks, options.workers, [&](std::size_t block) {
    Partial best;
    bool have = false;
    detail::scan_block(inst, block, block_bits, [&](const detail::SpinScan& s) {
      const Weight e = s.energy();
      if (!have || e < best.energy || (e == best.energy && mask::lex_less(s.mask(), best.mask))) {
        have = true;
        best = {e, s.mask()};
      }
    });
    part[block] = best;
  });
  Partial best = part[0];
  for (std::size_t b = 1; b < blocks; ++b) {
    if (part[b].energy < best.energy || (part[b].energy == best.energy && mask::lex_less(part[b].mask, best.mask))) {
      best = part[b];
    }
  }
  SolveResult r;
  r.best = Assignment::from_mask(best.mask, inst.size());
  r.energy = best.energy;
  r.leaves_explored = std::uint64_t{1} << n;
  r.outer_assignments = r.leaves_explored;
  r.z = r.leaves_explored;
  r.method = SolveMethod::kBrute;
  r.path = "brute";
  return r;
}

SolveResult solve_effective(const IsingInstance& inst, const TSetCertificate& cert, const SolveOptions& options) {
  return run(inst, {sorted_set(inst, cert.T), {}, {}}, options, SolveMethod::kEffective, "effective");
}

std::vector<int> greedy_coloring(const DegreeGraph& graph) {
  const std::size_t n = graph.size();
  std::vector<int> color(n, -1);
  std::vector<char> taken;
  for (std::size_t v = 0; v < n; ++v) {
    taken.assign(graph.adjacency[v].size() + 1, 0);
    for (int u : graph.adjacency[v]) {
      const int c = color[static_cast<std::size_t>(u)];
      if (c >= 0 && static_cast<std::size_t>(c) < taken.size()) taken[static_cast<std::size_t>(c)] = 1;
    }
    int c = 0;
    while (taken[static_cast<std::size_t>(c)]) ++c;
    color[v] = c;
  }
  return color;
}

std::vector<int> largest_color_class(const DegreeGraph& graph) {
  const auto color = greedy_coloring(graph);
  if (color.empty()) return {};
  const int colors = *std::max_element(color.begin(), color.end()) + 1;
  std::vector<int> size(static_cast<std::size_t>(colors), 0);
  for (int c : color) ++size[static_cast<std::size_t>(c)];
  const int pick = static_cast<int>(std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<int> out;
  for (std::size_t v = 0; v < color.size(); ++v) {
    if (color[v] == pick) out.push_back(static_cast<int>(v));
  }
  return out;
}

SolveResult solve_coloring_baseline(const IsingInstance& inst, const SolveOptions& options) {
  return run(inst, {largest_color_class(degree_graph(inst)), {}, {}}, options, SolveMethod::kColoring, "coloring");
}

SolveResult solve_effective_auto(const IsingInstance& inst, const SolveOptions& options) {
  const DegreeGraph g = degree_graph(inst);
  std::string path = "effective";
  try {
    if (g.max_degree >= options.min_degree) {
      const auto cert = find_T_randomized(inst, options.tparams, options.seed, options.rounds);
      if (usable(cert)) {
        auto r = solve_effective(inst, cert, options);
        return r;
      }
      path = "effective->coloring";
    } else {
      path = "coloring";
    }
  } catch (const LimitError&) {
    path = "effective->coloring";
  }
  try {
    auto r = solve_coloring_baseline(inst, options);
    r.method = SolveMethod::kEffective;
    r.path = path;
    return r;
  } catch (const LimitError&) {
    if (inst.size() > static_cast<std::size_t>(options.max_bits)) throw;
  }
  auto r = solve_brute(inst, options);
  r.method = SolveMethod::kEffective;
  r.path = path + "->brute";
  return r;
}

DegreeSplit avg_degree_split(const IsingInstance& inst) {
  const DegreeGraph g = degree_graph(inst);
  DegreeSplit split;
  split.average_degree = g.average_degree;
  const auto n = static_cast<std::int64_t>(g.size());
  const auto edges4 = 4 * static_cast<std::int64_t>(g.edge_count);
  for (std::size_t v = 0; v < g.size(); ++v) {
    // deg <= 2 * (2E / n)
    if (static_cast<std::int64_t>(g.degree[v]) * n <= edges4) split.low.push_back(static_cast<int>(v));
    else split.high.push_back(static_cast<int>(v));
  }
  return split;
}

SolveResult solve_avg_degree(const IsingInstance& inst, const SolveOptions& options) {
  const DegreeSplit split = avg_degree_split(inst);
  const Subinstance sub = induced_subinstance(inst, split.low);
  std::vector<int> T;
  std::string path = "avg-degree";
  if (!split.low.empty()) {
    const auto cert = find_T_randomized(sub.inst, options.tparams, options.seed, options.rounds);
    if (usable(cert)) {
      T = to_parent(sub, cert.T);
    } else {
      T = to_parent(sub, largest_color_class(degree_graph(sub.inst)));
      path = "avg-degree/coloring";
    }
  }
  return run(inst, {std::move(T), {}, {}}, options, SolveMethod::kAvgDegree, path);
}

SolveResult solve_combined(const IsingInstance& inst, double alpha, Weight j_max, const SolveOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("solve_combined: alpha must lie in (0,1)");
  if (j_max < 0) throw std::invalid_argument("solve_combined: j_max must be nonnegative");
  const std::size_t n = inst.size();
  Weight row_max = 0;
  for (std::size_t i = 0; i < n; ++i) row_max = std::max(row_max, inst.abs_row_sum(static_cast<int>(i)));
  if (j_max == 0) j_max = row_max;
  if (row_max > j_max) {
    throw std::invalid_argument("solve_combined: sum_j |J_ij| = " + std::to_string(row_max) +
                                " exceeds j_max = " + std::to_string(j_max));
  }

  const DegreeGraph g = degree_graph(inst);
  const double d = g.average_degree;
  TParams params = options.tparams;
  if (params.epsilon == 0.0) params.epsilon = d >= 2.0 ? std::log2(d) / d : 0.5;
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) {
    throw std::invalid_argument("solve_combined: epsilon must lie in (0,1)");
  }
  const auto d_tt = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(1.0 / (params.c_dTbar * params.epsilon))));

  auto fallback = [&](const std::string& why) {
    auto r = solve_effective_auto(inst, options);
    r.method = SolveMethod::kCombined;
    r.path = "combined(" + why + ")->" + r.path;
    return r;
  };

  // Low-degree case: enumerate variables of degree > d_TTbar, fix the rest
  // through an independent set of the low-degree part.
  std::size_t enough = 0;
  for (int deg : g.degree) {
    if (deg >= d_tt) ++enough;
  }
  if (n > 0 && 1000 * enough < 999 * n) {
    std::vector<int> low;
    for (std::size_t v = 0; v < n; ++v) {
      if (g.degree[v] <= d_tt) low.push_back(static_cast<int>(v));
    }
    const Subinstance sub = induced_subinstance(inst, low);
    auto T = to_parent(sub, largest_color_class(degree_graph(sub.inst)));
    return run(inst, {std::move(T), {}, {}}, options, SolveMethod::kCombined, "combined/low-degree");
  }

  const std::size_t target = t1t2_target_size(g, alpha);
  const T1T2Result pair = find_T1T2(g, target, T1T2Method::kAuto, options.seed, options.rounds);
  if (!pair.success) return fallback("no T1/T2");

  std::vector<char> split(n, 0);
  for (int v : pair.t1) split[static_cast<std::size_t>(v)] = 1;
  for (int v : pair.t2) split[static_cast<std::size_t>(v)] = 1;
  std::vector<int> members;
  std::vector<char> in_w0(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const bool w0 = !split[v] && static_cast<std::int64_t>(g.degree[v]) * static_cast<std::int64_t>(n) <=
                                     4 * static_cast<std::int64_t>(g.edge_count);
    in_w0[v] = w0;
    if (w0 || split[v]) members.push_back(static_cast<int>(v));
  }
  const Subinstance sub = induced_subinstance(inst, members);
  TConstraint constraint;
  std::vector<int> pool;
  for (std::size_t k = 0; k < sub.to_parent.size(); ++k) {
    const auto v = static_cast<std::size_t>(sub.to_parent[k]);
    if (in_w0[v]) pool.push_back(static_cast<int>(k));
  }
  for (std::size_t k = 0; k < sub.to_parent.size(); ++k) {
    const int v = sub.to_parent[k];
    if (std::binary_search(pair.t1.begin(), pair.t1.end(), v)) constraint.t1.push_back(static_cast<int>(k));
    if (std::binary_search(pair.t2.begin(), pair.t2.end(), v)) constraint.t2.push_back(static_cast<int>(k));
  }
  if (pool.empty()) return fallback("empty W0");
  constraint.j_max = j_max;
  constraint.v0_size = pool.size();
  const auto cert = find_T_randomized(sub.inst, params, options.seed, options.rounds, pool, constraint);
  if (!usable(cert)) return fallback("no constrained T");

  try {
    return run(inst, {to_parent(sub, cert.T), pair.t1, pair.t2}, options, SolveMethod::kCombined, "combined");
  } catch (const LimitError&) {
    return fallback("limit");
  }
}

BigCount compute_Z(const IsingInstance& inst, std::span<const int> T, const SolveOptions& options) {
  return detail::run_engine(inst, {sorted_set(inst, T), {}, {}}, options, true).z;
}

SolveResult solve(const IsingInstance& inst, SolveMethod method, const SolveOptions& options, double alpha,
                  Weight j_max) {
  switch (method) {
    case SolveMethod::kBrute: return solve_brute(inst, options);
    case SolveMethod::kColoring: return solve_coloring_baseline(inst, options);
    case SolveMethod::kEffective: return solve_effective_auto(inst, options);
    case SolveMethod::kAvgDegree: return solve_avg_degree(inst, options);
    case SolveMethod::kCombined: return solve_combined(inst, alpha, j_max, options);
  }
  throw std::invalid_argument("unknown solve method");
}

}  // namespace isingfix
