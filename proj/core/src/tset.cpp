#include "isingfix/tset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "isingfix/error.hpp"
#include "isingfix/rng.hpp"

namespace isingfix {

namespace {

constexpr int kMaxDeterministicN = 24;

Weight abs_weight(Weight w) { return w < 0 ? -w : w; }

struct MemberEval {
  int internal_degree = 0;
  Weight internal_max = 0;
  std::vector<int> qualifying;
  std::vector<int> strong;
  bool needs_strong = false;
  bool degree_ok = false;
  bool strong_ok = false;
  std::int64_t load = 0;
  bool load_ok = false;
  Weight t12 = 0;
  bool t12_ok = true;
};

// Evaluates the conditions for every member of `set` (sorted, distinct).
std::vector<MemberEval> evaluate(const IsingInstance& inst, std::span<const int> set,
                                 const TParams& params, const TThresholds& th,
                                 const std::optional<TConstraint>& constraint) {
  const std::size_t n = inst.size();
  std::vector<char> in_set(n, 0);
  for (int v : set) in_set[static_cast<std::size_t>(v)] = 1;
  std::vector<char> in_t12(n, 0);
  if (constraint) {
    for (int v : constraint->t1) in_t12[static_cast<std::size_t>(v)] = 1;
    for (int v : constraint->t2) in_t12[static_cast<std::size_t>(v)] = 1;
  }

  std::vector<MemberEval> out(set.size());
  for (std::size_t k = 0; k < set.size(); ++k) {
    const int i = set[k];
    MemberEval& m = out[k];
    for (const auto& nb : inst.neighbors(i)) {
      if (in_set[static_cast<std::size_t>(nb.j)]) {
        ++m.internal_degree;
        m.internal_max = std::max(m.internal_max, abs_weight(nb.w));
      }
    }
    m.degree_ok = static_cast<double>(m.internal_degree) <= th.d_T + 1e-9;
    // Outside j qualify when |J_ij| reaches the strongest internal coupling;
    // with internal couplings present (or in constrained mode) only nonzero
    // couplings can qualify, so scanning neighbors suffices.
    for (const auto& nb : inst.neighbors(i)) {
      if (!in_set[static_cast<std::size_t>(nb.j)] && abs_weight(nb.w) >= m.internal_max) {
        m.qualifying.push_back(nb.j);
      }
    }
    m.needs_strong = constraint.has_value() || m.internal_degree > 0;
    m.strong_ok = !m.needs_strong || static_cast<std::int64_t>(m.qualifying.size()) >= th.d_TTbar;
    if (m.needs_strong && m.strong_ok) {
      std::vector<int> pick = m.qualifying;
      if (params.strong_edges == StrongEdgeRule::kGreedy) {
        std::stable_sort(pick.begin(), pick.end(), [&](int a, int b) {
          const Weight wa = abs_weight(inst.coupling(i, a));
          const Weight wb = abs_weight(inst.coupling(i, b));
          return wa != wb ? wa > wb : a < b;
        });
      } else {
        CounterRng rng(params.strong_edge_seed, static_cast<std::uint64_t>(i));
        rng.shuffle(std::span<int>(pick));
      }
      pick.resize(static_cast<std::size_t>(th.d_TTbar));
      std::sort(pick.begin(), pick.end());
      m.strong = std::move(pick);
    }
    if (constraint) {
      for (const auto& nb : inst.neighbors(i)) {
        if (in_t12[static_cast<std::size_t>(nb.j)]) m.t12 += abs_weight(nb.w);
      }
      const __int128 lhs = static_cast<__int128>(m.t12) * static_cast<__int128>(constraint->v0_size);
      const __int128 rhs = static_cast<__int128>(params.c_T12) * constraint->j_max *
                           static_cast<__int128>(constraint->t1.size() + constraint->t2.size());
      m.t12_ok = lhs <= rhs;
    }
  }

  std::vector<std::int64_t> attached(n, 0);
  for (const auto& m : out) {
    for (int j : m.strong) ++attached[static_cast<std::size_t>(j)];
  }
  for (std::size_t k = 0; k < set.size(); ++k) {
    MemberEval& m = out[k];
    for (const auto& nb : inst.neighbors(set[k])) {
      if (!in_set[static_cast<std::size_t>(nb.j)]) m.load += attached[static_cast<std::size_t>(nb.j)];
    }
    m.load_ok = m.load <= th.delta;
  }
  return out;
}

std::vector<int> normalized_set(const IsingInstance& inst, std::span<const int> T) {
  std::vector<int> s(T.begin(), T.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("T-set: repeated vertex");
  for (int v : s) {
    if (v < 0 || static_cast<std::size_t>(v) >= inst.size()) throw std::invalid_argument("T-set: vertex out of range");
  }
  return s;
}

void validate_constraint(const IsingInstance& inst, const std::vector<int>& T, const TConstraint& c) {
  std::vector<char> mark(inst.size(), 0);
  for (int v : c.t1) {
    if (v < 0 || static_cast<std::size_t>(v) >= inst.size()) throw std::invalid_argument("T1 vertex out of range");
    mark[static_cast<std::size_t>(v)] = 1;
  }
  for (int v : c.t2) {
    if (v < 0 || static_cast<std::size_t>(v) >= inst.size()) throw std::invalid_argument("T2 vertex out of range");
    mark[static_cast<std::size_t>(v)] = 1;
  }
  for (int v : T) {
    if (mark[static_cast<std::size_t>(v)]) throw std::invalid_argument("constrained T must avoid T1 and T2");
  }
  if (c.v0_size == 0) throw std::invalid_argument("constrained mode needs v0_size > 0");
}

}  // namespace

TThresholds resolve_thresholds(const IsingInstance& inst, const TParams& params) {
  TThresholds th;
  for (std::size_t i = 0; i < inst.size(); ++i) th.d = std::max(th.d, inst.degree(static_cast<int>(i)));
  if (params.epsilon != 0.0) {
    th.epsilon = params.epsilon;
  } else if (th.d >= 2) {
    th.epsilon = std::log2(static_cast<double>(th.d)) / th.d;
  } else {
    th.epsilon = 0.5;
  }
  if (!(th.epsilon > 0.0 && th.epsilon < 1.0)) throw std::invalid_argument("T-set: epsilon must lie in (0,1)");
  if (params.c_dT <= 0 || params.c_dTbar <= 0 || params.c_Delta <= 0 || params.c_T12 <= 0) {
    throw std::invalid_argument("T-set: constants must be positive");
  }
  th.d_T = params.c_dT * th.epsilon * th.d;
  const auto raw = static_cast<std::int64_t>(std::floor(1.0 / (params.c_dTbar * th.epsilon)));
  th.d_TTbar = std::max<std::int64_t>(raw, 1);
  th.d_TTbar_clamped = raw < 1;
  th.delta = static_cast<std::int64_t>(params.c_Delta) * th.d;
  return th;
}

TSetCertificate check_T(const IsingInstance& inst, std::span<const int> T, const TParams& params,
                        const std::optional<TConstraint>& constraint) {
  TSetCertificate cert;
  cert.T = normalized_set(inst, T);
  if (constraint) validate_constraint(inst, cert.T, *constraint);
  cert.params = params;
  cert.thresholds = resolve_thresholds(inst, params);
  cert.constrained = constraint.has_value();
  const auto eval = evaluate(inst, cert.T, params, cert.thresholds, constraint);
  if (constraint) cert.checks.t12_coupling = true;
  for (std::size_t k = 0; k < eval.size(); ++k) {
    const auto& m = eval[k];
    cert.checks.internal_degree = cert.checks.internal_degree && m.degree_ok;
    cert.checks.strong_edges = cert.checks.strong_edges && m.strong_ok;
    cert.checks.strong_load = cert.checks.strong_load && m.load_ok;
    if (constraint) cert.checks.t12_coupling = *cert.checks.t12_coupling && m.t12_ok;
    if (!m.strong.empty()) cert.strong_edges.emplace_back(cert.T[k], m.strong);
    cert.members.push_back({m.internal_degree, static_cast<int>(m.qualifying.size()), m.load, m.t12});
  }
  cert.success = cert.checks.all();
  if (!cert.success) {
    if (!cert.checks.internal_degree) cert.failure = "internal degree exceeds d_T";
    else if (!cert.checks.strong_edges) cert.failure = "too few strong-edge candidates";
    else if (!cert.checks.strong_load) cert.failure = "strong-edge load exceeds Delta";
    else cert.failure = "coupling to T1/T2 exceeds bound";
  }
  return cert;
}

TSetCertificate find_T_randomized(const IsingInstance& inst, const TParams& params, std::uint64_t seed,
                                  int max_rounds, std::span<const int> pool,
                                  const std::optional<TConstraint>& constraint) {
  std::vector<int> candidates;
  if (pool.empty()) {
    candidates.resize(inst.size());
    std::iota(candidates.begin(), candidates.end(), 0);
  } else {
    candidates = normalized_set(inst, pool);
  }
  const TThresholds th = resolve_thresholds(inst, params);
  const double target = params.target_fraction * th.epsilon * static_cast<double>(candidates.size());

  TSetCertificate best;
  best.params = params;
  best.thresholds = th;
  best.constrained = constraint.has_value();
  best.failure = "no rounds run";
  bool best_valid = false;

  for (int round = 0; round < max_rounds; ++round) {
    CounterRng rng(seed, static_cast<std::uint64_t>(round));
    std::vector<int> t0;
    for (int v : candidates) {
      if (rng.bernoulli(th.epsilon)) t0.push_back(v);
    }
    if (constraint) validate_constraint(inst, t0, *constraint);
    const auto eval = evaluate(inst, t0, params, th, constraint);
    std::vector<int> good;
    for (std::size_t k = 0; k < t0.size(); ++k) {
      const auto& m = eval[k];
      const bool isolated = !constraint && m.internal_degree == 0;
      if (isolated || (m.degree_ok && m.strong_ok && m.load_ok && m.t12_ok)) good.push_back(t0[k]);
    }

    TSetCertificate cert = check_T(inst, good, params, constraint);
    cert.method = TMethod::kRandomized;
    cert.seed = seed;
    cert.attempts = round + 1;
    const bool big_enough = !cert.T.empty() && static_cast<double>(cert.T.size()) >= target;
    if (cert.checks.all() && big_enough) {
      cert.success = true;
      cert.failure.clear();
      return cert;
    }
    cert.success = false;
    if (cert.checks.all()) cert.failure = "T smaller than target";
    const bool better = (cert.checks.all() && !best_valid) ||
                        (cert.checks.all() == best_valid && cert.T.size() > best.T.size());
    if (better || round == 0) {
      best = std::move(cert);
      best_valid = best.checks.all();
    }
  }
  best.method = TMethod::kRandomized;
  best.seed = seed;
  best.attempts = std::max(max_rounds, 0);
  best.success = false;
  if (best.failure.empty()) best.failure = "no valid T within round budget";
  return best;
}

TSetCertificate find_T_deterministic(const IsingInstance& inst, const TParams& params, int size,
                                     const std::optional<TConstraint>& constraint) {
  const int n = static_cast<int>(inst.size());
  if (n > kMaxDeterministicN) {
    throw LimitError("find_T_deterministic: subset iteration is limited to n <= " +
                     std::to_string(kMaxDeterministicN));
  }
  TSetCertificate fail;
  fail.params = params;
  fail.thresholds = resolve_thresholds(inst, params);
  fail.constrained = constraint.has_value();
  fail.method = TMethod::kDeterministic;
  if (size <= 0 || size > n) {
    fail.failure = "size must satisfy 1 <= size <= n";
    return fail;
  }
  std::vector<char> excluded(static_cast<std::size_t>(n), 0);
  if (constraint) {
    for (int v : constraint->t1) excluded[static_cast<std::size_t>(v)] = 1;
    for (int v : constraint->t2) excluded[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<int> comb(static_cast<std::size_t>(size));
  std::iota(comb.begin(), comb.end(), 0);
  int tried = 0;
  for (;;) {
    const bool allowed = std::none_of(comb.begin(), comb.end(),
                                      [&](int v) { return excluded[static_cast<std::size_t>(v)] != 0; });
    if (allowed) {
      ++tried;
      TSetCertificate cert = check_T(inst, comb, params, constraint);
      if (cert.checks.all()) {
        cert.method = TMethod::kDeterministic;
        cert.attempts = tried;
        cert.success = true;
        return cert;
      }
    }
    int pos = size - 1;
    while (pos >= 0 && comb[static_cast<std::size_t>(pos)] == n - size + pos) --pos;
    if (pos < 0) break;
    ++comb[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < size; ++q) comb[static_cast<std::size_t>(q)] = comb[static_cast<std::size_t>(q - 1)] + 1;
  }
  fail.attempts = tried;
  fail.failure = "no subset of the requested size passes";
  return fail;
}

std::size_t t1t2_target_size(const DegreeGraph& graph, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("find_T1T2: alpha must lie in (0,1)");
  const double d = graph.average_degree;
  if (d <= 1.0) return 0;
  const double t = alpha * static_cast<double>(graph.size()) * std::log(d) / d;
  return static_cast<std::size_t>(std::floor(t + 1e-12));
}

namespace {

// T2 candidates for a fixed T1: outside T1 and without a neighbor in T1.
bool complete_pair(const DegreeGraph& graph, const std::vector<int>& t1, std::size_t target,
                   std::vector<int>& t2) {
  std::vector<char> blocked(graph.size(), 0);
  for (int u : t1) {
    blocked[static_cast<std::size_t>(u)] = 1;
    for (int v : graph.adjacency[static_cast<std::size_t>(u)]) blocked[static_cast<std::size_t>(v)] = 1;
  }
  t2.clear();
  for (std::size_t v = 0; v < graph.size() && t2.size() < target; ++v) {
    if (!blocked[v]) t2.push_back(static_cast<int>(v));
  }
  return t2.size() == target;
}

}  // namespace

T1T2Result find_T1T2(const DegreeGraph& graph, std::size_t target, T1T2Method method, std::uint64_t seed,
                     int rounds) {
  T1T2Result r;
  r.target = target;
  r.method = method;
  const std::size_t n = graph.size();
  if (target == 0) {
    r.failure = "target size is 0";
    return r;
  }
  if (2 * target > n) {
    r.failure = "target size exceeds n/2";
    return r;
  }
  if (method != T1T2Method::kDeterministic) {
    for (int round = 0; round < rounds; ++round) {
      ++r.attempts;
      CounterRng rng(seed, 0x7431743200ULL + static_cast<std::uint64_t>(round));
      r.t1 = rng.sample_without_replacement(static_cast<int>(n), static_cast<int>(target));
      if (complete_pair(graph, r.t1, target, r.t2)) {
        r.success = true;
        r.method = T1T2Method::kRandomized;
        return r;
      }
    }
  }
  if (method == T1T2Method::kRandomized || n > static_cast<std::size_t>(kMaxDeterministicN)) {
    r.t1.clear();
    r.t2.clear();
    r.failure = method == T1T2Method::kDeterministic ? "exhaustive search limited to n <= 24"
                                                      : "no pair found within the round budget";
    return r;
  }
  const int k = static_cast<int>(target);
  const int nn = static_cast<int>(n);
  std::vector<int> comb(target);
  std::iota(comb.begin(), comb.end(), 0);
  for (;;) {
    ++r.attempts;
    if (complete_pair(graph, comb, target, r.t2)) {
      r.t1 = comb;
      r.success = true;
      r.method = T1T2Method::kDeterministic;
      return r;
    }
    int pos = k - 1;
    while (pos >= 0 && comb[static_cast<std::size_t>(pos)] == nn - k + pos) --pos;
    if (pos < 0) break;
    ++comb[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < k; ++q) comb[static_cast<std::size_t>(q)] = comb[static_cast<std::size_t>(q - 1)] + 1;
  }
  r.t1.clear();
  r.t2.clear();
  r.method = T1T2Method::kDeterministic;
  r.failure = "no edge-free pair of the target size exists";
  return r;
}

NonsparseGoodSet good_set_nonsparse(const IsingInstance& inst, double epsilon, std::uint64_t seed,
                                    int max_rounds) {
  const std::size_t n = inst.size();
  if (n < 2) throw std::invalid_argument("good_set_nonsparse: need n >= 2");
  NonsparseGoodSet out;
  out.epsilon = epsilon != 0.0 ? epsilon : std::log2(static_cast<double>(n)) / static_cast<double>(n);
  if (!(out.epsilon > 0.0 && out.epsilon < 1.0)) throw std::invalid_argument("good_set_nonsparse: epsilon must lie in (0,1)");
  const auto t0_size = static_cast<std::size_t>(std::floor(out.epsilon * static_cast<double>(n) + 1e-12));
  const auto inv = static_cast<std::size_t>(std::floor(1.0 / out.epsilon + 1e-12));
  if (t0_size == 0) return out;

  for (int round = 0; round < max_rounds; ++round) {
    ++out.attempts;
    CounterRng rng(seed, 0x6e6f6e7370ULL + static_cast<std::uint64_t>(round));
    const auto t0 = rng.sample_without_replacement(static_cast<int>(n), static_cast<int>(t0_size));
    std::vector<char> in_t0(n, 0);
    for (int v : t0) in_t0[static_cast<std::size_t>(v)] = 1;
    std::vector<int> good;
    for (int i : t0) {
      Weight internal_max = 0;
      for (const auto& nb : inst.neighbors(i)) {
        if (in_t0[static_cast<std::size_t>(nb.j)]) internal_max = std::max(internal_max, abs_weight(nb.w));
      }
      std::size_t count = 0;
      if (internal_max == 0) {
        count = n - t0.size();
      } else {
        for (const auto& nb : inst.neighbors(i)) {
          if (!in_t0[static_cast<std::size_t>(nb.j)] && abs_weight(nb.w) >= internal_max) ++count;
        }
      }
      if (2 * count >= inv) good.push_back(i);
    }
    out.T0 = t0;
    out.T = std::move(good);
    if (2 * out.T.size() >= t0_size && !out.T.empty()) {
      out.success = true;
      return out;
    }
  }
  return out;
}

const char* to_string(TMethod m) {
  switch (m) {
    case TMethod::kChecked: return "checked";
    case TMethod::kRandomized: return "randomized";
    case TMethod::kDeterministic: return "deterministic";
  }
  return "unknown";
}

const char* to_string(T1T2Method m) {
  switch (m) {
    case T1T2Method::kRandomized: return "randomized";
    case T1T2Method::kDeterministic: return "deterministic";
    case T1T2Method::kAuto: return "auto";
  }
  return "unknown";
}

}  // namespace isingfix
