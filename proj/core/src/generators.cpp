#include "isingfix/generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "gray_scan.hpp"
#include "isingfix/error.hpp"
#include "isingfix/rng.hpp"
#include "parallel.hpp"

namespace isingfix {

namespace {

void require_even_block(int n, const char* what) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument(std::string(what) + ": size must be even and >= 2 (got " +
                                std::to_string(n) + ")");
  }
}

Weight nonzero_between(CounterRng& rng, Weight lo, Weight hi) {
  if (lo > hi || (lo == 0 && hi == 0)) {
    throw std::invalid_argument("coupling range must contain a nonzero value");
  }
  for (;;) {
    const Weight w = rng.between(lo, hi);
    if (w != 0) return w;
  }
}

}  // namespace

IsingInstance gen_csse(int n) {
  require_even_block(n, "gen_csse");
  return gen_multicopy(1, n);
}

Wcnf gen_csse_wcnf(int n) {
  require_even_block(n, "gen_csse_wcnf");
  return gen_multicopy_wcnf(1, n);
}

IsingInstance gen_multicopy(int copies, int block) {
  if (copies < 1) throw std::invalid_argument("gen_multicopy: copies must be >= 1");
  require_even_block(block, "gen_multicopy");
  const auto n = static_cast<std::size_t>(copies) * static_cast<std::size_t>(block);
  std::vector<Coupling> couplings;
  couplings.reserve(static_cast<std::size_t>(copies) * static_cast<std::size_t>(block) *
                    static_cast<std::size_t>(block - 1) / 2);
  for (int c = 0; c < copies; ++c) {
    const int base = c * block;
    for (int i = 0; i < block; ++i) {
      for (int j = i + 1; j < block; ++j) couplings.push_back({base + i, base + j, 2});
    }
  }
  const Weight pairs_per_copy = static_cast<Weight>(block) * (block - 1) / 2;
  return IsingInstance(n, std::vector<Weight>(n, 0), std::move(couplings),
                       2 * pairs_per_copy * copies);
}

Wcnf gen_multicopy_wcnf(int copies, int block) {
  if (copies < 1) throw std::invalid_argument("gen_multicopy_wcnf: copies must be >= 1");
  require_even_block(block, "gen_multicopy_wcnf");
  Wcnf w;
  w.n = static_cast<std::size_t>(copies) * static_cast<std::size_t>(block);
  for (int c = 0; c < copies; ++c) {
    const int base = c * block + 1;
    for (int i = 0; i < block; ++i) {
      for (int j = i + 1; j < block; ++j) {
        w.clauses.push_back({{base + i, base + j}, 1});
        w.clauses.push_back({{-(base + i), -(base + j)}, 1});
      }
    }
  }
  return w;
}

ColumnInstance gen_column(int f, int l, ColumnTargets mode, std::uint64_t seed) {
  if (f < 1) throw std::invalid_argument("gen_column: f must be >= 1");
  if (l < 2 || l % 2 != 0) throw std::invalid_argument("gen_column: l must be even and >= 2");
  std::size_t n = 1;
  for (int a = 0; a < f; ++a) {
    n *= static_cast<std::size_t>(l);
    if (n > (std::size_t{1} << 20)) throw LimitError("gen_column: l^f exceeds 2^20 variables");
  }

  ColumnInstance ci;
  ci.f = f;
  ci.l = l;
  ci.mode = mode;
  std::size_t stride = 1;
  for (int b = 0; b < f; ++b) {
    for (std::size_t p = 0; p < n; ++p) {
      if ((p / stride) % static_cast<std::size_t>(l) != 0) continue;
      std::vector<int> column;
      column.reserve(static_cast<std::size_t>(l));
      for (int t = 0; t < l; ++t) column.push_back(static_cast<int>(p + static_cast<std::size_t>(t) * stride));
      ci.columns.push_back(std::move(column));
    }
    stride *= static_cast<std::size_t>(l);
  }

  ci.targets.assign(ci.columns.size(), 0);
  if (mode == ColumnTargets::kSampled) {
    CounterRng rng(seed, /*stream=*/0x636f6c756d6eULL);
    Assignment planted(n);
    for (std::size_t i = 0; i < n; ++i) planted.set_bit(i, (rng.next() >> 63) != 0);
    for (std::size_t c = 0; c < ci.columns.size(); ++c) {
      Weight sum = 0;
      for (int v : ci.columns[c]) sum += planted.spin(static_cast<std::size_t>(v));
      ci.targets[c] = sum;
    }
    ci.seed = seed;
    ci.planted = std::move(planted);
  }

  // 4 (sum S - M)^2 = 4 (l + M^2) - 8 M sum S + 8 sum_{i<j} S_i S_j.
  InstanceBuilder builder(n);
  for (std::size_t c = 0; c < ci.columns.size(); ++c) {
    const auto& column = ci.columns[c];
    const Weight m = ci.targets[c];
    builder.add_constant(4 * (static_cast<Weight>(l) + m * m));
    for (std::size_t a = 0; a < column.size(); ++a) {
      if (m != 0) builder.add_field(column[a], -8 * m);
      for (std::size_t b = a + 1; b < column.size(); ++b) builder.add_coupling(column[a], column[b], 8);
    }
  }
  ci.inst = builder.build();
  return ci;
}

std::vector<Assignment> zero_energy_assignments(const ColumnInstance& ci, int max_bits, unsigned workers) {
  const IsingInstance& inst = ci.inst;
  detail::require_bits(inst.size(), max_bits, "zero_energy_assignments");
  const int n = static_cast<int>(inst.size());
  const int block_bits = detail::block_bits_for(n);
  const std::size_t blocks = std::size_t{1} << block_bits;
  std::vector<std::vector<std::uint64_t>> found(blocks);
  detail::for_each_block(blocks, workers, [&](std::size_t b) {
    detail::scan_block(inst, b, block_bits, [&](const detail::SpinScan& scan) {
      if (scan.energy() == 0) found[b].push_back(scan.mask());
    });
  });
  std::vector<std::uint64_t> all;
  for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
  std::sort(all.begin(), all.end(), mask::lex_less);
  std::vector<Assignment> out;
  out.reserve(all.size());
  for (auto m : all) out.push_back(Assignment::from_mask(m, inst.size()));
  return out;
}

IsingInstance gen_random(const RandomInstanceSpec& spec, std::uint64_t seed) {
  if (spec.n < 0) throw std::invalid_argument("gen_random: n must be >= 0");
  if (spec.density < 0.0 || spec.density > 1.0) throw std::invalid_argument("gen_random: density must be in [0,1]");
  CounterRng rng(seed, /*stream=*/0x72616e646f6dULL);
  const auto n = static_cast<std::size_t>(spec.n);
  std::vector<Weight> h(n);
  for (auto& v : h) v = rng.between(spec.h_lo, spec.h_hi);
  std::vector<Coupling> couplings;
  for (int i = 0; i < spec.n; ++i) {
    for (int j = i + 1; j < spec.n; ++j) {
      if (rng.bernoulli(spec.density)) couplings.push_back({i, j, nonzero_between(rng, spec.w_lo, spec.w_hi)});
    }
  }
  return IsingInstance(n, std::move(h), std::move(couplings), 0);
}

IsingInstance gen_random_regular(int n, int d, std::uint64_t seed, Weight w_lo, Weight w_hi) {
  if (n < 1 || d < 0 || d >= n || (static_cast<long long>(n) * d) % 2 != 0) {
    throw std::invalid_argument("gen_random_regular: need 0 <= d < n and n*d even");
  }
  constexpr int kAttempts = 10000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    CounterRng rng(seed, 0x726567756c6172ULL + static_cast<std::uint64_t>(attempt));
    std::vector<int> points;
    points.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (int v = 0; v < n; ++v) {
      for (int k = 0; k < d; ++k) points.push_back(v);
    }
    rng.shuffle(std::span<int>(points));
    std::set<std::pair<int, int>> edges;
    bool simple = true;
    for (std::size_t k = 0; k + 1 < points.size(); k += 2) {
      int a = points[k];
      int b = points[k + 1];
      if (a == b) {
        simple = false;
        break;
      }
      if (a > b) std::swap(a, b);
      if (!edges.insert({a, b}).second) {
        simple = false;
        break;
      }
    }
    if (!simple) continue;
    std::vector<Coupling> couplings;
    for (const auto& [a, b] : edges) couplings.push_back({a, b, nonzero_between(rng, w_lo, w_hi)});
    return IsingInstance(static_cast<std::size_t>(n), std::vector<Weight>(static_cast<std::size_t>(n), 0),
                         std::move(couplings), 0);
  }
  throw std::runtime_error("gen_random_regular: no simple graph found");
}

IsingInstance gen_edgeless(int n, std::uint64_t seed, Weight h_lo, Weight h_hi) {
  if (n < 0) throw std::invalid_argument("gen_edgeless: n must be >= 0");
  CounterRng rng(seed, /*stream=*/0x656467656c657373ULL);
  std::vector<Weight> h(static_cast<std::size_t>(n));
  for (auto& v : h) v = rng.between(h_lo, h_hi);
  return IsingInstance(static_cast<std::size_t>(n), std::move(h), {}, 0);
}

}  // namespace isingfix
