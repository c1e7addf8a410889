#pragma once

#include <cstdint>
#include <vector>

#include "isingfix/instance.hpp"
#include "isingfix/solver.hpp"

namespace isingfix::detail {

/// Variable roles for one engine run. Everything outside T, t1 and t2 is
/// enumerated; t1 and t2 must have no coupling between them.
struct EngineSets {
  std::vector<int> T;
  std::vector<int> t1;
  std::vector<int> t2;
};

struct EngineOutcome {
  std::uint64_t best_mask = 0;
  Weight energy = 0;
  std::uint64_t leaves = 0;
  std::uint64_t outer = 0;
  BigCount z = 0;
  std::uint64_t tie_branches = 0;
  std::uint64_t split_evaluations = 0;
};

/// count_only skips the branch enumeration and only accumulates outer,
/// z and tie counters.
EngineOutcome run_engine(const IsingInstance& inst, const EngineSets& sets, const SolveOptions& options,
                         bool count_only);

}  // namespace isingfix::detail
