#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "isingfix/instance.hpp"

namespace isingfix {

/// A clause over one or two literals. Literal +v is x_v, -v is not x_v,
/// with 1-based variable indices as in DIMACS.
struct Clause {
  std::vector<int> literals;
  Weight weight = 1;
};

/// Weighted 2-CNF after normalization: no tautologies, no repeated literal
/// inside a clause, every index in [1, n].
struct Wcnf {
  std::size_t n = 0;
  std::vector<Clause> clauses;
  /// Hard-clause weight from the header, 0 when absent. Read but not given
  /// special meaning.
  Weight top = 0;
  /// Tautological clauses dropped while parsing.
  std::size_t dropped_tautologies = 0;

  Weight total_weight() const;
};

/// DIMACS WCNF: comment lines start with 'c', header `p wcnf n m [top]`,
/// clause lines `w l1 [l2] 0`. Throws ParseError.
Wcnf parse_wcnf(std::istream& in);
Wcnf parse_wcnf(std::string_view text);

/// Weighted violated-clause count of an assignment, counted clause by clause.
Weight violated_weight(const Wcnf& w, const Assignment& a);

/// Exact reduction in E4 units. A 2-clause with literal signs (s_i, s_j) and
/// weight w contributes c0 += w, h_i -= w s_i, h_j -= w s_j, J_ij += w s_i s_j;
/// a unit clause contributes c0 += 2w, h_i -= 2w s_i. Hence
/// energy(result, a) == 4 * violated_weight(w, a) for every a.
IsingInstance wcnf_to_ising(const Wcnf& w);

/// total_weight - energy/4. Throws std::invalid_argument when the energy is
/// not a multiple of 4, which means `inst` did not come from wcnf_to_ising.
Weight ising_to_maxsat_value(const IsingInstance& inst, const Assignment& a, Weight total_weight);

/// Serializes back to DIMACS WCNF text.
void write_wcnf(std::ostream& out, const Wcnf& w);

}  // namespace isingfix
