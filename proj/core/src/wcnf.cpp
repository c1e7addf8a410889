#include "isingfix/wcnf.hpp"

#include <cerrno>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "isingfix/error.hpp"

namespace isingfix {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ParseError("wcnf line " + std::to_string(line) + ": " + msg);
}

bool parse_int(const std::string& token, long long& out) {
  if (token.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtoll(token.c_str(), &end, 10);
  return errno == 0 && end == token.c_str() + token.size();
}

}  // namespace

Weight Wcnf::total_weight() const {
  Weight total = 0;
  for (const auto& c : clauses) {
    if (__builtin_add_overflow(total, c.weight, &total)) {
      throw std::overflow_error("Wcnf::total_weight: overflow");
    }
  }
  return total;
}

Wcnf parse_wcnf(std::istream& in) {
  Wcnf w;
  bool have_header = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      if (have_header) fail(lineno, "duplicate header");
      std::string format, ns, ms, tops;
      long long n = 0, m = 0, top = 0;
      if (!(ss >> format >> ns >> ms) || format != "wcnf" || !parse_int(ns, n) || !parse_int(ms, m) ||
          n < 0 || m < 0) {
        fail(lineno, "malformed header, expected 'p wcnf n m [top]'");
      }
      if (ss >> tops) {
        if (!parse_int(tops, top) || top <= 0) fail(lineno, "malformed top weight");
      }
      std::string extra;
      if (ss >> extra) fail(lineno, "trailing tokens in header");
      w.n = static_cast<std::size_t>(n);
      w.top = top;
      have_header = true;
      continue;
    }
    if (!have_header) fail(lineno, "clause before 'p wcnf' header");

    long long weight = 0;
    if (!parse_int(first, weight)) fail(lineno, "malformed clause weight '" + first + "'");
    if (weight <= 0) fail(lineno, "clause weight must be positive");
    std::vector<int> lits;
    bool terminated = false;
    std::string tok;
    while (ss >> tok) {
      long long lit = 0;
      if (!parse_int(tok, lit)) fail(lineno, "malformed literal '" + tok + "'");
      if (lit == 0) {
        terminated = true;
        break;
      }
      const long long var = lit < 0 ? -lit : lit;
      if (var > static_cast<long long>(w.n)) fail(lineno, "variable index " + tok + " out of range");
      lits.push_back(static_cast<int>(lit));
    }
    if (!terminated) fail(lineno, "clause not terminated by 0");
    if (ss >> tok) fail(lineno, "tokens after clause terminator");
    if (lits.empty()) fail(lineno, "empty clause");

    // Normalize: merge repeated literals, detect tautologies.
    std::vector<int> norm;
    bool tautology = false;
    for (int lit : lits) {
      bool seen = false;
      for (int prev : norm) {
        if (prev == lit) seen = true;
        if (prev == -lit) tautology = true;
      }
      if (!seen) norm.push_back(lit);
    }
    if (tautology) {
      ++w.dropped_tautologies;
      continue;
    }
    if (norm.size() > 2) fail(lineno, "clause has more than 2 literals");
    w.clauses.push_back({std::move(norm), static_cast<Weight>(weight)});
  }
  if (!have_header) throw ParseError("wcnf: missing 'p wcnf' header");
  return w;
}

Wcnf parse_wcnf(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_wcnf(in);
}

Weight violated_weight(const Wcnf& w, const Assignment& a) {
  if (a.size() != w.n) throw std::invalid_argument("violated_weight: assignment length mismatch");
  Weight total = 0;
  for (const auto& c : w.clauses) {
    bool sat = false;
    for (int lit : c.literals) {
      const bool value = a.bit(static_cast<std::size_t>((lit < 0 ? -lit : lit) - 1));
      if (value == (lit > 0)) sat = true;
    }
    if (!sat) total += c.weight;
  }
  return total;
}

IsingInstance wcnf_to_ising(const Wcnf& w) {
  InstanceBuilder b(w.n);
  for (const auto& c : w.clauses) {
    const Weight wt = c.weight;
    if (c.literals.size() == 1) {
      const int lit = c.literals[0];
      const int v = (lit < 0 ? -lit : lit) - 1;
      const Weight s = lit > 0 ? 1 : -1;
      b.add_constant(2 * wt);
      b.add_field(v, -2 * wt * s);
    } else {
      const int li = c.literals[0];
      const int lj = c.literals[1];
      const int vi = (li < 0 ? -li : li) - 1;
      const int vj = (lj < 0 ? -lj : lj) - 1;
      const Weight si = li > 0 ? 1 : -1;
      const Weight sj = lj > 0 ? 1 : -1;
      b.add_constant(wt);
      b.add_field(vi, -wt * si);
      b.add_field(vj, -wt * sj);
      b.add_coupling(vi, vj, wt * si * sj);
    }
  }
  return b.build();
}

Weight ising_to_maxsat_value(const IsingInstance& inst, const Assignment& a, Weight total_weight) {
  const Weight e = energy(inst, a);
  if (e % 4 != 0) {
    throw std::invalid_argument("ising_to_maxsat_value: energy " + std::to_string(e) +
                                " is not a multiple of 4; instance was not produced by wcnf_to_ising");
  }
  return total_weight - e / 4;
}

void write_wcnf(std::ostream& out, const Wcnf& w) {
  out << "p wcnf " << w.n << ' ' << w.clauses.size();
  if (w.top > 0) out << ' ' << w.top;
  out << '\n';
  for (const auto& c : w.clauses) {
    out << c.weight;
    for (int lit : c.literals) out << ' ' << lit;
    out << " 0\n";
  }
}

}  // namespace isingfix
