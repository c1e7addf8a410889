#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "isingfix/error.hpp"
#include "isingfix/generators.hpp"
#include "isingfix/instance_json.hpp"
#include "isingfix/landscape.hpp"
#include "isingfix/probe.hpp"
#include "isingfix/solver.hpp"
#include "isingfix/tset.hpp"
#include "isingfix/wcnf.hpp"

namespace isingfix::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Raised for unreadable or unwritable files.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string input = "-";
  std::string output = "-";
  std::uint64_t seed = 0;
  unsigned workers = 1;
  int max_bits = 30;
  std::string format = "json";
};

struct LoadedInstance {
  IsingInstance inst;
  std::optional<Wcnf> wcnf;
};

std::string slurp(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

LoadedInstance load_instance(const Common& c, std::istream& in) {
  const std::string text = slurp(c.input, in);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty input");
  LoadedInstance out;
  if (text[first] == '{') {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    const nlohmann::json plain = doc.contains("instance") ? nlohmann::json(doc["instance"]) : nlohmann::json(doc);
    out.inst = instance_from_json(plain);
  } else {
    out.wcnf = parse_wcnf(std::string_view(text));
    out.inst = wcnf_to_ising(*out.wcnf);
  }
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw ParseError("not an integer: '" + token + "'");
    }
    if (used != token.size()) throw ParseError("not an integer: '" + token + "'");
    out.push_back(v);
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') flush();
    else token.push_back(ch);
  }
  flush();
  return out;
}

std::vector<int> to_ints(const std::vector<std::int64_t>& v, std::size_t n) {
  std::vector<int> out;
  for (auto x : v) {
    if (x < 0 || static_cast<std::size_t>(x) >= n) throw std::out_of_range("vertex " + std::to_string(x) + " out of range");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

Json big_count(BigCount v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  return to_string(v);
}

Json run_info(const std::string& sub, const Common& c, const std::optional<IsingInstance>& inst) {
  Json r;
  r["tool"] = "isingfix";
  r["version"] = kVersion;
  r["subcommand"] = sub;
  r["seed"] = c.seed;
  r["workers"] = c.workers;
  r["instance_digest"] = inst ? Json(digest_hex(*inst)) : Json(nullptr);
  r["wall_time_s"] = 0.0;
  return r;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.output == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw IoError("cannot write '" + c.output + "'");
  f << text;
  if (!f) throw IoError("write to '" + c.output + "' failed");
}

void emit_json(const Common& c, std::ostream& out, Json& doc, Clock::time_point t0) {
  doc["run"]["wall_time_s"] = seconds_since(t0);
  emit(c, out, doc.dump(2) + "\n");
}

void add_common(CLI::App* app, Common& c, bool with_input) {
  if (with_input) app->add_option("-i,--input", c.input, "Instance file (JSON or DIMACS WCNF), '-' for stdin");
  app->add_option("-o,--output", c.output, "Output file, '-' for stdout");
  app->add_option("--seed", c.seed, "Random seed");
  app->add_option("--workers", c.workers, "Worker threads (0 = hardware concurrency)");
  app->add_option("--max-bits", c.max_bits, "Largest enumerated space 2^bits")->check(CLI::Range(1, 62));
}

Json solve_json(const SolveResult& r) {
  Json j;
  j["method"] = to_string(r.method);
  j["path"] = r.path;
  j["energy"] = r.energy;
  j["assignment"] = r.best.bit_string();
  Json counters;
  counters["leaves_explored"] = r.leaves_explored;
  counters["outer_assignments"] = r.outer_assignments;
  counters["z"] = big_count(r.z);
  counters["tie_branches"] = r.tie_branches;
  counters["split_evaluations"] = r.split_evaluations;
  counters["t_size"] = r.T.size();
  counters["t1_size"] = r.t1.size();
  counters["t2_size"] = r.t2.size();
  j["counters"] = counters;
  return j;
}

Json certificate_json(const TSetCertificate& cert) {
  Json j;
  j["success"] = cert.success;
  j["method"] = to_string(cert.method);
  j["attempts"] = cert.attempts;
  j["T"] = cert.T;
  j["size"] = cert.T.size();
  Json th;
  th["d"] = cert.thresholds.d;
  th["epsilon"] = cert.thresholds.epsilon;
  th["d_T"] = cert.thresholds.d_T;
  th["d_TTbar"] = cert.thresholds.d_TTbar;
  th["d_TTbar_clamped"] = cert.thresholds.d_TTbar_clamped;
  th["delta"] = cert.thresholds.delta;
  j["thresholds"] = th;
  Json checks;
  checks["internal_degree"] = cert.checks.internal_degree;
  checks["strong_edges"] = cert.checks.strong_edges;
  checks["strong_load"] = cert.checks.strong_load;
  if (cert.checks.t12_coupling) checks["t12_coupling"] = *cert.checks.t12_coupling;
  j["checks"] = checks;
  Json strong = Json::array();
  for (const auto& [i, js] : cert.strong_edges) strong.push_back({{"i", i}, {"j", js}});
  j["strong_edges"] = strong;
  if (!cert.failure.empty()) j["failure"] = cert.failure;
  return j;
}

TParams make_tparams(double epsilon, const std::string& strong, std::uint64_t seed) {
  TParams p;
  p.epsilon = epsilon;
  if (strong == "random") p.strong_edges = StrongEdgeRule::kRandom;
  else if (strong != "greedy") throw std::invalid_argument("--strong-edges must be greedy or random");
  p.strong_edge_seed = seed;
  return p;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  Common c;
  std::string family;
  int n = 4;
  int copies = 1;
  int block = 4;
  int f = 2;
  int l = 4;
  std::string targets = "zeros";
  double density = 0.3;
  int degree = 3;
  Weight w_lo = -5, w_hi = 5, h_lo = -5, h_hi = 5;
};

int do_generate(const GenerateArgs& a, std::ostream& out) {
  const auto t0 = Clock::now();
  Json params;
  std::optional<Wcnf> clauses;
  IsingInstance inst;
  std::optional<std::string> planted;
  if (a.family == "csse") {
    params["n"] = a.n;
    inst = gen_csse(a.n);
    clauses = gen_csse_wcnf(a.n);
  } else if (a.family == "multicopy") {
    params["copies"] = a.copies;
    params["block"] = a.block;
    inst = gen_multicopy(a.copies, a.block);
    clauses = gen_multicopy_wcnf(a.copies, a.block);
  } else if (a.family == "column") {
    params["f"] = a.f;
    params["l"] = a.l;
    params["targets"] = a.targets;
    ColumnTargets mode;
    if (a.targets == "zeros") mode = ColumnTargets::kZeros;
    else if (a.targets == "sampled") mode = ColumnTargets::kSampled;
    else throw std::invalid_argument("--targets must be zeros or sampled");
    auto ci = gen_column(a.f, a.l, mode, a.c.seed);
    if (ci.planted) planted = ci.planted->bit_string();
    params["column_targets"] = ci.targets;
    inst = std::move(ci.inst);
  } else if (a.family == "random") {
    params["n"] = a.n;
    params["density"] = a.density;
    params["w"] = {a.w_lo, a.w_hi};
    params["h"] = {a.h_lo, a.h_hi};
    inst = gen_random({a.n, a.density, a.w_lo, a.w_hi, a.h_lo, a.h_hi}, a.c.seed);
  } else if (a.family == "regular") {
    params["n"] = a.n;
    params["degree"] = a.degree;
    params["w"] = {a.w_lo, a.w_hi};
    inst = gen_random_regular(a.n, a.degree, a.c.seed, a.w_lo, a.w_hi);
  } else if (a.family == "edgeless") {
    params["n"] = a.n;
    params["h"] = {a.h_lo, a.h_hi};
    inst = gen_edgeless(a.n, a.c.seed, a.h_lo, a.h_hi);
  } else {
    throw std::invalid_argument("unknown family '" + a.family + "'");
  }

  if (a.c.format == "wcnf") {
    if (!clauses) throw std::invalid_argument("wcnf output exists only for csse and multicopy");
    std::ostringstream s;
    s << "c isingfix " << kVersion << " generate " << a.family << " seed " << a.c.seed << "\n";
    write_wcnf(s, *clauses);
    emit(a.c, out, s.str());
    return kOk;
  }
  if (a.c.format != "json") throw std::invalid_argument("--format must be json or wcnf");
  Json doc;
  doc["run"] = run_info("generate", a.c, inst);
  doc["family"] = a.family;
  doc["params"] = params;
  if (planted) doc["planted"] = *planted;
  doc["instance"] = Json::parse(instance_to_json(inst).dump());
  emit_json(a.c, out, doc, t0);
  return kOk;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  Common c;
  std::string method = "brute";
  double alpha = 0.5;
  Weight j_max = 0;
  bool verify = false;
  int min_degree = 16;
  int rounds = 64;
};

SolveOptions options_from(const Common& c, int rounds, int min_degree) {
  SolveOptions o;
  o.workers = c.workers;
  o.seed = c.seed;
  o.max_bits = c.max_bits;
  o.rounds = rounds;
  o.min_degree = min_degree;
  return o;
}

int do_solve(const SolveArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  const auto loaded = load_instance(a.c, in);
  const auto method = parse_solve_method(a.method);
  const auto opts = options_from(a.c, a.rounds, a.min_degree);
  const auto r = solve(loaded.inst, method, opts, a.alpha, a.j_max);
  Json doc;
  doc["run"] = run_info("solve", a.c, loaded.inst);
  doc["n"] = loaded.inst.size();
  const Json body = solve_json(r);
  for (const auto& [k, v] : body.items()) doc[k] = v;
  if (loaded.wcnf) {
    doc["violated_weight"] = violated_weight(*loaded.wcnf, r.best);
    doc["satisfied_weight"] = ising_to_maxsat_value(loaded.inst, r.best, loaded.wcnf->total_weight());
  }
  int code = kOk;
  if (a.verify) {
    Json v;
    if (loaded.inst.size() <= 20) {
      const auto b = solve_brute(loaded.inst, opts);
      const bool ok = b.energy == r.energy && b.best == r.best;
      v["checked"] = true;
      v["brute_energy"] = b.energy;
      v["brute_assignment"] = b.best.bit_string();
      v["match"] = ok;
      if (!ok) {
        err << "isingfix: verification failed: brute energy " << b.energy << ", " << a.method << " energy "
            << r.energy << "\n";
        code = kUsage;
      }
    } else {
      v["checked"] = false;
      v["reason"] = "n > 20";
    }
    doc["verify"] = v;
  }
  emit_json(a.c, out, doc, t0);
  return code;
}

// ---------------------------------------------------------------- landscape

struct LandscapeArgs {
  Common c;
  int k = 1;
  bool list = false;
  std::string rule = "improving";
};

ScanOptions scan_from(const Common& c) {
  ScanOptions s;
  s.max_bits = c.max_bits;
  s.workers = c.workers;
  return s;
}

int do_count_minima(const LandscapeArgs& a, std::istream& in, std::ostream& out) {
  const auto t0 = Clock::now();
  const auto loaded = load_instance(a.c, in);
  const auto rep = enumerate_k_minima(loaded.inst, a.k, scan_from(a.c));
  Json doc;
  doc["run"] = run_info("count-minima", a.c, loaded.inst);
  doc["n"] = loaded.inst.size();
  doc["k"] = a.k;
  doc["count"] = rep.minima_count;
  doc["counters"] = {{"assignments_scanned", std::uint64_t{1} << loaded.inst.size()}};
  if (a.list) {
    Json list = Json::array();
    for (const auto& m : rep.minima) list.push_back(m.bit_string());
    doc["minima"] = list;
    doc["minima_truncated"] = rep.minima_truncated;
  }
  emit_json(a.c, out, doc, t0);
  return kOk;
}

int do_basins(const LandscapeArgs& a, std::istream& in, std::ostream& out) {
  const auto t0 = Clock::now();
  const auto loaded = load_instance(a.c, in);
  BasinRule rule;
  if (a.rule == "improving") rule = BasinRule::kNoImprovingMove;
  else if (a.rule == "worsening") rule = BasinRule::kNoWorseningMove;
  else throw std::invalid_argument("--rule must be improving or worsening");
  const auto rep = k_basins(loaded.inst, a.k, rule, scan_from(a.c));
  if (a.c.format == "csv") {
    std::ostringstream s;
    s << "basin,size\n";
    for (std::size_t b = 0; b < rep.basin_sizes.size(); ++b) s << b << "," << rep.basin_sizes[b] << "\n";
    emit(a.c, out, s.str());
    return kOk;
  }
  if (a.c.format != "json") throw std::invalid_argument("--format must be json or csv");
  Json doc;
  doc["run"] = run_info("basins", a.c, loaded.inst);
  doc["n"] = loaded.inst.size();
  doc["k"] = a.k;
  doc["rule"] = a.rule;
  doc["vertex_count"] = rep.vertex_count;
  doc["basin_count"] = rep.basin_count;
  doc["basin_sizes"] = rep.basin_sizes;
  doc["strict_minima"] = rep.minima_count;
  doc["counters"] = {{"assignments_scanned", std::uint64_t{1} << loaded.inst.size()}};
  emit_json(a.c, out, doc, t0);
  return kOk;
}

// ---------------------------------------------------------------- tset / z

struct TsetArgs {
  Common c;
  std::string kind = "sparse";
  std::string mode = "randomized";
  double epsilon = 0.0;
  int size = 0;
  std::string vertices;
  int rounds = 64;
  std::string strong = "greedy";
  double alpha = 0.5;
};

int do_tset(const TsetArgs& a, std::istream& in, std::ostream& out) {
  const auto t0 = Clock::now();
  const auto loaded = load_instance(a.c, in);
  const auto& inst = loaded.inst;
  Json doc;
  doc["run"] = run_info("tset", a.c, inst);
  doc["kind"] = a.kind;
  if (a.kind == "sparse") {
    const auto params = make_tparams(a.epsilon, a.strong, a.c.seed);
    TSetCertificate cert;
    if (a.mode == "randomized") {
      cert = find_T_randomized(inst, params, a.c.seed, a.rounds);
    } else if (a.mode == "deterministic") {
      if (a.size <= 0) throw std::invalid_argument("--size is required for deterministic mode");
      cert = find_T_deterministic(inst, params, a.size);
    } else if (a.mode == "check") {
      cert = check_T(inst, to_ints(parse_int_list(a.vertices), inst.size()), params);
    } else {
      throw std::invalid_argument("--mode must be randomized, deterministic or check");
    }
    doc["certificate"] = certificate_json(cert);
  } else if (a.kind == "t1t2") {
    const auto g = degree_graph(inst);
    const auto target = t1t2_target_size(g, a.alpha);
    T1T2Method m;
    if (a.mode == "randomized") m = T1T2Method::kRandomized;
    else if (a.mode == "deterministic") m = T1T2Method::kDeterministic;
    else if (a.mode == "auto") m = T1T2Method::kAuto;
    else throw std::invalid_argument("--mode must be randomized, deterministic or auto");
    const auto r = find_T1T2(g, target, m, a.c.seed, a.rounds);
    doc["alpha"] = a.alpha;
    doc["target"] = r.target;
    doc["success"] = r.success;
    doc["method"] = to_string(r.method);
    doc["attempts"] = r.attempts;
    doc["t1"] = r.t1;
    doc["t2"] = r.t2;
    if (!r.failure.empty()) doc["failure"] = r.failure;
  } else if (a.kind == "nonsparse") {
    const auto r = good_set_nonsparse(inst, a.epsilon, a.c.seed, a.rounds);
    doc["epsilon"] = r.epsilon;
    doc["success"] = r.success;
    doc["attempts"] = r.attempts;
    doc["T0"] = r.T0;
    doc["T"] = r.T;
  } else {
    throw std::invalid_argument("--kind must be sparse, t1t2 or nonsparse");
  }
  emit_json(a.c, out, doc, t0);
  return kOk;
}

struct ZArgs {
  Common c;
  std::uint64_t tset_seed = 0;
  std::string vertices;
  int rounds = 64;
  bool count_minima = false;
};

int do_z(const ZArgs& a, std::istream& in, std::ostream& out) {
  const auto t0 = Clock::now();
  const auto loaded = load_instance(a.c, in);
  const auto& inst = loaded.inst;
  std::vector<int> T;
  Json doc;
  doc["run"] = run_info("z", a.c, inst);
  if (!a.vertices.empty()) {
    T = to_ints(parse_int_list(a.vertices), inst.size());
    doc["t_source"] = "given";
  } else {
    const auto cert = find_T_randomized(inst, TParams{}, a.tset_seed, a.rounds);
    T = cert.T;
    doc["t_source"] = "randomized";
    doc["tset_seed"] = a.tset_seed;
    doc["t_valid"] = cert.checks.all();
  }
  std::sort(T.begin(), T.end());
  SolveOptions o = options_from(a.c, a.rounds, 0);
  const BigCount z = compute_Z(inst, T, o);
  doc["T"] = T;
  doc["z"] = big_count(z);
  doc["counters"] = {{"outer_assignments", std::uint64_t{1} << (inst.size() - T.size())}};
  if (a.count_minima) {
    const auto rep = enumerate_k_minima(inst, 1, scan_from(a.c));
    doc["local_minima"] = rep.minima_count;
    doc["bound_holds"] = BigCount{rep.minima_count} <= z;
  }
  emit_json(a.c, out, doc, t0);
  return kOk;
}

// ---------------------------------------------------------------- probe

struct ProbeArgs {
  Common c;
  std::string weights_file;
  std::string weights;
  std::int64_t delta = 1;
  std::int64_t h = 0;
  std::string mode = "exact";
  std::uint64_t samples = 100000;
  std::string n_list = "16,64,256";
  std::string choices = "1";
};

std::string rational_string(const Rational& r) {
  std::ostringstream s;
  s << numerator(r) << "/" << denominator(r);
  return s.str();
}

int do_probe(const ProbeArgs& a, std::istream& in, std::ostream& out) {
  const auto t0 = Clock::now();
  Json doc;
  doc["run"] = run_info("probe", a.c, std::nullopt);
  doc["mode"] = a.mode;
  doc["delta"] = a.delta;
  const bool csv = a.c.format == "csv";
  if (!csv && a.c.format != "json") throw std::invalid_argument("--format must be json or csv");
  std::ostringstream table;

  if (a.mode == "scaling") {
    std::vector<std::size_t> ns;
    for (auto v : parse_int_list(a.n_list)) {
      if (v < 1) throw std::invalid_argument("--n-list entries must be >= 1");
      ns.push_back(static_cast<std::size_t>(v));
    }
    const auto rows = lemma_scaling_report(ns, weights_from(parse_int_list(a.choices)), a.delta, a.c.seed);
    Json arr = Json::array();
    table << "n,h,value,value_double,normalized\n";
    for (const auto& r : rows) {
      arr.push_back({{"n", r.n}, {"h", r.h}, {"value", rational_string(r.value)}, {"value_double", r.value_double},
                     {"normalized", r.normalized}});
      table << r.n << "," << r.h << "," << rational_string(r.value) << "," << r.value_double << "," << r.normalized
            << "\n";
    }
    doc["choices"] = parse_int_list(a.choices);
    doc["rows"] = arr;
  } else {
    std::string text = a.weights;
    if (!a.weights_file.empty()) text = slurp(a.weights_file, in);
    if (text.empty()) throw std::invalid_argument("probe needs --weights-file or --weights");
    const WeightedSum w(parse_int_list(text));
    doc["n"] = w.size();
    doc["support"] = w.support();
    if (a.mode == "exact") {
      const auto p = exact_interval_prob(w, a.delta, a.h);
      doc["h"] = a.h;
      doc["value"] = rational_string(p);
      doc["value_double"] = static_cast<double>(p);
      table << "h,value,value_double\n" << a.h << "," << rational_string(p) << "," << static_cast<double>(p) << "\n";
    } else if (a.mode == "max") {
      const auto m = max_interval_prob(w, a.delta);
      doc["h"] = m.h;
      doc["value"] = rational_string(m.value);
      doc["value_double"] = static_cast<double>(m.value);
      table << "h,value,value_double\n"
            << m.h << "," << rational_string(m.value) << "," << static_cast<double>(m.value) << "\n";
    } else if (a.mode == "mc") {
      const auto e = mc_interval_prob(w, a.delta, a.h, a.samples, a.c.seed, a.c.workers);
      doc["h"] = a.h;
      doc["estimate"] = e.estimate;
      doc["std_error"] = e.std_error;
      doc["counters"] = {{"samples", e.samples}, {"hits", e.hits}};
      table << "h,estimate,std_error,samples,hits\n"
            << a.h << "," << e.estimate << "," << e.std_error << "," << e.samples << "," << e.hits << "\n";
    } else {
      throw std::invalid_argument("--mode must be exact, max, mc or scaling");
    }
  }
  if (csv) {
    emit(a.c, out, table.str());
    return kOk;
  }
  emit_json(a.c, out, doc, t0);
  return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  Common c;
  std::string family = "multicopy";
  std::string sizes = "8,12,16";
  std::string methods = "brute,coloring,effective";
  int block = 4;
  double density = 0.3;
  int degree = 3;
  double alpha = 0.5;
  int min_degree = 16;
  int rounds = 64;
};

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::string token;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (!token.empty()) out.push_back(token);
      token.clear();
    } else if (ch != ' ') {
      token.push_back(ch);
    }
  }
  return out;
}

IsingInstance bench_instance(const BenchArgs& a, int n) {
  if (a.family == "multicopy") {
    if (n % a.block != 0) throw std::invalid_argument("size must be a multiple of --block");
    return gen_multicopy(n / a.block, a.block);
  }
  if (a.family == "csse") return gen_csse(n);
  if (a.family == "random") return gen_random({n, a.density, -5, 5, -5, 5}, a.c.seed);
  if (a.family == "regular") return gen_random_regular(n, a.degree, a.c.seed);
  if (a.family == "edgeless") return gen_edgeless(n, a.c.seed, -5, 5);
  throw std::invalid_argument("unknown family '" + a.family + "'");
}

int do_bench(const BenchArgs& a, std::ostream& out) {
  const auto t0 = Clock::now();
  std::vector<SolveMethod> methods;
  for (const auto& name : split_names(a.methods)) methods.push_back(parse_solve_method(name));
  const auto sizes = parse_int_list(a.sizes);
  for (auto n : sizes) {
    if (n < 1 || n > 64) throw std::invalid_argument("sizes must lie in [1, 64]");
  }
  const bool csv = a.c.format == "csv";
  if (!csv && a.c.format != "json") throw std::invalid_argument("--format must be json or csv");
  const auto opts = options_from(a.c, a.rounds, a.min_degree);
  Json rows = Json::array();
  std::ostringstream table;
  table << "family,n,method,path,energy,leaves_explored,outer_assignments,wall_time_s\n";
  for (auto n : sizes) {
    const auto inst = bench_instance(a, static_cast<int>(n));
    for (auto m : methods) {
      const auto t = Clock::now();
      const auto r = solve(inst, m, opts, a.alpha, 0);
      const double wall = seconds_since(t);
      rows.push_back({{"family", a.family},
                      {"n", n},
                      {"method", to_string(m)},
                      {"path", r.path},
                      {"energy", r.energy},
                      {"leaves_explored", r.leaves_explored},
                      {"outer_assignments", r.outer_assignments},
                      {"wall_time_s", wall}});
      table << a.family << "," << n << "," << to_string(m) << "," << r.path << "," << r.energy << ","
            << r.leaves_explored << "," << r.outer_assignments << "," << wall << "\n";
    }
  }
  if (csv) {
    emit(a.c, out, table.str());
    return kOk;
  }
  Json doc;
  doc["run"] = run_info("bench", a.c, std::nullopt);
  doc["family"] = a.family;
  doc["rows"] = rows;
  emit_json(a.c, out, doc, t0);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact MAX-2-SAT / Ising minimization and landscape analysis", "isingfix"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate an instance family");
  add_common(g, gen.c, false);
  g->add_option("family", gen.family, "csse | multicopy | column | random | regular | edgeless")->required();
  g->add_option("--n", gen.n, "Variables");
  g->add_option("--copies", gen.copies, "Copies (multicopy)");
  g->add_option("--block", gen.block, "Block size (multicopy)");
  g->add_option("--f", gen.f, "Dimension (column)");
  g->add_option("--l", gen.l, "Side length (column)");
  g->add_option("--targets", gen.targets, "zeros | sampled (column)");
  g->add_option("--density", gen.density, "Edge probability (random)");
  g->add_option("--degree", gen.degree, "Degree (regular)");
  g->add_option("--wmin", gen.w_lo, "Smallest coupling");
  g->add_option("--wmax", gen.w_hi, "Largest coupling");
  g->add_option("--hmin", gen.h_lo, "Smallest field");
  g->add_option("--hmax", gen.h_hi, "Largest field");
  g->add_option("--format", gen.c.format, "json | wcnf");

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Exact minimization");
  add_common(s, sol.c, true);
  s->add_option("--method", sol.method, "brute | coloring | effective | avg-degree | combined");
  s->add_option("--alpha", sol.alpha, "T1/T2 size parameter (combined)");
  s->add_option("--jmax", sol.j_max, "Row-sum bound (combined); 0 uses the largest row sum");
  s->add_option("--min-degree", sol.min_degree, "Effective method uses coloring below this maximum degree");
  s->add_option("--rounds", sol.rounds, "Randomized construction rounds");
  s->add_flag("--verify", sol.verify, "Compare with brute force when n <= 20");

  LandscapeArgs cm;
  auto* c = app.add_subcommand("count-minima", "Count strict k-minima");
  add_common(c, cm.c, true);
  c->add_option("--k", cm.k, "Flip radius");
  c->add_flag("--list", cm.list, "Include the minima");

  LandscapeArgs bs;
  auto* b = app.add_subcommand("basins", "k-basin decomposition");
  add_common(b, bs.c, true);
  b->add_option("--k", bs.k, "Flip radius");
  b->add_option("--rule", bs.rule, "improving | worsening");
  b->add_option("--format", bs.c.format, "json | csv");
  b->add_flag("--csv", [&bs](std::int64_t) { bs.c.format = "csv"; }, "Shorthand for --format csv");

  TsetArgs ts;
  auto* t = app.add_subcommand("tset", "Construct or check variable subsets");
  add_common(t, ts.c, true);
  t->add_option("--kind", ts.kind, "sparse | t1t2 | nonsparse");
  t->add_option("--mode", ts.mode, "randomized | deterministic | check | auto");
  t->add_option("--epsilon", ts.epsilon, "Sampling rate (0 = default)");
  t->add_option("--size", ts.size, "Subset size (deterministic)");
  t->add_option("--vertices", ts.vertices, "Comma-separated T (check)");
  t->add_option("--rounds", ts.rounds, "Randomized rounds");
  t->add_option("--strong-edges", ts.strong, "greedy | random");
  t->add_option("--alpha", ts.alpha, "T1/T2 size parameter");

  ZArgs zs;
  auto* z = app.add_subcommand("z", "Partition function Z for a T-set");
  add_common(z, zs.c, true);
  z->add_option("--tset-seed", zs.tset_seed, "Seed of the randomized T construction");
  z->add_option("--vertices", zs.vertices, "Use this T instead");
  z->add_option("--rounds", zs.rounds, "Randomized rounds");
  z->add_flag("--count-minima", zs.count_minima, "Also count local minima");

  ProbeArgs pr;
  auto* p = app.add_subcommand("probe", "Interval probabilities of weighted +-1 sums");
  add_common(p, pr.c, false);
  p->add_option("--weights-file", pr.weights_file, "Integer weights, '-' for stdin");
  p->add_option("--weights", pr.weights, "Comma-separated weights");
  p->add_option("--delta", pr.delta, "Half-width");
  p->add_option("--shift", pr.h, "Shift h (exact, mc)");
  p->add_option("--mode", pr.mode, "exact | max | mc | scaling");
  p->add_option("--samples", pr.samples, "Monte Carlo samples");
  p->add_option("--n-list", pr.n_list, "Sizes (scaling)");
  p->add_option("--weight-choices", pr.choices, "Weights drawn uniformly from this list (scaling)");
  p->add_option("--format", pr.c.format, "json | csv");

  BenchArgs be;
  auto* bn = app.add_subcommand("bench", "Counters and wall time per method and size");
  add_common(bn, be.c, false);
  bn->add_option("--family", be.family, "multicopy | csse | random | regular | edgeless");
  bn->add_option("--sizes", be.sizes, "Comma-separated sizes (may be empty)");
  bn->add_option("--methods", be.methods, "Comma-separated methods");
  bn->add_option("--block", be.block, "Block size (multicopy)");
  bn->add_option("--density", be.density, "Edge probability (random)");
  bn->add_option("--degree", be.degree, "Degree (regular)");
  bn->add_option("--alpha", be.alpha, "T1/T2 size parameter (combined)");
  bn->add_option("--min-degree", be.min_degree, "Effective method uses coloring below this maximum degree");
  bn->add_option("--rounds", be.rounds, "Randomized rounds");
  bn->add_option("--format", be.c.format, "json | csv");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "isingfix: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*g) return do_generate(gen, out);
    if (*s) return do_solve(sol, in, out, err);
    if (*c) return do_count_minima(cm, in, out);
    if (*b) return do_basins(bs, in, out);
    if (*t) return do_tset(ts, in, out);
    if (*z) return do_z(zs, in, out);
    if (*p) return do_probe(pr, in, out);
    if (*bn) return do_bench(be, out);
  } catch (const LimitError& e) {
    err << "isingfix: limit exceeded: " << e.what() << "\n";
    return kLimit;
  } catch (const ParseError& e) {
    err << "isingfix: parse error: " << e.what() << "\n";
    return kIo;
  } catch (const IoError& e) {
    err << "isingfix: " << e.what() << "\n";
    return kIo;
  } catch (const std::overflow_error& e) {
    err << "isingfix: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "isingfix: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "isingfix: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace isingfix::cli
