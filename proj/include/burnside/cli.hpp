#pragma once

// Command-line front end. Every subcommand writes JSON lines by default;
// `--format pretty` prints the same records as indented key/value text and
// `--format csv` is available where the record is tabular. Exit status is
// 0 when every verdict holds, 1 on a mathematical failure, 2 on bad input.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "burnside/coprime.hpp"
#include "burnside/method.hpp"
#include "burnside/nullsets.hpp"
#include "burnside/parallel.hpp"
#include "burnside/permgroup.hpp"
#include "burnside/ramanujan.hpp"
#include "burnside/serialize.hpp"

namespace burnside::cli {

enum Exit : int { ok = 0, verdict_failed = 1, usage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParsedGroup {
  PermGroup group;
  std::optional<Permutation> cycle;  // a regular cycle, when the family has a canonical one
};

/// `cyclic:N`, `dihedral:N`, `sym:N`, `affine:N:A`, `wreath:N`, or cycle
/// notation generators separated by ';' (degree = largest point + 1).
inline ParsedGroup parse_group(std::string_view spec) {
  auto number = [&](std::string_view s) {
    std::size_t v = 0;
    if (s.empty()) throw UsageError("malformed group spec: " + std::string(spec));
    for (char c : s) {
      if (c < '0' || c > '9') throw UsageError("malformed group spec: " + std::string(spec));
      v = v * 10 + static_cast<std::size_t>(c - '0');
      if (v > 100000) throw UsageError("group degree out of range: " + std::string(spec));
    }
    return v;
  };
  const auto colon = spec.find(':');
  if (colon != std::string_view::npos && spec.find('(') == std::string_view::npos) {
    const auto family = spec.substr(0, colon);
    auto rest = spec.substr(colon + 1);
    std::optional<std::size_t> mult;
    if (const auto c2 = rest.find(':'); c2 != std::string_view::npos) {
      mult = number(rest.substr(c2 + 1));
      rest = rest.substr(0, c2);
    }
    const std::size_t d = number(rest);
    if (d < 2) throw UsageError("group degree must be at least 2");
    if (mult && family != "affine") throw UsageError("only affine takes a multiplier: " + std::string(spec));
    if (family == "cyclic") return {cyclic_group(d), standard_cycle(d)};
    if (family == "dihedral") return {dihedral_group(d), standard_cycle(d)};
    if (family == "sym") return {symmetric_group(d), standard_cycle(d)};
    if (family == "wreath") {
      if (d > 100) throw UsageError("wreath degree out of range");
      return {wreath_product_action(d), std::nullopt};
    }
    if (family == "affine") {
      if (!mult) throw UsageError("affine needs a multiplier, e.g. affine:9:2");
      if (std::gcd(*mult, d) != 1) throw UsageError("affine multiplier must be a unit mod the degree");
      return {affine_group(d, *mult), standard_cycle(d)};
    }
    throw UsageError("unknown group family: " + std::string(family));
  }
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  try {
    std::size_t degree = 0;
    for (const auto& s : parts) degree = std::max(degree, parse_cycles(s).degree());
    std::vector<Permutation> gens;
    for (const auto& s : parts) gens.push_back(parse_cycles(s, degree));
    return {PermGroup(std::move(gens)), std::nullopt};
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("malformed group spec: ") + e.what());
  }
}

namespace detail {

inline void pretty(std::ostream& os, const json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      os << pad << key << ":\n";
      pretty(os, value, indent + 2);
    } else {
      os << pad << key << ": " << value.dump() << '\n';
    }
  }
}

inline std::string aligned_matrix(const RamanujanMatrix& R) {
  std::size_t w = 1;
  auto width = [](Int v) { return std::to_string(v).size(); };
  for (Int r : R.divisors) w = std::max(w, width(r));
  for (std::size_t i = 0; i < R.size(); ++i)
    for (std::size_t j = 0; j < R.size(); ++j) w = std::max(w, width(R.entries(i, j)));
  std::ostringstream os;
  os << std::setw(static_cast<int>(w)) << "" << " |";
  for (Int c : R.divisors) os << ' ' << std::setw(static_cast<int>(w)) << c;
  os << '\n';
  for (std::size_t i = 0; i < R.size(); ++i) {
    os << std::setw(static_cast<int>(w)) << R.divisors[i] << " |";
    for (std::size_t j = 0; j < R.size(); ++j) os << ' ' << std::setw(static_cast<int>(w)) << R.entries(i, j);
    os << '\n';
  }
  return os.str();
}

struct Writer {
  std::ostream& os;
  std::string format;

  void record(const json& j) {
    if (format == "pretty") {
      pretty(os, j);
      os << '\n';
    } else {
      os << j.dump() << '\n';
    }
  }
  void require_not_csv(std::string_view sub) const {
    if (format == "csv") throw UsageError("--format csv is not available for " + std::string(sub));
  }
};

inline std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("malformed integer list: " + text);
    }
  }
  return out;
}

}  // namespace detail

struct RunConfig {
  std::string format = "json";
  std::string out_path;
  unsigned jobs = 1;

  Int ramanujan_d = 0;

  Int min_d = 2;
  Int max_d = 0;
  bool no_timing = false;
  bool full = false;

  std::string group;
  std::string cycle;
  unsigned base = 0;

  Int p = 0;
  int n = 0;
  bool enumerate = false;
  bool verify = false;
  std::string classify;

  std::string example;
  std::size_t example_d = 4;
};

inline int run_ramanujan(const RunConfig& c, detail::Writer& w) {
  const auto R = matrix_formula(c.ramanujan_d);
  const auto rep = structure_identities(c.ramanujan_d);
  if (w.format == "csv") {
    w.os << to_csv(R);
  } else if (w.format == "pretty") {
    w.os << detail::aligned_matrix(R) << '\n';
    detail::pretty(w.os, json(rep));
  } else {
    w.record({{"matrix", R}, {"identities", rep}});
  }
  return rep.ok() ? ok : verdict_failed;
}

inline int run_conjecture(const RunConfig& c, detail::Writer& w) {
  if (c.min_d > c.max_d) throw UsageError("--min-d exceeds --max-d");
  for (Int d = std::max<Int>(2, c.min_d); d <= c.max_d; d += 2)
    if (divisors(d).size() > 42) throw UsageError("degree " + std::to_string(d) + " has too many divisors to sweep");
  if (c.jobs == 1) {
    // degree by degree so long sweeps can be watched and resumed
    if (w.format == "csv") w.os << "d,divisors,subsets_scanned,coprime_sets,verdict\n";
    bool all = true;
    for (Int d = c.min_d + (c.min_d % 2); d <= c.max_d; d += 2) {
      auto r = verify_degree(d, {1, !c.full});
      all = all && r.holds;
      if (w.format == "csv") {
        w.os << d << ',' << r.divisors.size() << ',' << r.subsets_scanned << ',' << r.coprime_masks.size() << ','
             << (r.holds ? "HOLDS" : "FAILS") << '\n';
      } else {
        w.record(conjecture_json(r, !c.no_timing));
      }
      w.os.flush();
    }
    return all ? ok : verdict_failed;
  }
  const auto reps = verify_range(c.max_d, c.jobs, !c.full);
  bool all = true;
  if (w.format == "csv") w.os << "d,divisors,subsets_scanned,coprime_sets,verdict\n";
  for (const auto& r : reps) {
    if (r.d < c.min_d) continue;
    all = all && r.holds;
    if (w.format == "csv") {
      w.os << r.d << ',' << r.divisors.size() << ',' << r.subsets_scanned << ',' << r.coprime_masks.size() << ','
           << (r.holds ? "HOLDS" : "FAILS") << '\n';
    } else {
      w.record(conjecture_json(r, !c.no_timing));
    }
  }
  return all ? ok : verdict_failed;
}

inline int run_suborbits(const RunConfig& c, detail::Writer& w) {
  w.require_not_csv("suborbits");
  const auto pg = parse_group(c.group);
  const auto& G = pg.group;
  if (c.base >= G.degree()) throw UsageError("--base outside the point set");
  if (!is_transitive(G)) throw UsageError("group is not transitive; orbits: " + json(orbits(G)).dump());
  const auto subs = suborbits(G, static_cast<Point>(c.base));
  std::vector<std::size_t> sizes;
  for (const auto& s : subs) sizes.push_back(s.size());
  const auto blocks = find_block_system(G);
  w.record({{"degree", G.degree()},
            {"base", c.base},
            {"suborbits", subs},
            {"sizes", sizes},
            {"two_transitive", subs.size() == 2},
            {"primitive", !blocks.has_value()},
            {"blocks", blocks ? json(*blocks) : json(nullptr)}});
  return ok;
}

inline int run_diagnose(const RunConfig& c, detail::Writer& w) {
  w.require_not_csv("diagnose");
  const auto pg = parse_group(c.group);
  std::optional<Permutation> g;
  if (!c.cycle.empty()) {
    try {
      g = parse_cycles(c.cycle, pg.group.degree());
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("malformed --cycle: ") + e.what());
    }
  } else if (pg.cycle) {
    g = pg.cycle;
  } else {
    for (const auto& h : pg.group.generators()) {
      if (regular_check(h.degree(), std::span<const Permutation>(&h, 1))) {
        g = h;
        break;
      }
    }
    if (!g) throw UsageError("no full cycle among the generators; pass --cycle");
  }
  DiagnosisReport rep;
  try {
    rep = diagnose(pg.group, *g);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  w.record(json(rep));
  return rep.verdict == Verdict::counterexample ? verdict_failed : ok;
}

inline int run_nullsets(const RunConfig& c, detail::Writer& w) {
  w.require_not_csv("nullsets");
  try {
    burnside::detail::check_pn(c.p, c.n);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!c.classify.empty()) {
    const auto members = detail::parse_int_list(c.classify);
    IndexSet O;
    try {
      O = IndexSet::of(c.p, c.n, members);
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
    const auto cls = classify(O);
    const bool sol = is_solution(O);
    w.record({{"set", O}, {"solution", sol}, {"class", cls}});
    return sol == (cls.kind != SolutionKind::not_solution) ? ok : verdict_failed;
  }
  if (ipow(c.p, c.n) > 27) throw UsageError("exhaustive search needs p^n <= 27");
  if (c.enumerate) {
    bool all = true;
    for (const auto& O : enumerate_solutions(c.p, c.n, c.jobs)) {
      const auto cls = classify(O);
      all = all && cls.kind != SolutionKind::not_solution;
      w.record({{"set", O}, {"size", O.size()}, {"class", cls}});
    }
    return all ? ok : verdict_failed;
  }
  const auto rep = verify_prop51(c.p, c.n, c.jobs);
  w.record(json(rep));
  return rep.holds ? ok : verdict_failed;
}

inline int run_examples(const RunConfig& c, detail::Writer& w) {
  w.require_not_csv("examples");
  const std::size_t d = c.example_d;
  if (c.example == "wreath") {
    if (d < 2 || d > 30) throw UsageError("examples wreath needs 2 <= d <= 30");
    const auto W = wreath_product(d);
    const auto subs = suborbits(W.group);
    std::vector<std::size_t> sizes;
    for (const auto& s : subs) sizes.push_back(s.size());
    const bool primitive = is_primitive(W.group);
    const bool two = subs.size() == 2;
    const bool regular = regular_check(d * d, W.regular);
    w.record({{"example", "wreath"},
              {"d", d},
              {"degree", d * d},
              {"encoding", "(i,i') -> i*d+i'"},
              {"primitive", primitive},
              {"two_transitive", two},
              {"suborbit_sizes", sizes},
              {"regular_generators", W.regular},
              {"regular", regular}});
    return (d < 3 || (primitive && !two)) && regular ? ok : verdict_failed;
  }
  if (c.example == "manning") {
    if (d < 2 || d > 12) throw UsageError("examples manning needs 2 <= d <= 12");
    const auto rep = manning_lemma2_check(d);
    w.record({{"example", "manning"},
              {"d", d},
              {"standard", basis_partition_pair(d, PairGenerators::standard)},
              {"manning", basis_partition_pair(d, PairGenerators::manning)},
              {"check", rep}});
    return rep.matches_expected && rep.violation.has_value() == (d > 2) ? ok : verdict_failed;
  }
  const auto gens = c4_c2_c2_generators();
  const auto W = wreath_product(4);
  const bool regular = regular_check(16, gens);
  w.record({{"example", "ex42"},
            {"degree", 16},
            {"generators", gens},
            {"regular", regular},
            {"ambient_primitive", is_primitive(W.group)}});
  return regular ? ok : verdict_failed;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  c.jobs = default_jobs();
  CLI::App app{"Exact computations around regular abelian subgroups of permutation groups", "burnside"};
  app.require_subcommand(1);
  app.add_option("--format", c.format, "json (default), pretty or csv")
      ->check(CLI::IsMember({"json", "pretty", "csv"}));
  app.add_option("--out", c.out_path, "write to this file instead of stdout");
  app.add_option("--jobs", c.jobs, "worker threads (default $BURNSIDE_JOBS or 1)")->check(CLI::Range(1u, 1024u));

  auto* ram = app.add_subcommand("ramanujan", "Ramanujan matrix R(d) and its identities");
  ram->add_option("d", c.ramanujan_d)->required()->check(CLI::Range(Int{1}, Int{100000}));

  auto* conj = app.add_subcommand("conjecture", "coprime-partition sweep over even degrees");
  conj->add_option("--max-d", c.max_d)->required()->check(CLI::Range(Int{2}, Int{100000}));
  conj->add_option("--min-d", c.min_d, "first degree to report (resume point)")->check(CLI::Range(Int{2}, Int{100000}));
  conj->add_flag("--no-timing", c.no_timing, "omit per-degree millis");
  conj->add_flag("--full", c.full, "scan subsets without 1 as well");

  auto* sub = app.add_subcommand("suborbits", "suborbits of a transitive group");
  sub->add_option("--group", c.group)->required();
  sub->add_option("--base", c.base, "base point (default 0)");

  auto* diag = app.add_subcommand("diagnose", "imprimitive / 2-transitive / counterexample");
  diag->add_option("--group", c.group)->required();
  diag->add_option("--cycle", c.cycle, "regular cycle in cycle notation");

  auto* ns = app.add_subcommand("nullsets", "solution sets of the cyclotomic equation");
  ns->add_option("p", c.p)->required();
  ns->add_option("n", c.n)->required();
  auto* en = ns->add_flag("--enumerate", c.enumerate, "print every solution with its class");
  auto* ve = ns->add_flag("--verify", c.verify, "check the classification (default)");
  auto* cl = ns->add_option("--classify", c.classify, "classify one set, e.g. 1,3,5,7");
  en->excludes(ve)->excludes(cl);
  ve->excludes(cl);

  auto* ex = app.add_subcommand("examples", "worked examples: wreath, manning, ex42");
  ex->add_option("which", c.example)->required()->check(CLI::IsMember({"wreath", "manning", "ex42"}));
  ex->add_option("--d", c.example_d);

  for (auto* s : {ram, conj, sub, diag, ns, ex}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage;
  }

  std::ofstream file;
  if (!c.out_path.empty()) {
    file.open(c.out_path);
    if (!file) {
      err << "cannot open " << c.out_path << '\n';
      return usage;
    }
  }
  detail::Writer w{c.out_path.empty() ? out : file, c.format};
  try {
    if (*ram) return run_ramanujan(c, w);
    if (*conj) return run_conjecture(c, w);
    if (*sub) return run_suborbits(c, w);
    if (*diag) return run_diagnose(c, w);
    if (*ns) return run_nullsets(c, w);
    return run_examples(c, w);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"burnside"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace burnside::cli
