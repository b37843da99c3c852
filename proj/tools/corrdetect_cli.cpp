// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include "corrdetect.h"

using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240607;

struct Failure {
  cd_status status;
  std::string message;
};

void check(cd_status s) {
  if (s != CD_OK) throw Failure{s, cd_last_error()};
}

int exit_code(cd_status s) {
  switch (s) {
    case CD_OK: return 0;
    case CD_ERR_USAGE:
    case CD_ERR_IO: return 2;
    case CD_ERR_PARSE: return 3;
    case CD_ERR_CAPACITY: return 4;
    default: return 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{CD_ERR_USAGE, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

template <typename T, typename F>
std::vector<T> fetch(F f) {
  std::vector<T> out(f(nullptr, 0));
  f(out.data(), out.size());
  return out;
}

template <typename Handle, void (*Free)(Handle*)>
struct Owned {
  Handle* p = nullptr;
  Owned() = default;
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  ~Owned() { Free(p); }
  Handle** out() { return &p; }
  Handle* get() const { return p; }
};

using GraphH = Owned<cd_graph, cd_graph_free>;
using ScenarioH = Owned<cd_scenario, cd_scenario_free>;

struct Globals {
  bool as_json = false;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  std::size_t cap = 0;
  std::vector<std::string> argv;
};

class Report {
public:
  Report(const Globals& g, std::string command) : globals_(g), command_(std::move(command)) {
    digest_ = fnv1a(command_);
    for (const auto& a : g.argv) digest_ = fnv1a(a + '\0', digest_);
  }

  void input(const std::string& contents) { digest_ = fnv1a(contents, digest_); }
  json& outputs() { return outputs_; }

  void emit(double seconds) const {
    if (globals_.as_json) {
      json j;
      j["schema"] = "corrdetect.run/1";
      j["command"] = command_;
      j["argv"] = globals_.argv;
      char hex[17];
      std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(digest_));
      j["inputs_digest"] = hex;
      j["seed"] = globals_.seed;
      j["outputs"] = outputs_;
      j["timing"] = {{"seconds", seconds}};
      std::cout << j.dump(2) << "\n";
      return;
    }
    std::cout << command_ << " (seed " << globals_.seed << ")\n";
    for (const auto& [key, value] : outputs_.items()) {
      std::cout << "  " << key << ": ";
      if (value.is_string()) std::cout << value.get<std::string>();
      else std::cout << value.dump();
      std::cout << "\n";
    }
  }

private:
  const Globals& globals_;
  std::string command_;
  std::uint64_t digest_;
  json outputs_ = json::object();
};

// True when the file held a scenario, false for a bare graph.
bool load_scenario_or_graph(const std::string& path, Report& rep, ScenarioH& sc) {
  const std::string text = read_file(path);
  rep.input(text);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    check(cd_scenario_parse(text.c_str(), sc.out()));
    return true;
  }
  GraphH g;
  check(cd_graph_parse(text.c_str(), g.out()));
  check(cd_scenario_truthful(g.get(), 0, sc.out()));
  return false;
}

void load_graph(const std::string& path, Report& rep, GraphH& g) {
  const std::string text = read_file(path);
  rep.input(text);
  check(cd_graph_parse(text.c_str(), g.out()));
}

std::pair<std::size_t, std::size_t> parse_delta(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      const double d = std::stod(s);
      for (std::size_t den = 1; den <= 1000; ++den) {
        const double num = d * static_cast<double>(den);
        if (std::abs(num - std::round(num)) < 1e-9)
          return {static_cast<std::size_t>(std::llround(num)), den};
      }
    } else {
      return {std::stoul(s.substr(0, slash)), std::stoul(s.substr(slash + 1))};
    }
  } catch (const std::exception&) {
  }
  throw Failure{CD_ERR_USAGE, "delta must be p/q or a decimal, got '" + s + "'"};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{CD_ERR_USAGE, "cannot write " + path};
}

}  // namespace

int main(int argc, char** argv) {
  Globals globals;
  for (int i = 1; i < argc; ++i) globals.argv.emplace_back(argv[i]);

  CLI::App app{"Corruption detection toolkit"};
  app.require_subcommand(1);
  app.add_flag("--json", globals.as_json, "Structured JSON output");
  app.add_option("--seed", globals.seed, "Seed for randomized steps")->capture_default_str();
  app.add_option("--threads", globals.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--cap", globals.cap, "Node cap for exact solvers (0: default)");

  // detect
  auto* detect = app.add_subcommand("detect", "Run a central-agency detector on a graph or scenario");
  std::string detect_file, detect_mode = "one";
  std::size_t detect_g = 1;
  std::optional<std::size_t> detect_budget;
  bool detect_shuffle = false;
  detect->add_option("file", detect_file, "Graph or scenario file")->required();
  detect->add_option("--mode", detect_mode, "one | directed | many")
      ->check(CLI::IsMember({"one", "directed", "many"}));
  detect->add_option("--g", detect_g, "Nodes to declare (mode many)");
  detect->add_option("--budget", detect_budget, "Public budget to certify against (scenario files default to their own)");
  detect->add_flag("--shuffle", detect_shuffle, "Remove offending pairs in seeded random order");

  // attack
  auto* attack = app.add_subcommand("attack", "Build a corrupt-party strategy");
  std::string attack_file, attack_strategy = "separator", attack_out, attack_delta = "1/2";
  std::size_t attack_g = 1, attack_check_cap = 12;
  attack->add_option("file", attack_file, "Graph file")->required();
  attack->add_option("--strategy", attack_strategy, "separator | directed | gremainder | approx | clique-append")
      ->check(CLI::IsMember({"separator", "directed", "gremainder", "approx", "clique-append"}));
  attack->add_option("--g", attack_g, "Target g (gremainder)");
  attack->add_option("--delta", attack_delta, "delta for clique-append, p/q");
  attack->add_option("--check-cap", attack_check_cap, "Run the exhaustive checker up to this order (0: off)");
  attack->add_option("--out", attack_out, "Write the realized scenario here");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact critical number m(G) or m(G,g)");
  std::string oracle_file;
  std::size_t oracle_g = 1;
  oracle->add_option("file", oracle_file, "Graph file")->required();
  oracle->add_option("--g", oracle_g, "Number of truthful nodes to protect");

  // separator
  auto* separator = app.add_subcommand("separator", "k-vertex separators and the min-sum objective");
  std::string sep_file, sep_method = "exact";
  std::size_t sep_k = 0, sep_g = 1;
  unsigned sep_effort = 4;
  bool sep_compare = false;
  separator->add_option("file", sep_file, "Graph file")->required();
  separator->add_option("--k", sep_k, "Component bound (omit to sweep k)");
  separator->add_option("--g", sep_g, "g-remainder target");
  separator->add_option("--method", sep_method, "exact | heuristic")
      ->check(CLI::IsMember({"exact", "heuristic"}));
  separator->add_option("--effort", sep_effort, "Heuristic trials per split");
  separator->add_flag("--compare", sep_compare, "Run exact and heuristic and report the gap");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Build a reduction gadget");
  std::string red_file, red_gadget, red_out, red_delta = "1/2";
  std::size_t red_m = 0, red_n = 0, red_c = 1;
  reduce->add_option("file", red_file, "Source graph file")->required();
  reduce->add_option("--gadget", red_gadget, "sse-aux | clique-append | np-gadget")
      ->required()
      ->check(CLI::IsMember({"sse-aux", "clique-append", "np-gadget"}));
  reduce->add_option("--out", red_out, "Output graph file (metadata goes to <out>.meta.json)")->required();
  reduce->add_option("--delta", red_delta, "delta for clique-append, p/q");
  reduce->add_option("--M", red_m, "np-gadget clique size M");
  reduce->add_option("--n", red_n, "np-gadget scale n");
  reduce->add_option("--c", red_c, "np-gadget cliques per vertex");

  // bench
  auto* bench = app.add_subcommand("bench", "Time single-node detection against |E|");
  std::vector<std::size_t> bench_sizes{10000, 31623, 100000, 316228, 1000000};
  unsigned bench_reps = 9;
  double bench_degree = 8.0, bench_bad = 0.01;
  bench->add_option("--sizes", bench_sizes, "Edge counts")->delimiter(',');
  bench->add_option("--reps", bench_reps, "Repetitions per size (minimum is kept)");
  bench->add_option("--degree", bench_degree, "Mean degree");
  bench->add_option("--bad-fraction", bench_bad, "Fraction of corrupt nodes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::unique_ptr<Report> rep;
    if (*detect) {
      rep = std::make_unique<Report>(globals, "detect");
      ScenarioH sc;
      if (load_scenario_or_graph(detect_file, *rep, sc) && !detect_budget)
        detect_budget = cd_scenario_budget(sc.get());
      cd_detect_options o = cd_detect_defaults();
      o.mode = detect_mode == "one" ? CD_DETECT_ONE : detect_mode == "directed" ? CD_DETECT_DIRECTED : CD_DETECT_MANY;
      o.want = detect_g;
      if (detect_budget) {
        o.has_budget = 1;
        o.budget = *detect_budget;
      }
      o.shuffle = detect_shuffle ? 1 : 0;
      o.seed = globals.seed;
      Owned<cd_detection, cd_detection_free> d;
      check(cd_detect(sc.get(), &o, d.out()));
      const cd_detection_info info = cd_detection_summary(d.get());
      auto& out = rep->outputs();
      out["mode"] = detect_mode;
      out["declared"] = fetch<uint32_t>([&](uint32_t* b, size_t c) { return cd_detection_declared(d.get(), b, c); });
      out["rounds_removed"] = info.rounds_removed;
      out["declared_score"] = info.declared_score;
      out["complete"] = info.complete != 0;
      if (detect_budget) {
        out["budget"] = *detect_budget;
        out["certified"] = info.certified != 0;
      }
    } else if (*attack) {
      rep = std::make_unique<Report>(globals, "attack");
      GraphH g;
      load_graph(attack_file, *rep, g);
      cd_attack_options o = cd_attack_defaults();
      o.kind = attack_strategy == "separator"    ? CD_ATTACK_SEPARATOR
               : attack_strategy == "directed"   ? CD_ATTACK_DIRECTED
               : attack_strategy == "gremainder" ? CD_ATTACK_GREMAINDER
               : attack_strategy == "approx"     ? CD_ATTACK_APPROX
                                                 : CD_ATTACK_CLIQUE_APPEND;
      o.g = attack_g;
      std::tie(o.delta_num, o.delta_den) = parse_delta(attack_delta);
      o.cap = globals.cap;
      o.check_cap = attack_check_cap;
      o.seed = globals.seed;
      o.threads = globals.threads;
      Owned<cd_attack, cd_attack_free> a;
      check(cd_attack_run(g.get(), &o, a.out()));
      const cd_attack_info info = cd_attack_summary(a.get());
      auto& out = rep->outputs();
      out["strategy"] = info.construction;
      out["bad"] = fetch<uint32_t>([&](uint32_t* b, size_t c) { return cd_attack_bad(a.get(), b, c); });
      out["budget_used"] = info.budget_used;
      out["target_g"] = info.target_g;
      out["degenerate"] = info.degenerate != 0;
      out["certificate_valid"] = info.certificate_valid != 0;
      out["checker"] = info.checked < 0 ? json("skipped") : json(info.checked == 1);
      out["attacked_nodes"] = cd_graph_order(cd_attack_graph(a.get()));
      if (!attack_out.empty()) {
        ScenarioH sc;
        check(cd_attack_scenario(a.get(), sc.out()));
        check(cd_scenario_save(sc.get(), attack_out.c_str()));
        out["scenario"] = attack_out;
      }
    } else if (*oracle) {
      rep = std::make_unique<Report>(globals, "oracle");
      GraphH g;
      load_graph(oracle_file, *rep, g);
      Owned<cd_oracle, cd_oracle_free> o;
      check(cd_oracle_solve(g.get(), oracle_g, globals.cap, globals.threads, o.out()));
      auto& out = rep->outputs();
      out["g"] = oracle_g;
      out["m"] = cd_oracle_value(o.get());
      json fam = json::array();
      for (size_t i = 0; i < cd_oracle_family_size(o.get()); ++i)
        fam.push_back(fetch<uint32_t>([&](uint32_t* b, size_t c) { return cd_oracle_member(o.get(), i, b, c); }));
      out["family"] = fam;
      out["anchor"] = cd_oracle_anchor(o.get());
    } else if (*separator) {
      rep = std::make_unique<Report>(globals, "separator");
      GraphH g;
      load_graph(sep_file, *rep, g);
      auto solve = [&](cd_sep_method method) {
        cd_separator_options o = cd_separator_defaults();
        o.method = method;
        o.k = sep_k;
        o.g = sep_g;
        o.cap = globals.cap;
        o.seed = globals.seed;
        o.effort = sep_effort;
        o.threads = globals.threads;
        cd_separator* s = nullptr;
        check(cd_separator_solve(g.get(), &o, &s));
        json j;
        j["separator"] = fetch<uint32_t>([&](uint32_t* b, size_t c) { return cd_separator_ids(s, b, c); });
        j["k"] = cd_separator_k(s);
        j["g"] = cd_separator_g(s);
        j["objective"] = cd_separator_objective(s);
        j["profile"] = fetch<size_t>([&](size_t* b, size_t c) { return cd_separator_profile(s, b, c); });
        cd_separator_free(s);
        return j;
      };
      auto& out = rep->outputs();
      if (sep_compare) {
        json exact = solve(CD_SEP_EXACT);
        json heur = solve(CD_SEP_HEURISTIC);
        out["exact"] = exact;
        out["heuristic"] = heur;
        out["objective_gap"] = heur["objective"].get<long long>() - exact["objective"].get<long long>();
      } else {
        out = solve(sep_method == "exact" ? CD_SEP_EXACT : CD_SEP_HEURISTIC);
        out["method"] = sep_method;
      }
    } else if (*reduce) {
      rep = std::make_unique<Report>(globals, "reduce");
      GraphH g;
      load_graph(red_file, *rep, g);
      GraphH result;
      json meta;
      meta["gadget"] = red_gadget;
      meta["source"] = red_file;
      meta["source_nodes"] = cd_graph_order(g.get());
      meta["source_edges"] = cd_graph_edge_count(g.get());
      if (red_gadget == "sse-aux") {
        size_t r = 0;
        check(cd_reduce_sse_aux(g.get(), &r, result.out()));
        meta["r"] = r;
        meta["copy_id"] = "v*r + j";
        meta["edge_id"] = "r*n + index of the edge in sorted order";
      } else if (red_gadget == "clique-append") {
        auto [p, q] = parse_delta(red_delta);
        size_t h = 0;
        check(cd_reduce_clique_append(g.get(), p, q, &h, result.out()));
        meta["delta"] = std::to_string(p) + "/" + std::to_string(q);
        meta["h"] = h;
        meta["target_g"] = h + 1;
      } else {
        cd_gadget_info info{};
        check(cd_reduce_np_gadget(g.get(), red_m, red_n, red_c, &info, result.out()));
        meta["M"] = red_m;
        meta["n"] = red_n;
        meta["c"] = red_c;
        meta["base_nodes"] = info.base_nodes;
      }
      meta["nodes"] = cd_graph_order(result.get());
      meta["edges"] = cd_graph_edge_count(result.get());
      check(cd_graph_save(result.get(), red_out.c_str()));
      write_text(red_out + ".meta.json", meta.dump(2) + "\n");
      rep->outputs() = meta;
      rep->outputs()["output"] = red_out;
    } else if (*bench) {
      rep = std::make_unique<Report>(globals, "bench");
      json rows = json::array();
      std::vector<double> xs, ys;
      std::vector<std::unique_ptr<cd_bench, decltype(&cd_bench_free)>> cases;
      for (size_t m : bench_sizes) {
        cd_bench* b = nullptr;
        check(cd_bench_prepare(m, bench_degree, bench_bad, globals.seed, &b));
        cases.emplace_back(b, &cd_bench_free);
      }
      // Round-robin over sizes so machine noise hits every size alike; one
      // untimed warm-up pass first.
      std::vector<double> best(cases.size(), -1);
      for (unsigned rep = 0; rep <= std::max(1u, bench_reps); ++rep)
        for (size_t i = 0; i < cases.size(); ++i) {
          double secs = 0;
          check(cd_bench_run(cases[i].get(), &secs));
          if (rep > 0 && (best[i] < 0 || secs < best[i])) best[i] = secs;
        }
      for (size_t i = 0; i < cases.size(); ++i) {
        const size_t m = bench_sizes[i];
        rows.push_back({{"edges", m}, {"seconds", best[i]}});
        if (m > 0 && best[i] > 0) {
          xs.push_back(std::log(static_cast<double>(m)));
          ys.push_back(std::log(best[i]));
        }
      }
      auto& out = rep->outputs();
      out["runs"] = rows;
      if (xs.size() >= 2) {
        double mx = 0, my = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
          mx += xs[i];
          my += ys[i];
        }
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(xs.size());
        double sxy = 0, sxx = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
          sxy += (xs[i] - mx) * (ys[i] - my);
          sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        out["exponent"] = sxx > 0 ? sxy / sxx : 0.0;
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep->emit(secs);
    return 0;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
