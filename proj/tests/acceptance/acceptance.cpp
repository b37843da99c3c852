// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "brute.hpp"
#include "corrdetect/adversary.hpp"
#include "corrdetect/detection.hpp"
#include "corrdetect/generators.hpp"
#include "corrdetect/graph_io.hpp"
#include "corrdetect/oracle.hpp"
#include "corrdetect/reductions.hpp"

using namespace corrdetect;
namespace brute = corrdetect::testing;

namespace {

struct Verdict_ {
  bool pass = true;
  std::ostringstream detail;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    pass = false;
    if (first_failure.empty()) first_failure = what;
  }
};

using Criterion = std::function<void(Verdict_&)>;

std::size_t log2_ceil(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n))));
}

// Every bad set of size <= b, with all claim vectors when there are at most
// 2^20 of them, otherwise 200 seeded samples.
void for_each_attack(const Graph& g, std::size_t b, std::uint64_t seed,
                     const std::function<void(const NodeSet&, const std::vector<Claim>&)>& f) {
  brute::for_each_subset(g.universe(), b, [&](const NodeSet& bad) {
    brute::for_each_claims(g, bad, 20, 200, seed, [&](const std::vector<Claim>& c) { f(bad, c); });
  });
}

std::vector<Graph> all_graphs(std::size_t lo, std::size_t hi) {
  std::vector<Graph> out;
  for (std::size_t n = lo; n <= hi; ++n)
    for (const Graph& g : brute::graphs_up_to_iso(n)) out.push_back(g);
  return out;
}

std::string text(const Graph& g) {
  std::string s = serialize_graph(g);
  for (char& c : s)
    if (c == '\n') c = ';';
  return s;
}

void exact_values(Verdict_& v) {
  const auto t0 = std::chrono::steady_clock::now();
  v.check(exact_m(star(5)) == 2, "m(S5) != 2");
  for (std::size_t n : {4u, 6u, 8u}) {
    v.check(exact_m(complete(n)) == n / 2, "m(K" + std::to_string(n) + ")");
    v.check(min_sum(complete(n)).objective == n, "min_sum(K" + std::to_string(n) + ")");
  }
  for (std::size_t a = 1; a <= 3; ++a)
    for (std::size_t b = a; b <= 4; ++b) {
      const Graph g = complete_bipartite(a, b);
      const std::string name = "K" + std::to_string(a) + "," + std::to_string(b);
      v.check(min_sum(g).objective == a + 1, "min_sum(" + name + ")");
      // The smaller side is strictly smaller here; equal sides are split evenly.
      if (a < b) v.check(exact_m(g) == a + 1, "m(" + name + ")");
      else v.check(exact_m(g) == a, "m(" + name + ") balanced");
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  v.check(secs < 10.0, "runtime above 10 s");
  v.detail << "runtime " << secs << " s";
}

void sandwich(Verdict_& v) {
  std::size_t graphs = 0;
  for (std::size_t n = 1; n <= 7; ++n)
    for (const Graph& g : brute::connected_graphs(n)) {
      ++graphs;
      const std::size_t m = exact_m(g);
      const std::size_t s = min_sum(g).objective;
      v.check(s <= 2 * m && m <= s, "sandwich " + text(g));
    }
  v.detail << graphs << " connected graphs, n <= 7";
}

void single_node_undirected(Verdict_& v) {
  std::size_t runs = 0;
  for (const Graph& g : all_graphs(1, 7)) {
    const std::size_t b = exact_m(g) / 2;
    for_each_attack(g, b, g.universe(), [&](const NodeSet& bad, const std::vector<Claim>& c) {
      ++runs;
      const Scenario s = make_scenario(g, bad, c, b);
      const auto out = detect_one_undirected(g, s.reports);
      v.check(!out.declared_good.empty() && !out.declared_good.intersects(bad),
              "declared bad or nothing on " + text(g) + " bad=" + bad.to_string());
    });
  }
  v.detail << runs << " attacked scenarios on all graphs n <= 7";
}

void single_node_directed(Verdict_& v) {
  std::size_t runs = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = 1 + seed % 6;
    const double p = 0.15 + 0.1 * static_cast<double>(seed % 6);
    const Graph d = brute::random_digraph_seeded(n, p, seed);
    const std::size_t b = exact_m_directed(d) / 2;
    for_each_attack(d, b, seed, [&](const NodeSet& bad, const std::vector<Claim>& c) {
      ++runs;
      const Scenario s = make_scenario(d, bad, c, b);
      const auto out = detect_one_directed(d, s.reports);
      v.check(!out.declared_good.empty() && !out.declared_good.intersects(bad),
              "directed " + text(d) + " bad=" + bad.to_string());
    });
  }
  v.detail << runs << " attacked scenarios on 300 random digraphs n <= 6";
}

void many_nodes(Verdict_& v) {
  std::size_t runs = 0;
  for (const Graph& g : all_graphs(1, 6)) {
    const std::size_t n = g.order();
    for (std::size_t want = 1; want <= std::min<std::size_t>(3, n); ++want) {
      std::size_t b = exact_m_g(g, want) / 2;
      while (b > 0 && want + 2 * b >= n) --b;
      if (want + 2 * b >= n) continue;
      for_each_attack(g, b, n * 10 + want, [&](const NodeSet& bad, const std::vector<Claim>& c) {
        ++runs;
        const Scenario s = make_scenario(g, bad, c, b);
        const auto out = detect_many(g, s.reports, want);
        v.check(out.declared_good.size() >= want && !out.declared_good.intersects(bad),
                "g=" + std::to_string(want) + " on " + text(g) + " bad=" + bad.to_string());
      });
    }
  }
  v.detail << runs << " attacked scenarios, n <= 6, g <= 3";
}

void attack_certification(Verdict_& v) {
  CheckerOptions opts;
  opts.cap = 20;
  std::map<std::string, std::size_t> counts;
  auto audit = [&](const Graph& g, const AttackPlan& plan, const std::string& kind) {
    ++counts[kind];
    const Scenario s = realize(g, plan);
    v.check(impossible_to_find(g, s.reports, plan.budget_used, plan.target_g, opts),
            kind + " on " + text(g));
  };

  std::vector<Graph> undirected = all_graphs(1, 7);
  for (std::uint64_t seed = 0; seed < 120; ++seed)
    undirected.push_back(erdos_renyi(8 + seed % 2, 0.2 + 0.05 * static_cast<double>(seed % 8), seed));
  for (const Graph& g : undirected) {
    audit(g, separator_attack(g, min_sum(g)), "separator");
    for (std::size_t want = 2; want <= std::min<std::size_t>(3, g.order()); ++want)
      audit(g, g_remainder_attack(g, g_remainder_min_sum(g, want), want), "g-remainder");
  }
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Graph d = brute::random_digraph_seeded(2 + seed % 8, 0.15 + 0.05 * static_cast<double>(seed % 7), seed);
    audit(d, directed_attack(d, reach_min_sum(d)), "directed");
  }
  for (std::size_t n = 1; n <= 4; ++n)
    for (const Graph& g : brute::graphs_up_to_iso(n)) {
      const AppendedAttack half = clique_append_attack(g, 1, 2);
      audit(half.graph, half.plan, "clique-append");
      if (n <= 3) {
        const AppendedAttack two_thirds = clique_append_attack(g, 2, 3);
        audit(two_thirds.graph, two_thirds.plan, "clique-append");
      }
    }
  for (const auto& [kind, c] : counts) v.detail << kind << "=" << c << " ";
  v.detail << "plans, realized n <= 9";
}

void claims_three_four(Verdict_& v) {
  std::size_t c4 = 0, c3 = 0;
  for (const Graph& g : all_graphs(1, 6)) {
    const std::size_t m = exact_m(g);
    for (std::size_t want = 1; want <= std::min<std::size_t>(3, g.order()); ++want) {
      ++c4;
      v.check(m <= exact_m_g(g, want) + want - 1, "m vs m_g on " + text(g));
    }
  }
  for (std::size_t n = 1; n <= 4; ++n)
    for (const Graph& g : brute::connected_graphs(n)) {
      ++c3;
      const Graph big = clique_append(g, 1, 2);
      v.check(exact_m_g(big, n + 1) == exact_m(g), "appended clique on " + text(g));
    }
  v.detail << c4 << " inequality instances, " << c3 << " equality instances";
}

void approx_quality(Verdict_& v) {
  std::size_t small = 0;
  std::size_t worst_num = 0, worst_den = 1;
  for (const Graph& g : all_graphs(2, 7)) {
    ++small;
    const std::size_t m = exact_m(g);
    const AttackPlan p = approx_attack(g);
    v.check(p.budget_used <= log2_ceil(g.order()) * m, "approx budget on " + text(g));
    if (p.budget_used * worst_den > worst_num * m) {
      worst_num = p.budget_used;
      worst_den = m;
    }
  }
  std::vector<Graph> large;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    large.push_back(erdos_renyi(20 + 18 * seed, 3.0 / (20.0 + 18.0 * static_cast<double>(seed)), seed));
    large.push_back(random_d_regular(40 + 16 * seed, 3 + seed % 2 * 1, seed));
  }
  for (std::size_t side = 3; side <= 14; side += 3) large.push_back(grid(side, side));
  large.push_back(star(200));
  large.push_back(cycle(200));
  large.push_back(path(199));
  large.push_back(disjoint_cliques(20, 10));
  for (const Graph& g : large) {
    const AttackPlan p = approx_attack(g);
    const Graph h = induced_remove(g, p.core);
    bool accounted = p.core.is_subset_of(p.bad);
    std::size_t largest = 0;
    for (const auto& part : p.alternatives) largest = std::max(largest, part.size());
    if (p.construction == Construction::ApproxAttack && !p.core.empty())
      accounted = accounted && p.budget_used == p.core.size() + largest;
    v.check(accounted && verify_certificate(g, p), "approx certificate on n=" + std::to_string(g.order()));
  }
  v.detail << small << " graphs n <= 7 (worst budget/m " << worst_num << "/" << worst_den << "), "
           << large.size() << " certificates n <= 200";
}

bool bipartite(const Graph& g) {
  std::vector<int> side(g.universe(), -1);
  for (NodeId s : g.vertices()) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<NodeId> stack{s};
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId w : g.out(u)) {
        if (side[w] < 0) {
          side[w] = 1 - side[u];
          stack.push_back(w);
        } else if (side[w] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

void reduction_structure(Verdict_& v) {
  std::size_t sources = 0, identities = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t d = 2 + 2 * (seed % 3);
    const std::size_t n = 10 + 2 * ((seed * 7) % 21);
    const Graph src = random_d_regular(n, d, seed);
    const AuxGraph aux = sse_auxiliary(src);
    ++sources;
    bool regular = true;
    for (NodeId x : aux.graph.vertices()) regular = regular && aux.graph.degree(x) == d;
    v.check(bipartite(aux.graph) && regular && aux.graph.order() == 2 * src.edge_count(),
            "aux structure for n=" + std::to_string(n) + " d=" + std::to_string(d));

    // Two halves of the id range; the lower half is attacked.
    NodeSet lo(n), hi(n);
    for (NodeId x = 0; x < n; ++x) (x < n / 2 ? lo : hi).insert(x);
    const AttackPlan p = yes_case_attack(aux, make_partition(src, {lo, hi}));
    std::size_t crossing = 0, inside = 0;
    for (const Edge& e : src.edges()) {
      if (lo.contains(e.u) != lo.contains(e.v)) ++crossing;
      else if (lo.contains(e.u)) ++inside;
    }
    ++identities;
    v.check(p.budget_used == crossing + aux.r * (n / 2) + inside && verify_certificate(aux.graph, p),
            "yes-case accounting for n=" + std::to_string(n) + " d=" + std::to_string(d));
  }
  v.detail << sources << " sources, " << identities << " yes-case identities";
}

void linear_time(Verdict_& v, const std::string& cli) {
  const std::string cmd = cli + " --json bench --reps 9";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) {
    v.check(false, "cannot run " + cli);
    return;
  }
  std::string out;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe.get())) out.append(buf, got);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(out);
  } catch (const std::exception& e) {
    v.check(false, std::string("bench output: ") + e.what());
    return;
  }
  const double exponent = j["outputs"]["exponent"].get<double>();
  double at_million = -1;
  for (const auto& r : j["outputs"]["runs"])
    if (r["edges"].get<std::size_t>() == 1000000) at_million = r["seconds"].get<double>();
  v.check(exponent >= 0.85 && exponent <= 1.15, "exponent out of range");
  v.check(at_million >= 0 && at_million < 2.0, "time at 10^6 edges");
  v.detail << "exponent " << exponent << ", " << at_million << " s at 10^6 edges";
}

void equivalence(Verdict_& v) {
  std::size_t pairs = 0;
  for (const Graph& g : all_graphs(1, 6)) {
    const Graph d = symmetrize(g);
    for (std::size_t k = 1; k <= g.order(); ++k) {
      ++pairs;
      const SeparatorResult r = exact_reach_separator(d, k);
      const SeparatorResult s = exact_separator(g, k);
      v.check(r.separator.size() == s.separator.size() && is_k_separator(g, r.separator, k) &&
                  is_reach_separator(d, s.separator, k),
              "k=" + std::to_string(k) + " on " + text(g));
    }
  }
  v.detail << pairs << " (graph, k) pairs, n <= 6";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corrdetect acceptance suite"};
  std::string cli = CORRDETECT_CLI_PATH;
  std::set<int> only;
  app.add_option("--cli", cli, "corrdetect executable used by the benchmark criterion");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, Criterion>> criteria{
      {"exact critical numbers and min-sum values", exact_values},
      {"sandwich bound on connected graphs", sandwich},
      {"single-node detection soundness (undirected)", single_node_undirected},
      {"single-node detection soundness (directed)", single_node_directed},
      {"g-node detection soundness", many_nodes},
      {"attack plans defeat the exhaustive checker", attack_certification},
      {"critical number under g and under clique append", claims_three_four},
      {"approximate attack quality and certificates", approx_quality},
      {"auxiliary graph structure and yes-case accounting", reduction_structure},
      {"linear-time detection benchmark", [&cli](Verdict_& v) { linear_time(v, cli); }},
      {"reachability separators on symmetrized graphs", equivalence},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Verdict_ v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s | %zu checks, %zu failures | %s | %.2f s\n",
                v.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), v.checks, v.failures,
                v.detail.str().c_str(), secs);
    if (!v.pass) {
      std::printf("  first failure: %s\n", v.first_failure.c_str());
      ++failed;
    }
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
