// SPDX-License-Identifier: Apache-2.0
#include "corrdetect.h"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <random>
#include <optional>
#include <string>

#include "corrdetect/detection.hpp"
#include "corrdetect/error.hpp"
#include "corrdetect/generators.hpp"
#include "corrdetect/graph_io.hpp"
#include "corrdetect/oracle.hpp"
#include "corrdetect/reductions.hpp"

using namespace corrdetect;

struct cd_graph {
  Graph g;
};
struct cd_scenario {
  Scenario s;
  cd_graph view;
};
struct cd_nodeset {
  std::vector<NodeId> ids;
};
struct cd_detection {
  DetectionOutcome d;
};
struct cd_separator {
  SeparatorResult r;
};
struct cd_attack {
  cd_graph graph;
  AttackPlan plan;
  int valid = 0;
  int checked = -1;
};
struct cd_oracle {
  OracleResult r;
};
struct cd_bench {
  Graph graph;
  ReportMatrix reports;
};

namespace {

thread_local std::string last_error;

template <typename F>
cd_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return CD_OK;
  } catch (const ParseError& e) {
    last_error = e.what();
    return CD_ERR_PARSE;
  } catch (const CapacityError& e) {
    last_error = e.what();
    return CD_ERR_CAPACITY;
  } catch (const UsageError& e) {
    last_error = e.what();
    return CD_ERR_USAGE;
  } catch (const IoError& e) {
    last_error = e.what();
    return CD_ERR_IO;
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = e.what();
    return CD_ERR_IO;
  } catch (const std::ios_base::failure& e) {
    last_error = e.what();
    return CD_ERR_IO;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CD_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return CD_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw UsageError(what);
}

template <typename T>
size_t copy_out(const std::vector<T>& src, T* out, size_t cap) {
  if (out != nullptr) std::copy_n(src.begin(), std::min(cap, src.size()), out);
  return src.size();
}

size_t copy_set(const NodeSet& s, uint32_t* out, size_t cap) { return copy_out(s.to_vector(), out, cap); }

char* dup(const std::string& s) {
  char* p = new char[s.size() + 1];
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

cd_scenario* wrap(Scenario s) {
  auto* out = new cd_scenario{std::move(s), {}};
  out->view.g = out->s.graph;
  return out;
}

}  // namespace

extern "C" {

const char* cd_last_error(void) { return last_error.c_str(); }
const char* cd_version(void) { return "1.0.0"; }
void cd_string_free(char* s) { delete[] s; }

cd_status cd_graph_parse(const char* text, cd_graph** out) {
  return guard([&] {
    require(text && out, "null argument");
    *out = new cd_graph{parse_graph(text)};
  });
}

cd_status cd_graph_load(const char* path, cd_graph** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = new cd_graph{load_graph(path)};
  });
}

cd_status cd_graph_generate(const char* kind, const double* params, size_t n_params, uint64_t seed,
                            cd_graph** out) {
  return guard([&] {
    require(kind && out && (params || n_params == 0), "null argument");
    *out = new cd_graph{generate(kind, std::span<const double>(params, n_params), seed)};
  });
}

cd_status cd_graph_serialize(const cd_graph* g, char** out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = dup(serialize_graph(g->g));
  });
}

cd_status cd_graph_save(const cd_graph* g, const char* path) {
  return guard([&] {
    require(g && path, "null argument");
    save_graph(g->g, path);
  });
}

void cd_graph_free(cd_graph* g) { delete g; }
size_t cd_graph_order(const cd_graph* g) { return g ? g->g.order() : 0; }
size_t cd_graph_edge_count(const cd_graph* g) { return g ? g->g.edge_count() : 0; }
int cd_graph_is_directed(const cd_graph* g) { return g && g->g.is_directed() ? 1 : 0; }

size_t cd_nodeset_ids(const cd_nodeset* s, uint32_t* out, size_t cap) {
  return s ? copy_out(s->ids, out, cap) : 0;
}
void cd_nodeset_free(cd_nodeset* s) { delete s; }

cd_status cd_scenario_parse(const char* json, cd_scenario** out) {
  return guard([&] {
    require(json && out, "null argument");
    *out = wrap(parse_scenario(json));
  });
}

cd_status cd_scenario_load(const char* path, cd_scenario** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = wrap(load_scenario(path));
  });
}

cd_status cd_scenario_truthful(const cd_graph* g, size_t budget, cd_scenario** out) {
  return guard([&] {
    require(g && out, "null argument");
    *out = wrap(make_scenario(g->g, NodeSet(g->g.universe()), {}, budget));
  });
}

cd_status cd_scenario_serialize(const cd_scenario* s, char** out) {
  return guard([&] {
    require(s && out, "null argument");
    *out = dup(serialize_scenario(s->s));
  });
}

cd_status cd_scenario_save(const cd_scenario* s, const char* path) {
  return guard([&] {
    require(s && path, "null argument");
    save_scenario(s->s, path);
  });
}

void cd_scenario_free(cd_scenario* s) { delete s; }
const cd_graph* cd_scenario_graph(const cd_scenario* s) { return s ? &s->view : nullptr; }
size_t cd_scenario_budget(const cd_scenario* s) { return s ? s->s.budget : 0; }
size_t cd_scenario_bad(const cd_scenario* s, uint32_t* out, size_t cap) {
  return s ? copy_set(s->s.bad, out, cap) : 0;
}

cd_status cd_scenario_guaranteed_good(const cd_scenario* s, size_t cap, unsigned threads,
                                      cd_nodeset** out) {
  return guard([&] {
    require(s && out, "null argument");
    CheckerOptions opts;
    if (cap != 0) opts.cap = cap;
    opts.threads = std::max(1u, threads);
    *out = new cd_nodeset{
        guaranteed_good(s->s.graph, s->s.reports, s->s.budget, opts).to_vector()};
  });
}

cd_detect_options cd_detect_defaults(void) {
  cd_detect_options o{};
  o.mode = CD_DETECT_ONE;
  o.want = 1;
  return o;
}

cd_status cd_detect(const cd_scenario* s, const cd_detect_options* opts, cd_detection** out) {
  return guard([&] {
    require(s && opts && out, "null argument");
    DetectOptions d;
    if (opts->has_budget) d.budget = opts->budget;
    if (opts->shuffle) d.shuffle_seed = opts->seed;
    const Graph& g = s->s.graph;
    switch (opts->mode) {
      case CD_DETECT_ONE:
        *out = new cd_detection{detect_one_undirected(g, s->s.reports, d)};
        break;
      case CD_DETECT_DIRECTED:
        *out = new cd_detection{detect_one_directed(g, s->s.reports, d)};
        break;
      case CD_DETECT_MANY:
        *out = new cd_detection{detect_many(g, s->s.reports, opts->want, d)};
        break;
      default:
        throw UsageError("unknown detection mode");
    }
  });
}

cd_detection_info cd_detection_summary(const cd_detection* d) {
  cd_detection_info info{};
  if (d == nullptr) return info;
  info.declared_count = d->d.declared_good.size();
  info.rounds_removed = d->d.rounds_removed;
  info.declared_score = d->d.declared_score;
  info.complete = d->d.complete ? 1 : 0;
  info.certified = d->d.certified ? 1 : 0;
  return info;
}

size_t cd_detection_declared(const cd_detection* d, uint32_t* out, size_t cap) {
  return d ? copy_set(d->d.declared_good, out, cap) : 0;
}

size_t cd_detection_pairs(const cd_detection* d, uint32_t* out, size_t cap) {
  if (d == nullptr) return 0;
  const auto& pairs = d->d.removed_pairs;
  if (out != nullptr)
    for (size_t i = 0; i < std::min(cap, pairs.size()); ++i) {
      out[2 * i] = pairs[i].first;
      out[2 * i + 1] = pairs[i].second;
    }
  return pairs.size();
}

void cd_detection_free(cd_detection* d) { delete d; }

cd_separator_options cd_separator_defaults(void) {
  cd_separator_options o{};
  o.method = CD_SEP_EXACT;
  o.g = 1;
  o.seed = 1;
  o.effort = 4;
  o.threads = 1;
  return o;
}

cd_status cd_separator_solve(const cd_graph* g, const cd_separator_options* opts, cd_separator** out) {
  return guard([&] {
    require(g && opts && out, "null argument");
    require(opts->g >= 1, "g must be >= 1");
    const Graph& gr = g->g;
    ExactOptions exact;
    if (opts->cap != 0) exact.cap = opts->cap;
    SeparatorResult r;
    if (opts->method == CD_SEP_HEURISTIC) {
      require(opts->g == 1, "heuristic separators support g = 1 only");
      HeuristicOptions h;
      h.seed = opts->seed;
      h.effort = opts->effort;
      h.threads = std::max(1u, opts->threads);
      r = opts->k == 0 ? approx_min_sum(gr, h) : heuristic_separator(gr, opts->k, h);
    } else if (gr.is_directed()) {
      require(opts->g == 1, "reachability separators support g = 1 only");
      r = opts->k == 0 ? reach_min_sum(gr, exact) : exact_reach_separator(gr, opts->k, exact);
    } else if (opts->g > 1) {
      r = opts->k == 0 ? g_remainder_min_sum(gr, opts->g, exact)
                       : exact_g_remainder(gr, opts->k, opts->g, exact);
    } else {
      r = opts->k == 0 ? min_sum(gr, exact) : exact_separator(gr, opts->k, exact);
    }
    *out = new cd_separator{std::move(r)};
  });
}

size_t cd_separator_k(const cd_separator* s) { return s ? s->r.k : 0; }
size_t cd_separator_g(const cd_separator* s) { return s ? s->r.g : 0; }
size_t cd_separator_objective(const cd_separator* s) { return s ? s->r.objective : 0; }
size_t cd_separator_ids(const cd_separator* s, uint32_t* out, size_t cap) {
  return s ? copy_set(s->r.separator, out, cap) : 0;
}
size_t cd_separator_profile(const cd_separator* s, size_t* out, size_t cap) {
  return s ? copy_out(s->r.component_profile, out, cap) : 0;
}
void cd_separator_free(cd_separator* s) { delete s; }

cd_attack_options cd_attack_defaults(void) {
  cd_attack_options o{};
  o.kind = CD_ATTACK_SEPARATOR;
  o.g = 1;
  o.delta_num = 1;
  o.delta_den = 2;
  o.check_cap = 12;
  o.seed = 1;
  o.threads = 1;
  return o;
}

cd_status cd_attack_run(const cd_graph* g, const cd_attack_options* opts, cd_attack** out) {
  return guard([&] {
    require(g && opts && out, "null argument");
    const Graph& gr = g->g;
    ExactOptions exact;
    if (opts->cap != 0) exact.cap = opts->cap;
    auto a = std::make_unique<cd_attack>();
    a->graph.g = gr;
    switch (opts->kind) {
      case CD_ATTACK_SEPARATOR:
        a->plan = separator_attack(gr, min_sum(gr, exact));
        break;
      case CD_ATTACK_DIRECTED:
        a->plan = directed_attack(gr, reach_min_sum(gr, exact));
        break;
      case CD_ATTACK_GREMAINDER:
        a->plan = g_remainder_attack(gr, g_remainder_min_sum(gr, opts->g, exact), opts->g);
        break;
      case CD_ATTACK_APPROX: {
        HeuristicOptions h;
        h.seed = opts->seed;
        h.threads = std::max(1u, opts->threads);
        a->plan = approx_attack(gr, h);
        break;
      }
      case CD_ATTACK_CLIQUE_APPEND: {
        auto res = clique_append_attack(gr, opts->delta_num, opts->delta_den, exact);
        a->graph.g = std::move(res.graph);
        a->plan = std::move(res.plan);
        break;
      }
      default:
        throw UsageError("unknown attack strategy");
    }
    const Graph& target = a->graph.g;
    a->valid = verify_certificate(target, a->plan) ? 1 : 0;
    if (opts->check_cap != 0 && target.order() <= opts->check_cap) {
      const Scenario s = realize(target, a->plan);
      CheckerOptions c;
      c.cap = opts->check_cap;
      c.threads = std::max(1u, opts->threads);
      a->checked = impossible_to_find(target, s.reports, s.budget, a->plan.target_g, c) ? 1 : 0;
    }
    *out = a.release();
  });
}

cd_attack_info cd_attack_summary(const cd_attack* a) {
  cd_attack_info info{};
  if (a == nullptr) return info;
  info.budget_used = a->plan.budget_used;
  info.target_g = a->plan.target_g;
  info.degenerate = a->plan.degenerate ? 1 : 0;
  info.certificate_valid = a->valid;
  info.checked = a->checked;
  info.construction = construction_name(a->plan.construction).data();
  return info;
}

size_t cd_attack_bad(const cd_attack* a, uint32_t* out, size_t cap) {
  return a ? copy_set(a->plan.bad, out, cap) : 0;
}
const cd_graph* cd_attack_graph(const cd_attack* a) { return a ? &a->graph : nullptr; }

cd_status cd_attack_scenario(const cd_attack* a, cd_scenario** out) {
  return guard([&] {
    require(a && out, "null argument");
    *out = wrap(realize(a->graph.g, a->plan));
  });
}

void cd_attack_free(cd_attack* a) { delete a; }

cd_status cd_oracle_solve(const cd_graph* g, size_t want, size_t cap, unsigned threads, cd_oracle** out) {
  return guard([&] {
    require(g && out, "null argument");
    OracleOptions opts;
    if (cap != 0) opts.cap = cap;
    opts.threads = std::max(1u, threads);
    *out = new cd_oracle{solve_critical(g->g, want, opts)};
  });
}

size_t cd_oracle_value(const cd_oracle* o) { return o ? o->r.value : 0; }
size_t cd_oracle_family_size(const cd_oracle* o) { return o ? o->r.family.members.size() : 0; }
size_t cd_oracle_anchor(const cd_oracle* o) { return o ? o->r.family.anchor : 0; }
size_t cd_oracle_member(const cd_oracle* o, size_t index, uint32_t* out, size_t cap) {
  if (o == nullptr || index >= o->r.family.members.size()) return 0;
  return copy_set(o->r.family.members[index], out, cap);
}
void cd_oracle_free(cd_oracle* o) { delete o; }

cd_status cd_reduce_sse_aux(const cd_graph* g, size_t* r, cd_graph** out) {
  return guard([&] {
    require(g && out, "null argument");
    AuxGraph aux = sse_auxiliary(g->g);
    if (r != nullptr) *r = aux.r;
    *out = new cd_graph{std::move(aux.graph)};
  });
}

cd_status cd_reduce_clique_append(const cd_graph* g, size_t delta_num, size_t delta_den, size_t* h,
                                  cd_graph** out) {
  return guard([&] {
    require(g && out, "null argument");
    const size_t size = append_size(g->g.order(), delta_num, delta_den);
    *out = new cd_graph{clique_append(g->g, delta_num, delta_den)};
    if (h != nullptr) *h = size;
  });
}

cd_status cd_reduce_np_gadget(const cd_graph* g, size_t m, size_t n, size_t c, cd_gadget_info* info,
                              cd_graph** out) {
  return guard([&] {
    require(g && out, "null argument");
    NpGadget gad = np_gadget(g->g, m, n, c);
    if (info != nullptr) *info = {gad.base_nodes, gad.node_count, gad.edge_count};
    *out = new cd_graph{std::move(gad.graph)};
  });
}

cd_status cd_expansion(const cd_graph* g, const uint32_t* ids, size_t count, int64_t* num, int64_t* den) {
  return guard([&] {
    require(g && num && den && (ids || count == 0), "null argument");
    NodeSet s(g->g.universe());
    for (size_t i = 0; i < count; ++i) s.insert(ids[i]);
    const Rational r = expansion(g->g, s);
    *num = r.num;
    *den = r.den;
  });
}

cd_status cd_bench_prepare(size_t edges, double avg_degree, double bad_fraction, uint64_t seed,
                           cd_bench** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = nullptr;
    require(avg_degree > 0 && bad_fraction >= 0 && bad_fraction < 1, "invalid bench parameters");
    auto n = std::max<size_t>(1, static_cast<size_t>(2.0 * static_cast<double>(edges) / avg_degree));
    while (n * (n - 1) / 2 < edges) ++n;
    Graph g = bfs_relabel(gnm(n, edges, seed));
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    NodeSet bad(g.universe());
    const auto target = static_cast<size_t>(bad_fraction * static_cast<double>(g.order()));
    while (bad.size() < target) bad.insert(static_cast<NodeId>(uniform_below(rng, g.universe())));
    ReportMatrix reports = truthful_fill(g, bad);
    *out = new cd_bench{std::move(g), std::move(reports)};
  });
}

cd_status cd_bench_run(const cd_bench* b, double* seconds) {
  return guard([&] {
    require(b != nullptr && seconds != nullptr, "null argument");
    const auto t0 = std::chrono::steady_clock::now();
    const DetectionOutcome d = detect_one_undirected(b->graph, b->reports);
    *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (d.declared_good.universe() != b->graph.universe()) throw std::logic_error("bench: bad outcome");
  });
}

void cd_bench_free(cd_bench* b) { delete b; }

cd_status cd_bench_detect(size_t edges, double avg_degree, double bad_fraction, uint64_t seed,
                          unsigned reps, double* seconds) {
  cd_bench* b = nullptr;
  if (seconds == nullptr) return guard([] { require(false, "null argument"); });
  const cd_status st = cd_bench_prepare(edges, avg_degree, bad_fraction, seed, &b);
  if (st != CD_OK) return st;
  double best = -1;
  for (unsigned i = 0; i < std::max(1u, reps); ++i) {
    double dt = 0;
    const cd_status r = cd_bench_run(b, &dt);
    if (r != CD_OK) {
      cd_bench_free(b);
      return r;
    }
    if (best < 0 || dt < best) best = dt;
  }
  cd_bench_free(b);
  *seconds = best;
  return CD_OK;
}

}  // extern "C"
