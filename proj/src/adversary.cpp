// SPDX-License-Identifier: Apache-2.0
#include "corrdetect/adversary.hpp"

#include <algorithm>

#include "corrdetect/error.hpp"
#include "corrdetect/reductions.hpp"

namespace corrdetect {

std::string_view construction_name(Construction c) {
  switch (c) {
    case Construction::SeparatorAttack: return "separator";
    case Construction::DirectedSeparatorAttack: return "directed";
    case Construction::GRemainderAttack: return "gremainder";
    case Construction::ApproxAttack: return "approx";
    case Construction::CliqueAppendAttack: return "clique-append";
    case Construction::YesCaseAttack: return "yes-case";
  }
  return "unknown";
}

Scenario realize(const Graph& g, const AttackPlan& plan) {
  return make_scenario(g, plan.bad, plan.claims, plan.budget_used);
}

bool verify_certificate(const Graph& g, const AttackPlan& plan) {
  const Scenario s = realize(g, plan);
  NodeSet covered = plan.core;
  for (const auto& part : plan.alternatives) {
    NodeSet config = plan.core;
    for (NodeId v : part) config.insert(v);
    if (!is_consistent(g, s.reports, config, plan.budget_used)) return false;
    covered |= config;
  }
  if (plan.alternatives.empty() && !is_consistent(g, s.reports, plan.core, plan.budget_used))
    return false;
  return g.order() - (covered & g.vertices()).size() < plan.target_g;
}

namespace {

// Claims of corrupt auditors: Bad exactly for targets in `accused`.
void accuse(const Graph& g, const NodeSet& auditors, const NodeSet& accused,
            std::vector<Claim>& out) {
  for (NodeId u : auditors)
    for (NodeId v : g.out(u))
      out.push_back({u, v, accused.contains(v) ? Verdict::Bad : Verdict::Good});
}

void finish(const Graph& g, AttackPlan& plan) {
  plan.budget_used = plan.bad.size();
  plan.degenerate = 2 * plan.budget_used >= g.order();
}

// Components of g - removed as id lists, ordered by smallest member.
std::vector<std::vector<NodeId>> residual_components(const Graph& g, const NodeSet& removed) {
  const Graph h = induced_remove(g, removed);
  std::vector<std::vector<NodeId>> out;
  for (const NodeSet& c : connected_components(h)) out.push_back(c.to_vector());
  return out;
}

// Separator nodes accuse every neighbor; the corrupted component accuses
// exactly the separator.
AttackPlan component_attack(const Graph& g, const NodeSet& sep,
                            std::vector<std::vector<NodeId>> parts, std::size_t chosen,
                            std::size_t want, Construction kind) {
  AttackPlan plan;
  plan.construction = kind;
  plan.target_g = want;
  plan.core = sep;
  plan.bad = sep;
  accuse(g, sep, NodeSet(g.universe(), true), plan.claims);
  if (chosen < parts.size()) {
    const NodeSet comp = NodeSet::from_ids(g.universe(), parts[chosen]);
    plan.bad |= comp;
    accuse(g, comp, sep, plan.claims);
  }
  plan.alternatives = std::move(parts);
  finish(g, plan);
  return plan;
}

std::size_t largest_index(const std::vector<std::vector<NodeId>>& parts) {
  std::size_t best = parts.size();
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (best == parts.size() || parts[i].size() > parts[best].size()) best = i;
  return best;
}

}  // namespace

AttackPlan separator_attack(const Graph& g, const SeparatorResult& sep) {
  if (g.is_directed()) throw UsageError("separator_attack needs an undirected graph");
  if (sep.separator.universe() != g.universe() || !is_k_separator(g, sep.separator, sep.k))
    throw UsageError("separator_attack: not a valid k-vertex separator");
  auto parts = residual_components(g, sep.separator);
  const std::size_t chosen = largest_index(parts);
  return component_attack(g, sep.separator, std::move(parts), chosen, 1,
                          Construction::SeparatorAttack);
}

AttackPlan g_remainder_attack(const Graph& g, const SeparatorResult& sep, std::size_t want) {
  if (g.is_directed()) throw UsageError("g_remainder_attack needs an undirected graph");
  if (want < 1) throw UsageError("g_remainder_attack needs g >= 1");
  if (sep.separator.universe() != g.universe() ||
      !is_g_remainder_separator(g, sep.separator, sep.k, want))
    throw UsageError("g_remainder_attack: not a valid g-remainder separator");
  std::vector<std::vector<NodeId>> small;
  for (auto& c : residual_components(g, sep.separator))
    if (c.size() <= sep.k) small.push_back(std::move(c));
  const std::size_t chosen = largest_index(small);
  return component_attack(g, sep.separator, std::move(small), chosen, want,
                          Construction::GRemainderAttack);
}

AttackPlan directed_attack(const Graph& d, const SeparatorResult& sep) {
  if (!d.is_directed()) throw UsageError("directed_attack needs a directed graph");
  if (sep.separator.universe() != d.universe() || !is_reach_separator(d, sep.separator, sep.k))
    throw UsageError("directed_attack: not a valid reachability separator");
  const Graph h = induced_remove(d, sep.separator);
  AttackPlan plan;
  plan.construction = Construction::DirectedSeparatorAttack;
  plan.core = sep.separator;
  plan.bad = sep.separator;

  NodeSet best_reach(d.universe());
  NodeSet covered(d.universe());
  std::vector<NodeSet> reaches;
  for (NodeId v : h.vertices()) {
    NodeSet r = reach_set(h, v);
    if (r.size() > best_reach.size()) best_reach = r;
    if (!covered.contains(v)) {
      covered |= r;
      plan.alternatives.push_back(r.to_vector());
    }
  }
  accuse(d, sep.separator, NodeSet(d.universe(), true), plan.claims);
  plan.bad |= best_reach;
  accuse(d, best_reach, sep.separator, plan.claims);
  finish(d, plan);
  return plan;
}

AttackPlan majority_attack(const Graph& g) {
  AttackPlan plan;
  plan.construction = Construction::ApproxAttack;
  plan.bad = NodeSet(g.universe());
  plan.core = NodeSet(g.universe());
  const auto ids = g.vertices().to_vector();
  const std::size_t half = (ids.size() + 1) / 2;
  std::vector<NodeId> rest(ids.begin() + static_cast<std::ptrdiff_t>(half), ids.end());
  for (std::size_t i = 0; i < half; ++i) plan.bad.insert(ids[i]);
  const NodeSet others = NodeSet::from_ids(g.universe(), rest);
  accuse(g, plan.bad, others, plan.claims);
  plan.alternatives = {std::vector<NodeId>(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(half)),
                       rest};
  finish(g, plan);
  return plan;
}

AttackPlan approx_attack(const Graph& g, const HeuristicOptions& opts) {
  if (g.is_directed()) throw UsageError("approx_attack needs an undirected graph");
  AttackPlan plan = separator_attack(g, approx_min_sum(g, opts));
  plan.construction = Construction::ApproxAttack;
  AttackPlan majority = majority_attack(g);
  if (majority.budget_used < plan.budget_used) return majority;
  return plan;
}

AppendedAttack clique_append_attack(const Graph& g, std::size_t p, std::size_t q,
                                    const ExactOptions& exact) {
  if (g.is_directed()) throw UsageError("clique_append_attack needs an undirected graph");
  AppendedAttack out;
  out.h = append_size(g.order(), p, q);
  out.graph = clique_append(g, p, q);

  SeparatorResult sep;
  try {
    sep = min_sum(g, exact);
  } catch (const CapacityError&) {
    sep = approx_min_sum(g);
  }
  const AttackPlan base = separator_attack(g, sep);
  const std::size_t universe = out.graph.universe();
  auto lift = [universe](const NodeSet& s) {
    NodeSet r(universe);
    for (NodeId v : s) r.insert(v);
    return r;
  };
  AttackPlan& plan = out.plan;
  plan.bad = lift(base.bad);
  plan.core = lift(base.core);
  plan.claims = base.claims;
  plan.alternatives = base.alternatives;
  plan.construction = Construction::CliqueAppendAttack;
  plan.target_g = out.h + 1;
  finish(out.graph, plan);
  return out;
}

}  // namespace corrdetect
