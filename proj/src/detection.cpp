// SPDX-License-Identifier: Apache-2.0
#include "corrdetect/detection.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <tuple>
#include <random>

#include "corrdetect/error.hpp"
#include "corrdetect/generators.hpp"

namespace corrdetect {
namespace {

// Step 1 shared by all detectors. Removing nodes never creates a new
// offending pair, so one pass over the offending pairs in the chosen order
// equals repeatedly removing the first remaining offending pair.
bool small_against(std::size_t items, std::size_t universe) {
  return items * static_cast<std::size_t>(std::bit_width(items)) < universe;
}

struct Removal {
  std::vector<char> removed;
  std::vector<std::pair<NodeId, NodeId>> pairs;
};

void remove_pairs(std::vector<std::pair<NodeId, NodeId>>& offending, Removal& out,
                  const DetectOptions& opts) {
  if (opts.shuffle_seed) {
    std::mt19937_64 rng(*opts.shuffle_seed);
    for (std::size_t i = offending.size(); i > 1; --i)
      std::swap(offending[i - 1], offending[uniform_below(rng, i)]);
  }
  for (auto [u, v] : offending) {
    if (out.removed[u] || out.removed[v]) continue;
    out.removed[u] = out.removed[v] = 1;
    out.pairs.emplace_back(u, v);
  }
}

// Lexicographic sort of pairs in O(n + pairs): a comparison sort when
// pairs * log(pairs) stays below n, else a two-pass counting sort.
void lex_sort(std::vector<std::pair<NodeId, NodeId>>& pairs, std::size_t universe) {
  if (small_against(pairs.size(), universe)) {
    std::sort(pairs.begin(), pairs.end());
    return;
  }
  std::vector<std::pair<NodeId, NodeId>> tmp(pairs.size());
  std::vector<std::uint32_t> start(universe + 1);
  auto pass = [&](auto key, const auto& from, auto& to) {
    std::fill(start.begin(), start.end(), 0);
    for (const auto& p : from) ++start[key(p) + 1];
    for (std::size_t i = 1; i <= universe; ++i) start[i] += start[i - 1];
    for (const auto& p : from) to[start[key(p)]++] = p;
  };
  pass([](const auto& p) { return p.second; }, pairs, tmp);
  pass([](const auto& p) { return p.first; }, tmp, pairs);
}

Removal undirected_removal(const Graph& g, const ReportMatrix& reports, const DetectOptions& opts) {
  if (g.is_directed()) throw UsageError("undirected detector given a directed graph");
  if (reports.slot_count() != g.slot_count()) throw UsageError("report matrix is incomplete");
  Removal r;
  r.removed.assign(g.universe(), 0);
  for (NodeId v = 0; v < g.universe(); ++v)
    if (!g.has_vertex(v)) r.removed[v] = 1;

  // Only Bad claims are visited; an edge accused from both ends appears twice.
  std::vector<std::pair<NodeId, NodeId>> offending;
  for (NodeId u = 0; u < g.universe(); ++u)
    for (std::size_t s = g.slot_begin(u); s < g.slot_end(u); ++s)
      if (reports.at(s) == Verdict::Bad) {
        const NodeId v = g.slot_target(s);
        offending.emplace_back(std::min(u, v), std::max(u, v));
      }
  lex_sort(offending, g.universe());
  offending.erase(std::unique(offending.begin(), offending.end()), offending.end());
  remove_pairs(offending, r, opts);
  return r;
}

// Components of the remainder H: a label per node plus size and smallest id
// per component, in the declaration order (size descending, then smallest id).
struct Components {
  std::vector<std::uint32_t> label;  // UINT32_MAX - 1 for removed nodes
  std::vector<std::size_t> size;
  std::vector<std::uint32_t> order;
};

Components remainder_components(const Graph& g, const std::vector<char>& removed) {
  constexpr auto kNone = static_cast<std::uint32_t>(-1);
  Components c;
  constexpr auto kRemoved = kNone - 1;
  c.label.assign(g.universe(), kNone);
  for (NodeId v = 0; v < g.universe(); ++v)
    if (removed[v]) c.label[v] = kRemoved;
  std::vector<NodeId> queue;
  queue.reserve(g.universe());
  for (NodeId s = 0; s < g.universe(); ++s) {
    if (c.label[s] != kNone) continue;
    const auto id = static_cast<std::uint32_t>(c.size.size());
    c.label[s] = id;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (NodeId v : g.out(queue[head]))
        if (c.label[v] == kNone) {
          c.label[v] = id;
          queue.push_back(v);
        }
    c.size.push_back(queue.size());
  }
  // Size descending; components were discovered in ascending smallest-id
  // order, which both sorts keep for ties.
  c.order.resize(c.size.size());
  std::iota(c.order.begin(), c.order.end(), 0U);
  if (small_against(c.size.size(), g.universe())) {
    std::stable_sort(c.order.begin(), c.order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return c.size[a] > c.size[b]; });
    return c;
  }
  std::vector<std::uint32_t> bucket(g.universe() + 2, 0);
  for (auto sz : c.size) ++bucket[g.universe() - sz + 1];
  for (std::size_t i = 1; i < bucket.size(); ++i) bucket[i] += bucket[i - 1];
  for (std::uint32_t id = 0; id < c.size.size(); ++id)
    c.order[bucket[g.universe() - c.size[id]]++] = id;
  return c;
}

DetectionOutcome finish(const Removal& r, std::size_t universe) {
  DetectionOutcome out;
  out.declared_good = NodeSet(universe);
  out.removed_pairs = r.pairs;
  out.rounds_removed = r.pairs.size();
  return out;
}

void apply_budget(DetectionOutcome& out, const DetectOptions& opts) {
  if (opts.budget) out.certified = certify(out, *opts.budget);
}

}  // namespace

DetectionOutcome detect_one_undirected(const Graph& g, const ReportMatrix& reports,
                                       const DetectOptions& opts) {
  return detect_many(g, reports, 1, opts);
}

DetectionOutcome detect_many(const Graph& g, const ReportMatrix& reports, std::size_t want,
                             const DetectOptions& opts) {
  if (want < 1 || want > g.order())
    throw UsageError("detect_many needs 1 <= g <= n, got g=" + std::to_string(want));
  Removal r = undirected_removal(g, reports, opts);
  DetectionOutcome out = finish(r, g.universe());
  const Components comps = remainder_components(g, r.removed);
  std::vector<char> take(comps.size.size(), 0);
  std::size_t declared = 0;
  for (std::uint32_t id : comps.order) {
    if (declared >= want) break;
    take[id] = 1;
    declared += comps.size[id];
    out.declared_score = comps.size[id];
  }
  for (NodeId v = 0; v < g.universe(); ++v)
    if (comps.label[v] < comps.size.size() && take[comps.label[v]])
      out.declared_good.insert(v);
  out.complete = declared >= want;
  apply_budget(out, opts);
  return out;
}

DetectionOutcome detect_one_directed(const Graph& d, const ReportMatrix& reports,
                                     const DetectOptions& opts) {
  if (!d.is_directed()) throw UsageError("directed detector given an undirected graph");
  if (reports.slot_count() != d.slot_count()) throw UsageError("report matrix is incomplete");
  Removal r;
  r.removed.assign(d.universe(), 0);
  for (NodeId v = 0; v < d.universe(); ++v)
    if (!d.has_vertex(v)) r.removed[v] = 1;

  // Offending arcs ordered by their sorted endpoint pair, then by direction.
  std::vector<std::pair<NodeId, NodeId>> offending;
  for (NodeId u = 0; u < d.universe(); ++u)
    for (std::size_t s = d.slot_begin(u); s < d.slot_end(u); ++s)
      if (reports.at(s) == Verdict::Bad) offending.emplace_back(u, d.slot_target(s));
  if (!opts.shuffle_seed)
    std::sort(offending.begin(), offending.end(), [](const auto& a, const auto& b) {
      auto ka = std::tuple(std::min(a.first, a.second), std::max(a.first, a.second), a.first);
      auto kb = std::tuple(std::min(b.first, b.second), std::max(b.first, b.second), b.first);
      return ka < kb;
    });
  remove_pairs(offending, r, opts);

  DetectionOutcome out = finish(r, d.universe());
  // Reachability index within H for every remaining vertex.
  std::size_t best = 0;
  NodeId best_v = 0;
  std::vector<std::uint32_t> mark(d.universe(), 0);
  std::uint32_t stamp = 0;
  std::vector<NodeId> stack;
  for (NodeId v = 0; v < d.universe(); ++v) {
    if (r.removed[v]) continue;
    ++stamp;
    std::size_t count = 0;
    stack.assign(1, v);
    mark[v] = stamp;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      ++count;
      for (NodeId w : d.in(u))
        if (!r.removed[w] && mark[w] != stamp) {
          mark[w] = stamp;
          stack.push_back(w);
        }
    }
    if (count > best) {
      best = count;
      best_v = v;
    }
  }
  if (best > 0) {
    out.declared_good.insert(best_v);
    out.declared_score = best;
    out.complete = true;
  }
  apply_budget(out, opts);
  return out;
}

bool certify(const DetectionOutcome& outcome, std::size_t budget) {
  if (!outcome.complete || outcome.declared_score == 0) return false;
  if (budget < outcome.rounds_removed) return true;
  return outcome.declared_score > budget - outcome.rounds_removed;
}

}  // namespace corrdetect
