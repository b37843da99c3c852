// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "corrdetect/error.hpp"
#include "corrdetect/generators.hpp"
#include "corrdetect/separators.hpp"

namespace corrdetect {

namespace {

constexpr int kInf = 1 << 29;

// Unit-capacity vertex cuts via node splitting and BFS augmentation.
class FlowNet {
public:
  explicit FlowNet(int n) : adj_(static_cast<std::size_t>(n)) {}

  void add(int u, int v, int cap) {
    adj_[u].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({v, cap});
    adj_[v].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({u, 0});
  }

  int max_flow(int s, int t) {
    int flow = 0;
    std::vector<int> via(adj_.size());
    while (true) {
      std::fill(via.begin(), via.end(), -1);
      std::deque<int> queue{s};
      via[s] = -2;
      while (!queue.empty() && via[t] == -1) {
        const int u = queue.front();
        queue.pop_front();
        for (int a : adj_[u])
          if (arcs_[a].cap > 0 && via[arcs_[a].to] == -1) {
            via[arcs_[a].to] = a;
            queue.push_back(arcs_[a].to);
          }
      }
      if (via[t] == -1) return flow;
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].cap -= 1;
        arcs_[via[v] ^ 1].cap += 1;
      }
      ++flow;
    }
  }

  std::vector<char> residual_reach(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int a : adj_[u])
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
    }
    return seen;
  }

private:
  struct Arc {
    int to;
    int cap;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

class Splitter {
public:
  Splitter(const Graph& g, std::size_t k, const HeuristicOptions& opts)
      : g_(g), k_(k), effort_(std::max(1u, opts.effort)), rng_(opts.seed),
        removed_(g.universe(), 0), dist_a_(g.universe(), -1), dist_b_(g.universe(), -1),
        local_(g.universe(), -1) {
    for (NodeId v = 0; v < g.universe(); ++v)
      if (!g.has_vertex(v)) removed_[v] = 1;
  }

  NodeSet run() {
    NodeSet sep(g_.universe());
    while (true) {
      bool changed = false;
      for (auto& comp : components()) {
        if (comp.size() <= k_) continue;
        for (NodeId v : split(comp)) {
          removed_[v] = 1;
          sep.insert(v);
        }
        changed = true;
      }
      if (!changed) break;
    }
    minimise(sep);
    return sep;
  }

private:
  std::vector<std::vector<NodeId>> components() {
    std::vector<std::vector<NodeId>> out;
    std::vector<char> seen(removed_);
    for (NodeId s = 0; s < g_.universe(); ++s) {
      if (seen[s]) continue;
      std::vector<NodeId> comp{s};
      seen[s] = 1;
      for (std::size_t i = 0; i < comp.size(); ++i)
        for (NodeId v : g_.out(comp[i]))
          if (!seen[v]) {
            seen[v] = 1;
            comp.push_back(v);
          }
      out.push_back(std::move(comp));
    }
    return out;
  }

  // BFS distances from `src` over comp into `dist`; returns the farthest node.
  NodeId bfs(const std::vector<NodeId>& comp, NodeId src, std::vector<int>& dist) {
    for (NodeId v : comp) dist[v] = -1;
    std::vector<NodeId> order{src};
    dist[src] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (NodeId v : g_.out(order[i]))
        if (!removed_[v] && dist[v] < 0) {
          dist[v] = dist[order[i]] + 1;
          order.push_back(v);
        }
    return order.back();
  }

  // Minimum vertex cut separating the ball around a from the ball around b.
  std::vector<NodeId> cut_between(const std::vector<NodeId>& comp, int radius) {
    const int n = static_cast<int>(comp.size());
    std::vector<char> side(comp.size(), 0);  // 1 source ball, 2 sink ball
    for (int i = 0; i < n; ++i)
      if (dist_a_[comp[i]] <= radius) side[i] = 1;
    for (int i = 0; i < n; ++i) {
      if (side[i] != 0 || dist_b_[comp[i]] > radius) continue;
      bool touches = false;
      for (NodeId v : g_.out(comp[i]))
        if (!removed_[v] && side[local_[v]] == 1) touches = true;
      if (!touches) side[i] = 2;
    }
    if (std::find(side.begin(), side.end(), 2) == side.end()) return {};

    const int s = 2 * n, t = 2 * n + 1;
    FlowNet net(2 * n + 2);
    for (int i = 0; i < n; ++i) {
      net.add(2 * i, 2 * i + 1, side[i] == 0 ? 1 : kInf);
      if (side[i] == 1) net.add(s, 2 * i, kInf);
      if (side[i] == 2) net.add(2 * i + 1, t, kInf);
      for (NodeId v : g_.out(comp[i]))
        if (!removed_[v]) net.add(2 * i + 1, 2 * local_[v], kInf);
    }
    net.max_flow(s, t);
    const auto reach = net.residual_reach(s);
    std::vector<NodeId> cut;
    for (int i = 0; i < n; ++i)
      if (reach[2 * i] && !reach[2 * i + 1]) cut.push_back(comp[i]);
    return cut;
  }

  // Size of comp minus its largest piece once `cut` is removed.
  std::size_t split_mass(const std::vector<NodeId>& comp, const std::vector<NodeId>& cut) {
    for (NodeId v : cut) removed_[v] = 1;
    std::vector<char> seen(comp.size(), 0);
    std::size_t largest = 0;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (seen[i] || removed_[comp[i]]) continue;
      std::vector<NodeId> stack{comp[i]};
      seen[i] = 1;
      std::size_t size = 0;
      while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        ++size;
        for (NodeId v : g_.out(u))
          if (!removed_[v] && !seen[local_[v]]) {
            seen[local_[v]] = 1;
            stack.push_back(v);
          }
      }
      largest = std::max(largest, size);
    }
    for (NodeId v : cut) removed_[v] = 0;
    return comp.size() - cut.size() - largest;
  }

  std::vector<NodeId> split(const std::vector<NodeId>& comp) {
    for (std::size_t i = 0; i < comp.size(); ++i) local_[comp[i]] = static_cast<int>(i);
    std::vector<NodeId> best;
    std::size_t best_cut = 0, best_mass = 0;
    for (unsigned trial = 0; trial < effort_; ++trial) {
      const NodeId start = comp[uniform_below(rng_, comp.size())];
      const NodeId a = bfs(comp, start, dist_a_);
      const NodeId b = bfs(comp, a, dist_a_);
      const int diameter = dist_a_[b];
      if (diameter < 2) break;
      bfs(comp, b, dist_b_);
      for (int eighths : {0, 1, 2}) {
        const int radius = diameter * eighths / 8;
        auto cut = cut_between(comp, radius);
        if (cut.empty()) continue;
        const std::size_t mass = split_mass(comp, cut);
        if (mass == 0) continue;
        // cut / mass < best_cut / best_mass
        if (best.empty() || cut.size() * best_mass < best_cut * mass) {
          best_cut = cut.size();
          best_mass = mass;
          best = std::move(cut);
        }
      }
    }
    if (best.empty()) {
      NodeId peel = comp.front();
      std::size_t best_deg = 0;
      for (NodeId u : comp) {
        std::size_t deg = 0;
        for (NodeId v : g_.out(u)) deg += removed_[v] ? 0 : 1;
        if (deg > best_deg) {
          best_deg = deg;
          peel = u;
        }
      }
      best = {peel};
    }
    for (NodeId v : comp) local_[v] = -1;
    return best;
  }

  // Returns separator nodes whose re-insertion keeps every component <= k.
  void minimise(NodeSet& sep) {
    std::vector<NodeId> parent(g_.universe());
    std::vector<std::size_t> size(g_.universe(), 1);
    std::iota(parent.begin(), parent.end(), NodeId{0});
    auto find = [&](NodeId v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    auto unite = [&](NodeId a, NodeId b) {
      a = find(a);
      b = find(b);
      if (a == b) return;
      if (size[a] < size[b]) std::swap(a, b);
      parent[b] = a;
      size[a] += size[b];
    };
    for (NodeId u : g_.vertices())
      if (!removed_[u])
        for (NodeId v : g_.out(u))
          if (!removed_[v]) unite(u, v);
    for (NodeId s : sep.to_vector()) {
      std::vector<NodeId> roots;
      std::size_t merged = 1;
      for (NodeId v : g_.out(s)) {
        if (removed_[v]) continue;
        const NodeId r = find(v);
        if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
        roots.push_back(r);
        merged += size[r];
      }
      if (merged > k_) continue;
      removed_[s] = 0;
      sep.erase(s);
      for (NodeId r : roots) unite(s, r);
    }
  }

  const Graph& g_;
  std::size_t k_;
  unsigned effort_;
  std::mt19937_64 rng_;
  std::vector<char> removed_;
  std::vector<int> dist_a_, dist_b_;
  std::vector<int> local_;
};

}  // namespace

NodeSet bisection_peeling(const Graph& g, std::size_t k, const HeuristicOptions& opts) {
  if (g.is_directed()) throw UsageError("bisection_peeling needs an undirected graph");
  if (k < 1) throw UsageError("separator bound k must be >= 1");
  return Splitter(g, k, opts).run();
}

SeparatorResult heuristic_separator(const Graph& g, std::size_t k, const HeuristicOptions& opts,
                                    const SeparatorHeuristic& heuristic) {
  if (g.is_directed()) throw UsageError("heuristic separators need an undirected graph");
  SeparatorResult r;
  r.separator = heuristic(g, k, opts);
  r.component_profile = component_sizes(g, r.separator);
  r.k = r.component_profile.empty() ? 0 : r.component_profile.front();
  r.objective = r.separator.size() + r.k;
  return r;
}

SeparatorResult approx_min_sum(const Graph& g, const HeuristicOptions& opts,
                               const SeparatorHeuristic& heuristic) {
  if (g.is_directed()) throw UsageError("approx_min_sum needs an undirected graph");
  const std::size_t n = g.order();
  if (n == 0) return heuristic_separator(g, 1, opts, heuristic);
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k < n; k *= 2) ks.push_back(k);
  ks.push_back(n);

  std::vector<SeparatorResult> results(ks.size());
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, ks.size()));
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < ks.size(); i += threads)
      results[i] = heuristic_separator(g, ks[i], opts, heuristic);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].objective < results[best].objective) best = i;
  return results[best];
}

}  // namespace corrdetect
