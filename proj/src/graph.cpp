// SPDX-License-Identifier: Apache-2.0
#include "corrdetect/graph.hpp"

#include <algorithm>
#include <string>

#include "corrdetect/error.hpp"

namespace corrdetect {
namespace {

// Stable counting sort of arcs by key; O(n + m).
template <typename Key>
std::vector<Edge> bucket_sort(std::size_t n, const std::vector<Edge>& arcs, Key key) {
  std::vector<std::size_t> count(n + 1, 0);
  for (const Edge& e : arcs) ++count[key(e) + 1];
  for (std::size_t i = 1; i <= n; ++i) count[i] += count[i - 1];
  std::vector<Edge> out(arcs.size());
  for (const Edge& e : arcs) out[count[key(e)]++] = e;
  return out;
}

void fill_csr(std::size_t n, const std::vector<Edge>& sorted, std::vector<std::size_t>& off,
              std::vector<NodeId>& adj, bool by_source) {
  off.assign(n + 1, 0);
  adj.resize(sorted.size());
  for (const Edge& e : sorted) ++off[(by_source ? e.u : e.v) + 1];
  for (std::size_t i = 1; i <= n; ++i) off[i] += off[i - 1];
  for (std::size_t i = 0; i < sorted.size(); ++i) adj[i] = by_source ? sorted[i].v : sorted[i].u;
}

}  // namespace

Graph Graph::build(GraphKind kind, std::size_t n, std::span<const Edge> input) {
  std::vector<Edge> arcs;
  arcs.reserve(kind == GraphKind::Directed ? input.size() : 2 * input.size());
  for (const Edge& e : input) {
    if (e.u >= n || e.v >= n)
      throw UsageError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") out of range for n=" + std::to_string(n));
    if (e.u == e.v) throw UsageError("self-loop at node " + std::to_string(e.u));
    arcs.push_back(e);
    if (kind == GraphKind::Undirected) arcs.push_back({e.v, e.u});
  }

  Graph g;
  g.kind_ = kind;
  g.n_ = n;
  g.present_ = NodeSet(n, true);

  auto by_target = bucket_sort(n, arcs, [](const Edge& e) { return e.v; });
  auto sorted = bucket_sort(n, by_target, [](const Edge& e) { return e.u; });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw UsageError("parallel edge (" + std::to_string(sorted[i].u) + "," +
                       std::to_string(sorted[i].v) + ")");
  fill_csr(n, sorted, g.out_off_, g.out_adj_, true);

  if (kind == GraphKind::Directed) {
    auto by_source = bucket_sort(n, arcs, [](const Edge& e) { return e.u; });
    auto by_dest = bucket_sort(n, by_source, [](const Edge& e) { return e.v; });
    fill_csr(n, by_dest, g.in_off_, g.in_adj_, false);
  } else {
    // Slots of u are visited in ascending u, so u appears in adj(v) exactly at
    // v's running cursor.
    g.rev_.resize(g.out_adj_.size());
    std::vector<std::size_t> cursor(g.out_off_.begin(), g.out_off_.end() - 1);
    for (NodeId u = 0; u < n; ++u)
      for (std::size_t s = g.out_off_[u]; s < g.out_off_[u + 1]; ++s)
        g.rev_[s] = cursor[g.out_adj_[s]]++;
  }
  return g;
}

Graph Graph::undirected(std::size_t n, std::span<const Edge> edges) {
  return build(GraphKind::Undirected, n, edges);
}

Graph Graph::directed(std::size_t n, std::span<const Edge> arcs) {
  return build(GraphKind::Directed, n, arcs);
}

std::optional<std::size_t> Graph::slot(NodeId u, NodeId v) const noexcept {
  if (u >= n_) return std::nullopt;
  auto first = out_adj_.begin() + static_cast<std::ptrdiff_t>(out_off_[u]);
  auto last = out_adj_.begin() + static_cast<std::ptrdiff_t>(out_off_[u + 1]);
  auto it = std::lower_bound(first, last, v);
  if (it == last || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - out_adj_.begin());
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < n_; ++u)
    for (NodeId v : this->out(u))
      if (is_directed() || u < v) out.push_back({u, v});
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.kind_ == b.kind_ && a.n_ == b.n_ && a.present_ == b.present_ &&
         a.out_off_ == b.out_off_ && a.out_adj_ == b.out_adj_;
}

NodeSet neighbors(const Graph& g, NodeId u) {
  if (u >= g.universe()) throw UsageError("node " + std::to_string(u) + " out of range");
  NodeSet s(g.universe());
  for (NodeId v : g.out(u)) s.insert(v);
  return s;
}

std::vector<NodeSet> connected_components(const Graph& g) {
  if (g.is_directed()) throw UsageError("connected_components needs an undirected graph");
  std::vector<NodeSet> comps;
  NodeSet seen(g.universe());
  std::vector<NodeId> stack;
  for (NodeId s : g.vertices()) {
    if (seen.contains(s)) continue;
    NodeSet comp(g.universe());
    seen.insert(s);
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      comp.insert(u);
      for (NodeId v : g.out(u))
        if (!seen.contains(v)) {
          seen.insert(v);
          stack.push_back(v);
        }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::vector<std::size_t> component_sizes(const Graph& g, const NodeSet& removed) {
  std::vector<std::size_t> sizes;
  std::vector<char> seen(g.universe(), 0);
  for (NodeId v : removed) seen[v] = 1;
  std::vector<NodeId> stack;
  for (NodeId s : g.vertices()) {
    if (seen[s]) continue;
    std::size_t count = 0;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      ++count;
      for (NodeId v : g.in(u))
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      if (g.is_directed())
        for (NodeId v : g.out(u))
          if (!seen[v]) {
            seen[v] = 1;
            stack.push_back(v);
          }
    }
    sizes.push_back(count);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

NodeSet reach_set(const Graph& g, NodeId v) {
  if (v >= g.universe() || !g.has_vertex(v))
    throw UsageError("node " + std::to_string(v) + " not in graph");
  NodeSet r(g.universe());
  std::vector<NodeId> stack{v};
  r.insert(v);
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId w : g.in(u))
      if (!r.contains(w)) {
        r.insert(w);
        stack.push_back(w);
      }
  }
  return r;
}

Graph induced_remove(const Graph& g, const NodeSet& removed) {
  if (removed.universe() != g.universe()) throw UsageError("removed set has wrong universe");
  std::vector<Edge> kept;
  for (const Edge& e : g.edges())
    if (!removed.contains(e.u) && !removed.contains(e.v)) kept.push_back(e);
  Graph h = Graph::build(g.kind(), g.universe(), kept);
  h.present_ = g.vertices() - removed;
  return h;
}

Graph symmetrize(const Graph& g) {
  if (g.is_directed()) throw UsageError("symmetrize expects an undirected graph");
  std::vector<Edge> arcs;
  arcs.reserve(2 * g.edge_count());
  for (const Edge& e : g.edges()) {
    arcs.push_back(e);
    arcs.push_back({e.v, e.u});
  }
  return Graph::directed(g.universe(), arcs);
}

Graph underlying(const Graph& d) {
  if (!d.is_directed()) return d;
  std::vector<Edge> edges;
  for (const Edge& a : d.edges()) {
    Edge e{std::min(a.u, a.v), std::max(a.u, a.v)};
    if (a.u < a.v || !d.has_arc(a.v, a.u)) edges.push_back(e);
  }
  return Graph::undirected(d.universe(), edges);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  if (a.kind() != b.kind()) throw UsageError("disjoint_union of mixed graph kinds");
  auto edges = a.edges();
  const auto shift = static_cast<NodeId>(a.universe());
  for (const Edge& e : b.edges()) edges.push_back({e.u + shift, e.v + shift});
  const std::size_t n = a.universe() + b.universe();
  return a.is_directed() ? Graph::directed(n, edges) : Graph::undirected(n, edges);
}

Graph bfs_relabel(const Graph& g) {
  if (g.order() != g.universe()) throw UsageError("bfs_relabel needs dense ids");
  constexpr auto kUnset = static_cast<NodeId>(-1);
  std::vector<NodeId> rank(g.universe(), kUnset);
  NodeId next = 0;
  std::vector<NodeId> queue;
  queue.reserve(g.universe());
  for (NodeId s = 0; s < g.universe(); ++s) {
    if (rank[s] != kUnset) continue;
    rank[s] = next++;
    queue.assign(1, s);
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (NodeId v : g.out(queue[i]))
        if (rank[v] == kUnset) {
          rank[v] = next++;
          queue.push_back(v);
        }
  }
  auto edges = g.edges();
  for (Edge& e : edges) e = {rank[e.u], rank[e.v]};
  return g.is_directed() ? Graph::directed(g.universe(), edges) : Graph::undirected(g.universe(), edges);
}

}  // namespace corrdetect
