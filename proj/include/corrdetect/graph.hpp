// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "corrdetect/node_set.hpp"

namespace corrdetect {

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class GraphKind { Undirected, Directed };

/// Immutable auditing network in compressed adjacency form.
///
/// Node ids are dense in [0, universe()). A graph produced by induced_remove()
/// keeps the original id space; removed ids are simply absent from vertices()
/// and carry no edges. Adjacency lists are sorted ascending.
///
/// Every ordered audit pair (u, v) with v in N(u) owns one "slot": an index
/// into the out-adjacency array. Report matrices are indexed by slot.
class Graph {
public:
  Graph() = default;

  /// Undirected graph on n nodes. Throws UsageError on self-loops,
  /// duplicate edges, or out-of-range endpoints.
  static Graph undirected(std::size_t n, std::span<const Edge> edges);
  /// Directed graph on n nodes with arcs u -> v.
  static Graph directed(std::size_t n, std::span<const Edge> arcs);

  GraphKind kind() const noexcept { return kind_; }
  bool is_directed() const noexcept { return kind_ == GraphKind::Directed; }

  std::size_t universe() const noexcept { return n_; }
  const NodeSet& vertices() const noexcept { return present_; }
  std::size_t order() const noexcept { return present_.size(); }
  bool has_vertex(NodeId v) const noexcept { return present_.contains(v); }

  /// Undirected edges or directed arcs.
  std::size_t edge_count() const noexcept {
    return is_directed() ? out_adj_.size() : out_adj_.size() / 2;
  }

  /// N(u): all neighbors (undirected) or outgoing neighbors (directed).
  std::span<const NodeId> out(NodeId u) const noexcept {
    return {out_adj_.data() + out_off_[u], out_adj_.data() + out_off_[u + 1]};
  }
  /// Nodes that audit u. Same as out() for undirected graphs.
  std::span<const NodeId> in(NodeId u) const noexcept {
    if (!is_directed()) return out(u);
    return {in_adj_.data() + in_off_[u], in_adj_.data() + in_off_[u + 1]};
  }
  std::size_t degree(NodeId u) const noexcept { return out_off_[u + 1] - out_off_[u]; }

  bool has_arc(NodeId u, NodeId v) const noexcept { return slot(u, v).has_value(); }

  std::size_t slot_count() const noexcept { return out_adj_.size(); }
  std::size_t slot_begin(NodeId u) const noexcept { return out_off_[u]; }
  std::size_t slot_end(NodeId u) const noexcept { return out_off_[u + 1]; }
  NodeId slot_target(std::size_t s) const noexcept { return out_adj_[s]; }
  std::optional<std::size_t> slot(NodeId u, NodeId v) const noexcept;
  /// Slot of (v, u) for the slot of (u, v). Undirected graphs only.
  std::size_t reverse_slot(std::size_t s) const noexcept { return rev_[s]; }

  /// Edges in lexicographic order; undirected edges are reported with u < v.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b);

private:
  static Graph build(GraphKind kind, std::size_t n, std::span<const Edge> arcs);

  GraphKind kind_ = GraphKind::Undirected;
  std::size_t n_ = 0;
  NodeSet present_;
  std::vector<std::size_t> out_off_{0};
  std::vector<NodeId> out_adj_;
  std::vector<std::size_t> in_off_;
  std::vector<NodeId> in_adj_;
  std::vector<std::size_t> rev_;

  friend Graph induced_remove(const Graph& g, const NodeSet& removed);
};

/// N(u) as a set. Throws UsageError when u is out of range.
NodeSet neighbors(const Graph& g, NodeId u);

/// Connected components of an undirected graph, ordered by smallest member.
std::vector<NodeSet> connected_components(const Graph& g);

/// Sizes of the components of g minus `removed`, largest first.
std::vector<std::size_t> component_sizes(const Graph& g, const NodeSet& removed);

/// R(v): every s with a directed path s -> ... -> v, including v itself.
/// On an undirected graph this is the component of v.
NodeSet reach_set(const Graph& g, NodeId v);

/// Subgraph on vertices() \ removed. Ids are preserved.
Graph induced_remove(const Graph& g, const NodeSet& removed);

/// Directed graph with arcs u->v and v->u for every undirected edge {u,v}.
Graph symmetrize(const Graph& g);

/// Undirected graph with an edge wherever either arc exists.
Graph underlying(const Graph& d);

/// Disjoint union; nodes of b are relabeled to a.universe() + id.
Graph disjoint_union(const Graph& a, const Graph& b);

/// Isomorphic copy numbered in BFS discovery order (undirected sense of
/// out-edges). Needs dense ids.
Graph bfs_relabel(const Graph& g);

}  // namespace corrdetect
