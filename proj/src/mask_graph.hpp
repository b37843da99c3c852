// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "corrdetect/graph.hpp"

namespace corrdetect::detail {

inline constexpr std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

inline int lowest(std::uint64_t m) { return std::countr_zero(m); }

inline int count(std::uint64_t m) { return std::popcount(m); }

/// Up to 64 nodes of a Graph, relabeled 0..n-1 in ascending id order, with
/// adjacency as bit masks.
struct MaskGraph {
  int n = 0;
  bool directed = false;
  std::vector<NodeId> ids;
  std::vector<std::uint64_t> out;
  std::vector<std::uint64_t> in;

  std::uint64_t all() const { return n == 64 ? ~std::uint64_t{0} : bit(n) - 1; }

  std::uint64_t to_local(const NodeSet& s) const {
    std::uint64_t m = 0;
    for (int i = 0; i < n; ++i)
      if (s.contains(ids[i])) m |= bit(i);
    return m;
  }

  NodeSet to_global(std::uint64_t m, std::size_t universe) const {
    NodeSet s(universe);
    for (; m != 0; m &= m - 1) s.insert(ids[lowest(m)]);
    return s;
  }
};

/// `nodes` must be ascending and hold at most 64 ids.
inline MaskGraph make_mask_graph(const Graph& g, const std::vector<NodeId>& nodes) {
  MaskGraph m;
  m.n = static_cast<int>(nodes.size());
  m.directed = g.is_directed();
  m.ids = nodes;
  std::vector<int> pos(g.universe(), -1);
  for (int i = 0; i < m.n; ++i) pos[nodes[i]] = i;
  m.out.assign(m.n, 0);
  m.in.assign(m.n, 0);
  for (int i = 0; i < m.n; ++i)
    for (NodeId v : g.out(nodes[i]))
      if (pos[v] >= 0) {
        m.out[i] |= bit(pos[v]);
        m.in[pos[v]] |= bit(i);
      }
  return m;
}

inline MaskGraph make_mask_graph(const Graph& g) {
  return make_mask_graph(g, g.vertices().to_vector());
}

/// Nodes connected to v inside `alive` (undirected sense for directed graphs).
inline std::uint64_t component_of(const MaskGraph& g, std::uint64_t alive, int v) {
  std::uint64_t comp = bit(v), frontier = comp;
  while (frontier != 0) {
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f != 0; f &= f - 1) {
      const int u = lowest(f);
      next |= g.out[u] | g.in[u];
    }
    next &= alive & ~comp;
    comp |= next;
    frontier = next;
  }
  return comp;
}

/// R(v) inside `alive`.
inline std::uint64_t reach_of(const MaskGraph& g, std::uint64_t alive, int v) {
  std::uint64_t r = bit(v), frontier = r;
  while (frontier != 0) {
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f != 0; f &= f - 1) next |= g.in[lowest(f)];
    next &= alive & ~r;
    r |= next;
    frontier = next;
  }
  return r;
}

}  // namespace corrdetect::detail
