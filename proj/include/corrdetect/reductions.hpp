// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corrdetect/adversary.hpp"

namespace corrdetect {

/// Exact fraction in lowest terms, den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  static Rational make(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
};

/// Common degree of a regular graph; throws UsageError otherwise.
std::size_t regular_degree(const Graph& g);

/// Φ(S) = |E(S, V \ S)| / (d |S|). Throws UsageError unless g is d-regular
/// with d >= 1 and S is a proper nonempty subset.
Rational expansion(const Graph& g, const NodeSet& s);

/// Bipartite auxiliary graph: r = d/2 copies of every source vertex and one
/// vertex per source edge. Copy j of v is node v*r + j; edge e (index in
/// source.edges()) is node r*n + e.
struct AuxGraph {
  Graph graph;
  Graph source;
  std::size_t r = 0;
  std::vector<Edge> source_edges;

  NodeId copy_id(NodeId v, std::size_t j) const { return static_cast<NodeId>(v * r + j); }
  NodeId edge_id(std::size_t e) const { return static_cast<NodeId>(r * source.universe() + e); }
  bool is_edge_vertex(NodeId x) const { return x >= r * source.universe(); }
};

AuxGraph sse_auxiliary(const Graph& g);

/// Equi-sized partition of a regular graph with per-part expansion.
struct PartitionCertificate {
  std::vector<NodeSet> parts;
  std::vector<Rational> expansions;
};

/// Validates the partition and computes the expansions.
PartitionCertificate make_partition(const Graph& g, std::vector<NodeSet> parts);

/// Corrupts every crossing edge-vertex E*, all copies of the first part S*,
/// and that part's adjacent edge-vertices. budget_used = |E*| + |S*| +
/// |N(S*) \ E*|.
AttackPlan yes_case_attack(const AuxGraph& aux, const PartitionCertificate& parts);

/// h = p·n / (q - p); throws UsageError unless 1/2 <= p/q < 1 and h is a
/// positive integer.
std::size_t append_size(std::size_t n, std::size_t p, std::size_t q);

/// G ⊔ K_h with the clique on ids [universe, universe + h).
Graph clique_append(const Graph& g, std::size_t p, std::size_t q);

/// G' = G ⊔ (n² disjoint M-cliques); then c disjoint (n-1)-cliques attached
/// to every vertex of G', each clique node adjacent to its center.
struct NpGadget {
  Graph graph;
  std::size_t base_nodes = 0;    ///< N + n²M; ids [0, base_nodes)
  std::vector<NodeId> center;    ///< center of each node (itself for base nodes)
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
};

NpGadget np_gadget(const Graph& g, std::size_t m, std::size_t n, std::size_t c);

/// Replaces every attached-clique node of `sep` by that clique's center.
NodeSet center_exchange(const NpGadget& gadget, const NodeSet& sep);

}  // namespace corrdetect
