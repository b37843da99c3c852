// SPDX-License-Identifier: Apache-2.0
#include "corrdetect/reductions.hpp"

#include <algorithm>
#include <numeric>

#include "corrdetect/error.hpp"
#include "corrdetect/generators.hpp"

namespace corrdetect {

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t d = std::gcd(num, den);
  return {num / d, den / d};
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

std::size_t regular_degree(const Graph& g) {
  if (g.is_directed()) throw UsageError("regular graph must be undirected");
  std::size_t d = 0;
  bool first = true;
  for (NodeId v : g.vertices()) {
    if (first) {
      d = g.degree(v);
      first = false;
    } else if (g.degree(v) != d) {
      throw UsageError("graph is not regular");
    }
  }
  return d;
}

Rational expansion(const Graph& g, const NodeSet& s) {
  const std::size_t d = regular_degree(g);
  if (d == 0) throw UsageError("expansion needs degree >= 1");
  if (s.universe() != g.universe() || !s.is_subset_of(g.vertices()))
    throw UsageError("expansion: S is not a subset of V");
  if (s.empty() || s.size() == g.order()) throw UsageError("expansion: S must be a proper nonempty subset");
  std::int64_t crossing = 0;
  for (NodeId u : s)
    for (NodeId v : g.out(u))
      if (!s.contains(v)) ++crossing;
  return Rational::make(crossing, static_cast<std::int64_t>(d * s.size()));
}

AuxGraph sse_auxiliary(const Graph& g) {
  const std::size_t d = regular_degree(g);
  if (d == 0 || d % 2 != 0) throw UsageError("auxiliary graph needs an even degree >= 2");
  if (g.order() != g.universe()) throw UsageError("auxiliary graph needs dense ids");
  AuxGraph aux;
  aux.source = g;
  aux.r = d / 2;
  aux.source_edges = g.edges();
  std::vector<Edge> edges;
  edges.reserve(aux.source_edges.size() * 2 * aux.r);
  for (std::size_t e = 0; e < aux.source_edges.size(); ++e)
    for (NodeId end : {aux.source_edges[e].u, aux.source_edges[e].v})
      for (std::size_t j = 0; j < aux.r; ++j) edges.push_back({aux.copy_id(end, j), aux.edge_id(e)});
  aux.graph = Graph::undirected(aux.r * g.universe() + aux.source_edges.size(), edges);
  return aux;
}

PartitionCertificate make_partition(const Graph& g, std::vector<NodeSet> parts) {
  if (parts.empty()) throw UsageError("partition needs at least one part");
  NodeSet seen(g.universe());
  for (const NodeSet& p : parts) {
    if (p.universe() != g.universe() || p.size() != parts.front().size() || p.empty())
      throw UsageError("partition parts must be nonempty and equi-sized");
    if (p.intersects(seen)) throw UsageError("partition parts overlap");
    seen |= p;
  }
  if (!(seen == g.vertices())) throw UsageError("partition does not cover V");
  PartitionCertificate cert;
  for (const NodeSet& p : parts)
    cert.expansions.push_back(p.size() == g.order() ? Rational{0, 1} : expansion(g, p));
  cert.parts = std::move(parts);
  return cert;
}

AttackPlan yes_case_attack(const AuxGraph& aux, const PartitionCertificate& cert) {
  const Graph& src = aux.source;
  const std::size_t q = cert.parts.size();
  if (q == 0 || cert.expansions.size() != q) throw UsageError("invalid partition certificate");
  make_partition(src, cert.parts);

  std::vector<std::size_t> part_of(src.universe(), 0);
  for (std::size_t i = 0; i < q; ++i)
    for (NodeId v : cert.parts[i]) part_of[v] = i;

  const std::size_t n_aux = aux.graph.universe();
  NodeSet crossing(n_aux);
  std::vector<std::vector<NodeId>> alt(q);
  for (std::size_t e = 0; e < aux.source_edges.size(); ++e) {
    const Edge& ed = aux.source_edges[e];
    if (part_of[ed.u] == part_of[ed.v]) {
      alt[part_of[ed.u]].push_back(aux.edge_id(e));
    } else {
      crossing.insert(aux.edge_id(e));
    }
  }
  for (std::size_t i = 0; i < q; ++i)
    for (NodeId v : cert.parts[i])
      for (std::size_t j = 0; j < aux.r; ++j) alt[i].push_back(aux.copy_id(v, j));

  const std::size_t chosen = 0;

  AttackPlan plan;
  plan.construction = Construction::YesCaseAttack;
  plan.core = crossing;
  const NodeSet block = NodeSet::from_ids(n_aux, alt[chosen]);
  plan.bad = crossing | block;
  for (NodeId u : crossing)
    for (NodeId v : aux.graph.out(u)) plan.claims.push_back({u, v, Verdict::Bad});
  for (NodeId u : block)
    for (NodeId v : aux.graph.out(u))
      plan.claims.push_back({u, v, crossing.contains(v) ? Verdict::Bad : Verdict::Good});
  for (auto& a : alt) std::sort(a.begin(), a.end());
  plan.alternatives = std::move(alt);
  plan.budget_used = plan.bad.size();
  plan.degenerate = 2 * plan.budget_used >= aux.graph.order();
  return plan;
}

std::size_t append_size(std::size_t n, std::size_t p, std::size_t q) {
  if (q == 0 || 2 * p < q || p >= q) throw UsageError("clique append needs 1/2 <= p/q < 1");
  if ((p * n) % (q - p) != 0)
    throw UsageError("clique append: h = " + std::to_string(p) + "*" + std::to_string(n) + "/" +
                     std::to_string(q - p) + " is not an integer");
  const std::size_t h = p * n / (q - p);
  if (h < 1) throw UsageError("clique append: h must be >= 1");
  return h;
}

Graph clique_append(const Graph& g, std::size_t p, std::size_t q) {
  if (g.is_directed()) throw UsageError("clique append needs an undirected graph");
  return disjoint_union(g, complete(append_size(g.order(), p, q)));
}

NpGadget np_gadget(const Graph& g, std::size_t m, std::size_t n, std::size_t c) {
  if (g.is_directed()) throw UsageError("np gadget needs an undirected graph");
  const std::size_t big_n = g.order();
  if (g.order() != g.universe()) throw UsageError("np gadget needs dense ids");
  if (m < 1 || m >= big_n) throw UsageError("np gadget needs 1 <= M < N");
  if (n <= big_n) throw UsageError("np gadget needs n > N");
  if (c < 1) throw UsageError("np gadget needs c >= 1");

  std::vector<Edge> edges = g.edges();
  NodeId next = static_cast<NodeId>(big_n);
  auto add_clique = [&edges](NodeId first, std::size_t size) {
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = a + 1; b < size; ++b)
        edges.push_back({static_cast<NodeId>(first + a), static_cast<NodeId>(first + b)});
  };
  for (std::size_t i = 0; i < n * n; ++i) {
    add_clique(next, m);
    next += static_cast<NodeId>(m);
  }
  NpGadget out;
  out.base_nodes = next;
  out.center.resize(out.base_nodes);
  std::iota(out.center.begin(), out.center.end(), NodeId{0});
  for (NodeId v = 0; v < out.base_nodes; ++v)
    for (std::size_t j = 0; j < c; ++j) {
      add_clique(next, n - 1);
      for (std::size_t a = 0; a < n - 1; ++a) {
        edges.push_back({v, static_cast<NodeId>(next + a)});
        out.center.push_back(v);
      }
      next += static_cast<NodeId>(n - 1);
    }
  out.graph = Graph::undirected(next, edges);
  out.node_count = out.graph.order();
  out.edge_count = out.graph.edge_count();
  return out;
}

NodeSet center_exchange(const NpGadget& gadget, const NodeSet& sep) {
  if (sep.universe() != gadget.graph.universe()) throw UsageError("separator has the wrong universe");
  NodeSet out(sep.universe());
  for (NodeId v : sep) out.insert(gadget.center[v]);
  return out;
}

}  // namespace corrdetect
