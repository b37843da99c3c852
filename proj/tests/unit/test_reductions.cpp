// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "corrdetect/error.hpp"
#include "corrdetect/generators.hpp"
#include "corrdetect/reductions.hpp"

using namespace corrdetect;
namespace brute = corrdetect::testing;

namespace {

bool bipartite(const Graph& g) {
  std::vector<int> side(g.universe(), -1);
  for (NodeId s : g.vertices()) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<NodeId> stack{s};
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.out(u)) {
        if (side[v] < 0) {
          side[v] = 1 - side[u];
          stack.push_back(v);
        } else if (side[v] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<NodeSet> blocks(std::size_t parts, std::size_t size) {
  std::vector<NodeSet> out;
  for (std::size_t i = 0; i < parts; ++i) {
    NodeSet b(parts * size);
    for (std::size_t j = 0; j < size; ++j) b.insert(static_cast<NodeId>(i * size + j));
    out.push_back(b);
  }
  return out;
}

}  // namespace

TEST(Rational, Basics) {
  EXPECT_EQ(Rational::make(4, 6), (Rational{2, 3}));
  EXPECT_EQ(Rational::make(0, 5), (Rational{0, 1}));
  EXPECT_EQ(Rational::make(3, -9), (Rational{-1, 3}));
  EXPECT_TRUE(Rational::make(1, 3) < Rational::make(1, 2));
  EXPECT_EQ(Rational::make(6, 4).to_string(), "3/2");
  EXPECT_THROW(Rational::make(1, 0), UsageError);
}

TEST(Expansion, Examples) {
  EXPECT_EQ(expansion(complete(4), NodeSet(4, {2})), (Rational{1, 1}));
  EXPECT_EQ(expansion(disjoint_cliques(2, 3), NodeSet(6, {0, 1, 2})), (Rational{0, 1}));
  EXPECT_EQ(expansion(cycle(6), NodeSet(6, {0, 1, 2})), (Rational{1, 3}));
  EXPECT_THROW(expansion(path(4), NodeSet(4, {0})), UsageError);
  EXPECT_THROW(expansion(cycle(4), NodeSet(4)), UsageError);
  EXPECT_THROW(expansion(cycle(4), NodeSet(4, true)), UsageError);
}

TEST(SseAuxiliary, CompleteGraph) {
  const AuxGraph aux = sse_auxiliary(complete(5));
  EXPECT_EQ(aux.r, 2u);
  EXPECT_EQ(aux.graph.order(), 20u);
  EXPECT_TRUE(bipartite(aux.graph));
  for (NodeId v : aux.graph.vertices()) EXPECT_EQ(aux.graph.degree(v), 4u);
  EXPECT_TRUE(aux.is_edge_vertex(aux.edge_id(0)));
  EXPECT_FALSE(aux.is_edge_vertex(aux.copy_id(4, 1)));
}

TEST(SseAuxiliary, CycleBecomesLongCycle) {
  for (std::size_t n = 3; n <= 9; ++n) {
    const AuxGraph aux = sse_auxiliary(cycle(n));
    EXPECT_EQ(aux.r, 1u);
    EXPECT_EQ(aux.graph.order(), 2 * n);
    EXPECT_EQ(aux.graph.edge_count(), 2 * n);
    EXPECT_EQ(connected_components(aux.graph).size(), 1u);
    for (NodeId v : aux.graph.vertices()) EXPECT_EQ(aux.graph.degree(v), 2u);
  }
}

TEST(SseAuxiliary, Incidence) {
  const Graph g = random_d_regular(12, 4, 7);
  const AuxGraph aux = sse_auxiliary(g);
  ASSERT_EQ(aux.source_edges, g.edges());
  for (std::size_t e = 0; e < aux.source_edges.size(); ++e)
    for (NodeId v = 0; v < 12; ++v)
      for (std::size_t j = 0; j < aux.r; ++j) {
        const bool incident = aux.source_edges[e].u == v || aux.source_edges[e].v == v;
        EXPECT_EQ(aux.graph.has_arc(aux.copy_id(v, j), aux.edge_id(e)), incident);
      }
  EXPECT_THROW(sse_auxiliary(random_d_regular(10, 3, 1)), UsageError);
  EXPECT_THROW(sse_auxiliary(path(4)), UsageError);
}

TEST(Partition, Validation) {
  const Graph g = cycle(6);
  EXPECT_THROW(make_partition(g, {NodeSet(6, {0, 1, 2}), NodeSet(6, {3, 4})}), UsageError);
  EXPECT_THROW(make_partition(g, {NodeSet(6, {0, 1, 2}), NodeSet(6, {2, 3, 4})}), UsageError);
  const auto cert = make_partition(g, {NodeSet(6, {0, 1, 2}), NodeSet(6, {3, 4, 5})});
  EXPECT_EQ(cert.expansions[0], (Rational{1, 3}));
}

TEST(YesCase, DisjointCliques) {
  const Graph src = disjoint_cliques(3, 5);
  const AuxGraph aux = sse_auxiliary(src);
  const AttackPlan p = yes_case_attack(aux, make_partition(src, blocks(3, 5)));
  EXPECT_TRUE(p.core.empty());
  EXPECT_EQ(p.budget_used, aux.r * 5 + 10);
  EXPECT_TRUE(verify_certificate(aux.graph, p));
}

TEST(YesCase, AccountingIdentity) {
  for (std::size_t parts = 3; parts <= 6; ++parts)
    for (std::size_t d : {2u, 4u}) {
      const std::size_t size = 6;
      const Graph src = planted_regular(parts, size, d);
      const AuxGraph aux = sse_auxiliary(src);
      const auto cert = make_partition(src, blocks(parts, size));
      const AttackPlan p = yes_case_attack(aux, cert);
      std::size_t crossing = 0;
      std::size_t inside0 = 0;
      for (const Edge& e : src.edges()) {
        if (e.u / size != e.v / size) ++crossing;
        else if (e.u / size == 0) ++inside0;
      }
      EXPECT_EQ(p.core.size(), crossing);
      EXPECT_EQ(p.budget_used, crossing + aux.r * size + inside0);
      EXPECT_TRUE(verify_certificate(aux.graph, p));
    }
}

TEST(YesCase, CheckerOnTinyInstances) {
  CheckerOptions opts;
  opts.cap = 20;
  const Graph c4 = cycle(4);
  const AuxGraph a4 = sse_auxiliary(c4);
  const AttackPlan p4 = yes_case_attack(a4, make_partition(c4, {NodeSet(4, {0, 1}), NodeSet(4, {2, 3})}));
  EXPECT_EQ(p4.budget_used, 5u);
  EXPECT_TRUE(impossible_to_find(a4.graph, realize(a4.graph, p4).reports, p4.budget_used, 1, opts));

  const Graph two = disjoint_cliques(2, 3);
  const AuxGraph a6 = sse_auxiliary(two);
  const AttackPlan p6 = yes_case_attack(a6, make_partition(two, blocks(2, 3)));
  EXPECT_EQ(p6.budget_used, 6u);
  EXPECT_TRUE(impossible_to_find(a6.graph, realize(a6.graph, p6).reports, p6.budget_used, 1, opts));
}

TEST(CliqueAppend, Sizes) {
  EXPECT_EQ(append_size(4, 1, 2), 4u);
  EXPECT_EQ(append_size(4, 3, 4), 12u);
  EXPECT_THROW(append_size(4, 1, 3), UsageError);
  EXPECT_THROW(append_size(3, 3, 5), UsageError);
  EXPECT_THROW(append_size(3, 1, 1), UsageError);
  for (std::size_t n = 1; n <= 6; ++n) {
    const Graph g = clique_append(path(n), 2, 3);
    const std::size_t h = 2 * n;
    EXPECT_EQ(g.order(), n + h);
    // delta |V'| = h exactly.
    EXPECT_EQ(2 * g.order(), 3 * h);
    EXPECT_EQ(g.edge_count(), n - 1 + h * (h - 1) / 2);
  }
}

TEST(NpGadget, Counts) {
  for (std::size_t m = 1; m <= 2; ++m)
    for (std::size_t n = 4; n <= 5; ++n)
      for (std::size_t c = 1; c <= 2; ++c) {
        const Graph base = path(3);
        const NpGadget g = np_gadget(base, m, n, c);
        const std::size_t b = 3 + n * n * m;
        EXPECT_EQ(g.base_nodes, b);
        EXPECT_EQ(g.node_count, b + b * c * (n - 1));
        EXPECT_EQ(g.graph.order(), g.node_count);
        const std::size_t edges = 2 + n * n * m * (m - 1) / 2 + b * c * ((n - 1) * (n - 2) / 2 + (n - 1));
        EXPECT_EQ(g.edge_count, edges);
        EXPECT_EQ(g.graph.edge_count(), edges);
      }
  EXPECT_THROW(np_gadget(path(3), 3, 4, 1), UsageError);
  EXPECT_THROW(np_gadget(path(3), 2, 3, 1), UsageError);
  EXPECT_THROW(np_gadget(path(3), 2, 4, 0), UsageError);
}

TEST(NpGadget, CenterExchangeNeverHurts) {
  const std::size_t n = 4;
  const NpGadget g = np_gadget(path(3), 2, n, 1);
  std::mt19937_64 rng(11);
  std::size_t tried = 0;
  for (int t = 0; t < 400; ++t) {
    NodeSet sep(g.graph.universe());
    for (NodeId v : g.graph.vertices())
      if (rng() % 6 == 0) sep.insert(v);
    const std::size_t k = brute::largest_component(g.graph, sep);
    if (k < n - 1) continue;
    ++tried;
    const NodeSet moved = center_exchange(g, sep);
    EXPECT_LE(moved.size() + brute::largest_component(g.graph, moved), sep.size() + k);
  }
  EXPECT_GT(tried, 100u);
}

TEST(NpGadget, MinSumArgmin) {
  const std::size_t n = 4, m = 2;
  const NpGadget g = np_gadget(path(3), m, n, 1);
  const SeparatorResult r = min_sum(g.graph);
  EXPECT_EQ(r.k, n * m);
  EXPECT_EQ(r.objective, exact_separator(path(3), m).separator.size() + n * m);
}
