// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "corrdetect/detection.hpp"
#include "corrdetect/generators.hpp"
#include "corrdetect/oracle.hpp"

using namespace corrdetect;
namespace brute = corrdetect::testing;

namespace {

using Pair = std::pair<NodeId, NodeId>;

Scenario p4_attack() { return make_scenario(path(4), NodeSet(4, {1}), {}, 1); }

// Bad nodes among the removed endpoints.
std::size_t bad_removed(const Scenario& s, const DetectionOutcome& out) {
  NodeSet removed(s.graph.universe());
  for (auto [u, v] : out.removed_pairs) {
    removed.insert(u);
    removed.insert(v);
  }
  return (removed & s.bad).size();
}

}  // namespace

TEST(DetectOne, AllTruthfulDeclaresLargestComponent) {
  std::vector<Edge> e{{0, 1}, {2, 3}, {3, 4}};
  const Graph g = Graph::undirected(5, e);
  const auto out = detect_one_undirected(g, ReportMatrix(g, Verdict::Good), {.budget = 0});
  EXPECT_EQ(out.rounds_removed, 0u);
  EXPECT_EQ(out.declared_good.to_vector(), (std::vector<NodeId>{2, 3, 4}));
  EXPECT_TRUE(out.certified);
}

TEST(DetectOne, PathWithOneLiar) {
  const Scenario s = p4_attack();
  const auto out = detect_one_undirected(s.graph, s.reports, {.budget = 1});
  EXPECT_EQ(out.removed_pairs, (std::vector<Pair>{{0, 1}}));
  EXPECT_EQ(out.rounds_removed, 1u);
  EXPECT_EQ(out.declared_good.to_vector(), (std::vector<NodeId>{2, 3}));
  EXPECT_EQ(out.declared_score, 2u);
  EXPECT_TRUE(out.certified);
  EXPECT_TRUE(certify(out, 1));
}

TEST(DetectOne, StarAttackIsNotCertifiable) {
  const Scenario s = make_scenario(star(5), NodeSet(5, {0, 1}), {}, 2);
  const auto out = detect_one_undirected(s.graph, s.reports, {.budget = 2});
  EXPECT_EQ(out.declared_good.size(), 1u);
  EXPECT_EQ(out.declared_score, 1u);
  EXPECT_FALSE(out.certified);
}

TEST(DetectOne, EmptyRemainderIsUncertified) {
  const Graph k2 = complete(2);
  const Scenario s = make_scenario(k2, NodeSet(2, {0}), {}, 1);
  const auto out = detect_one_undirected(s.graph, s.reports, {.budget = 1});
  EXPECT_TRUE(out.declared_good.empty());
  EXPECT_FALSE(out.complete);
  EXPECT_FALSE(out.certified);
}

TEST(DetectDirected, PathAndArcless) {
  std::vector<Edge> a{{0, 1}, {1, 2}};
  const Graph d = Graph::directed(3, a);
  const auto out = detect_one_directed(d, ReportMatrix(d, Verdict::Good));
  EXPECT_EQ(out.declared_good.to_vector(), (std::vector<NodeId>{2}));
  EXPECT_EQ(out.declared_score, 3u);

  const Graph empty = Graph::directed(4, {});
  const auto e = detect_one_directed(empty, ReportMatrix(empty, Verdict::Good));
  EXPECT_EQ(e.declared_good.to_vector(), (std::vector<NodeId>{0}));
  EXPECT_EQ(e.declared_score, 1u);
}

TEST(DetectDirected, SilentCorruptCycle) {
  std::vector<Edge> a{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
  const Graph d = Graph::directed(6, a);
  const std::vector<Claim> c{{0, 1, Verdict::Good}, {1, 2, Verdict::Good}, {2, 0, Verdict::Good}};
  const Scenario s = make_scenario(d, NodeSet(6, {0, 1, 2}), c, 3);
  const auto out = detect_one_directed(d, s.reports, {.budget = 3});
  EXPECT_EQ(out.rounds_removed, 0u);
  EXPECT_EQ(out.declared_score, 3u);
  EXPECT_EQ(out.declared_good.size(), 1u);
  EXPECT_FALSE(out.certified);
}

TEST(DetectMany, Examples) {
  const Graph two = disjoint_cliques(2, 3);
  const auto both = detect_many(two, ReportMatrix(two, Verdict::Good), 4);
  EXPECT_EQ(both.declared_good.size(), 6u);
  EXPECT_TRUE(both.complete);

  const Scenario s = p4_attack();
  const auto p = detect_many(s.graph, s.reports, 2, {.budget = 1});
  EXPECT_EQ(p.declared_good.to_vector(), (std::vector<NodeId>{2, 3}));
  EXPECT_TRUE(p.certified);

  const auto short_of = detect_many(s.graph, s.reports, 3, {.budget = 1});
  EXPECT_EQ(short_of.declared_good.size(), 2u);
  EXPECT_FALSE(short_of.complete);
  EXPECT_FALSE(short_of.certified);
}

TEST(DetectMany, WantOneMatchesDetectOne) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = erdos_renyi(12, 0.25, seed);
    std::mt19937_64 rng(seed);
    const NodeSet bad = NodeSet::from_mask(12, rng() & rng() & 0xfff);
    const auto claims = brute::claims_from_bits(g, brute::adversary_slots(g, bad), rng());
    const Scenario s = make_scenario(g, bad, claims, bad.size());
    EXPECT_EQ(detect_many(g, s.reports, 1).declared_good,
              detect_one_undirected(g, s.reports).declared_good);
  }
}

TEST(Detection, StepOneBound) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(seed);
    const Graph g = erdos_renyi(14, 0.3, seed);
    const Graph d = random_digraph(14, 0.3, seed);
    const NodeSet bad = NodeSet::from_mask(14, rng() & rng() & 0x3fff);
    for (const Graph* h : {&g, &d}) {
      const auto claims = brute::claims_from_bits(*h, brute::adversary_slots(*h, bad), rng());
      const Scenario s = make_scenario(*h, bad, claims, bad.size());
      const auto out = h->is_directed() ? detect_one_directed(*h, s.reports)
                                        : detect_one_undirected(*h, s.reports);
      EXPECT_EQ(out.rounds_removed, out.removed_pairs.size());
      EXPECT_GE(bad_removed(s, out), out.rounds_removed);
      for (NodeId v : out.declared_good) {
        for (auto [a, b] : out.removed_pairs) EXPECT_TRUE(v != a && v != b);
      }
    }
  }
}

TEST(Detection, GuaranteeHoldsForAnyRemovalOrder) {
  std::size_t runs = 0;
  for (std::size_t n = 3; n <= 6; ++n)
    for (const Graph& g : brute::connected_graphs(n)) {
      const std::size_t m = exact_m(g);
      const std::size_t b = m / 2;
      if (b == 0) continue;
      brute::for_each_subset(n, b, [&](const NodeSet& bad) {
        if (bad.size() != b) return;
        brute::for_each_claims(g, bad, 8, 6, n, [&](const std::vector<Claim>& claims) {
          const Scenario s = make_scenario(g, bad, claims, b);
          for (std::uint64_t order = 0; order < 20; ++order) {
            const auto out = detect_one_undirected(g, s.reports, {.budget = b, .shuffle_seed = order});
            ASSERT_FALSE(out.declared_good.empty());
            ASSERT_FALSE(out.declared_good.intersects(bad));
            ++runs;
          }
        });
      });
    }
  EXPECT_GT(runs, 1000u);
}
