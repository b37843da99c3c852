// SPDX-License-Identifier: Apache-2.0
#include "brute.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace corrdetect::testing {

namespace {

using Code = std::uint64_t;

// Adjacency as an n x n bit matrix, upper triangle packed row-major.
Code encode(std::size_t n, const std::vector<std::uint32_t>& adj, const std::vector<int>& perm) {
  Code code = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      code <<= 1;
      if ((adj[perm[i]] >> perm[j]) & 1U) code |= 1;
    }
  return code;
}

// Minimum encoding over all permutations that list vertices by decreasing
// degree; isomorphic graphs share it.
Code canonical(std::size_t n, const std::vector<std::uint32_t>& adj) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto deg = [&](int v) { return __builtin_popcount(adj[v]); };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return deg(a) > deg(b); });
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && deg(order[j]) == deg(order[i])) ++j;
    blocks.emplace_back(i, j);
    std::sort(order.begin() + static_cast<long>(i), order.begin() + static_cast<long>(j));
    i = j;
  }
  Code best = ~Code{0};
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == blocks.size()) {
      best = std::min(best, encode(n, adj, order));
      return;
    }
    auto first = order.begin() + static_cast<long>(blocks[b].first);
    auto last = order.begin() + static_cast<long>(blocks[b].second);
    do {
      rec(b + 1);
    } while (std::next_permutation(first, last));
  };
  rec(0);
  return best;
}

Graph from_adj(std::size_t n, const std::vector<std::uint32_t>& adj) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((adj[i] >> j) & 1U) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
  return Graph::undirected(n, edges);
}

std::vector<std::uint32_t> to_adj(const Graph& g) {
  std::vector<std::uint32_t> adj(g.universe(), 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1U << e.v;
    adj[e.v] |= 1U << e.u;
  }
  return adj;
}

}  // namespace

const std::vector<Graph>& graphs_up_to_iso(std::size_t n) {
  static std::map<std::size_t, std::vector<Graph>> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  std::vector<Graph> out;
  if (n <= 1) {
    out.push_back(Graph::undirected(n, {}));
  } else {
    // Every graph on n nodes is a graph on n - 1 nodes plus one vertex.
    std::set<Code> seen;
    for (const Graph& base : graphs_up_to_iso(n - 1)) {
      std::vector<std::uint32_t> adj = to_adj(base);
      adj.push_back(0);
      for (std::uint32_t nb = 0; nb < (1U << (n - 1)); ++nb) {
        std::vector<std::uint32_t> a = adj;
        a[n - 1] = nb;
        for (std::size_t v = 0; v + 1 < n; ++v)
          if ((nb >> v) & 1U) a[v] |= 1U << (n - 1);
        if (seen.insert(canonical(n, a)).second) out.push_back(from_adj(n, a));
      }
    }
  }
  return cache[n] = std::move(out);
}

bool is_connected(const Graph& g) {
  return g.order() <= 1 || connected_components(g.is_directed() ? underlying(g) : g).size() == 1;
}

std::vector<Graph> connected_graphs(std::size_t n) {
  std::vector<Graph> out;
  for (const Graph& g : graphs_up_to_iso(n))
    if (is_connected(g)) out.push_back(g);
  return out;
}

Graph random_digraph_seeded(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> arcs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v && coin(rng) < p) arcs.push_back({u, v});
  return Graph::directed(n, arcs);
}

void for_each_subset(std::size_t n, std::size_t max_size, const std::function<void(const NodeSet&)>& f) {
  std::vector<std::uint64_t> masks;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    if (static_cast<std::size_t>(__builtin_popcountll(m)) <= max_size) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](auto a, auto b) { return __builtin_popcountll(a) < __builtin_popcountll(b); });
  for (auto m : masks) f(NodeSet::from_mask(n, m));
}

std::vector<std::size_t> adversary_slots(const Graph& g, const NodeSet& bad) {
  std::vector<std::size_t> slots;
  for (NodeId u : bad)
    for (std::size_t s = g.slot_begin(u); s < g.slot_end(u); ++s) slots.push_back(s);
  return slots;
}

std::vector<Claim> claims_from_bits(const Graph& g, const std::vector<std::size_t>& slots,
                                    std::uint64_t assignment) {
  std::vector<Claim> claims;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const std::size_t s = slots[i];
    NodeId u = 0;
    while (g.slot_end(u) <= s) ++u;
    claims.push_back({u, g.slot_target(s), ((assignment >> i) & 1U) ? Verdict::Bad : Verdict::Good});
  }
  return claims;
}

void for_each_claims(const Graph& g, const NodeSet& bad, unsigned max_bits, std::size_t samples,
                     std::uint64_t seed, const std::function<void(const std::vector<Claim>&)>& f) {
  const auto slots = adversary_slots(g, bad);
  if (slots.size() <= max_bits) {
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << slots.size()); ++a) f(claims_from_bits(g, slots, a));
    return;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    std::vector<Claim> claims = claims_from_bits(g, slots, 0);
    for (auto& c : claims) c.verdict = (rng() & 1U) ? Verdict::Bad : Verdict::Good;
    f(claims);
  }
}

std::size_t brute_m(const Graph& g, std::size_t want) {
  const std::size_t n = g.universe();
  for (std::size_t b = 0; b <= n; ++b) {
    bool found = false;
    for_each_subset(n, b, [&](const NodeSet& bad) {
      if (found) return;
      const auto slots = adversary_slots(g, bad);
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << slots.size()) && !found; ++a) {
        const ReportMatrix r = truthful_fill(g, bad, claims_from_bits(g, slots, a));
        CheckerOptions opts;
        opts.cap = 20;
        if (guaranteed_good(g, r, b, opts).size() < want) found = true;
      }
    });
    if (found) return b;
  }
  return n + 1;
}

std::size_t largest_component(const Graph& g, const NodeSet& removed) {
  std::size_t best = 0;
  std::vector<char> seen(g.universe(), 0);
  for (NodeId s = 0; s < g.universe(); ++s) {
    if (seen[s] || removed.contains(s)) continue;
    std::vector<NodeId> q{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (NodeId v : g.out(q[i]))
        if (!seen[v] && !removed.contains(v)) {
          seen[v] = 1;
          q.push_back(v);
        }
      for (NodeId v : g.in(q[i]))
        if (!seen[v] && !removed.contains(v)) {
          seen[v] = 1;
          q.push_back(v);
        }
    }
    best = std::max(best, q.size());
  }
  return best;
}

namespace {

std::size_t first_size(const Graph& g, const std::function<bool(const NodeSet&)>& ok) {
  std::size_t best = g.universe() + 1;
  for_each_subset(g.universe(), g.universe(), [&](const NodeSet& s) {
    if (s.size() < best && ok(s)) best = s.size();
  });
  return best;
}

// Sizes of components of g - removed (undirected sense).
std::vector<std::size_t> sizes(const Graph& g, const NodeSet& removed) {
  std::vector<std::size_t> out;
  std::vector<char> seen(g.universe(), 0);
  for (NodeId s = 0; s < g.universe(); ++s) {
    if (seen[s] || removed.contains(s)) continue;
    std::vector<NodeId> q{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (NodeId v = 0; v < g.universe(); ++v)
        if (!seen[v] && !removed.contains(v) && (g.has_arc(q[i], v) || g.has_arc(v, q[i]))) {
          seen[v] = 1;
          q.push_back(v);
        }
    out.push_back(q.size());
  }
  return out;
}

// Number of nodes with a path to v avoiding `removed`, by transitive closure.
std::size_t reach_count(const Graph& d, const NodeSet& removed, NodeId v) {
  const std::size_t n = d.universe();
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = 0; b < n; ++b)
      r[a][b] = (a == b) || (!removed.contains(a) && !removed.contains(b) && d.has_arc(a, b));
  for (NodeId m = 0; m < n; ++m)
    if (!removed.contains(m))
      for (NodeId a = 0; a < n; ++a)
        for (NodeId b = 0; b < n; ++b)
          if (r[a][m] && r[m][b]) r[a][b] = 1;
  std::size_t c = 0;
  for (NodeId a = 0; a < n; ++a)
    if (!removed.contains(a) && r[a][v]) ++c;
  return c;
}

}  // namespace

std::size_t brute_separator(const Graph& g, std::size_t k) {
  return first_size(g, [&](const NodeSet& s) {
    for (auto c : sizes(g, s))
      if (c > k) return false;
    return true;
  });
}

std::size_t brute_g_remainder(const Graph& g, std::size_t k, std::size_t want) {
  return first_size(g, [&](const NodeSet& s) {
    std::size_t big = 0;
    for (auto c : sizes(g, s))
      if (c > k) big += c;
    return big < want;
  });
}

std::size_t brute_reach_separator(const Graph& d, std::size_t k) {
  return first_size(d, [&](const NodeSet& s) {
    for (NodeId v = 0; v < d.universe(); ++v)
      if (!s.contains(v) && reach_count(d, s, v) > k) return false;
    return true;
  });
}

std::size_t brute_min_sum(const Graph& g) {
  std::size_t best = g.universe() + 1;
  for (std::size_t k = 1; k <= std::max<std::size_t>(g.universe(), 1); ++k)
    best = std::min(best, brute_separator(g, k) + k);
  return best;
}

std::size_t brute_g_min_sum(const Graph& g, std::size_t want) {
  std::size_t best = g.universe() + 1;
  for (std::size_t k = 1; k <= std::max<std::size_t>(g.universe(), 1); ++k)
    best = std::min(best, brute_g_remainder(g, k, want) + k);
  return best;
}

std::size_t brute_reach_min_sum(const Graph& d) {
  std::size_t best = d.universe() + 1;
  for (std::size_t k = 1; k <= std::max<std::size_t>(d.universe(), 1); ++k)
    best = std::min(best, brute_reach_separator(d, k) + k);
  return best;
}

}  // namespace corrdetect::testing
