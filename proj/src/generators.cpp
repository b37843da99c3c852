// SPDX-License-Identifier: Apache-2.0
#include "corrdetect/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "corrdetect/error.hpp"

namespace corrdetect {
namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

std::size_t as_count(double x, const char* what) {
  require(x >= 0 && std::floor(x) == x && x < 1e9,
          std::string(what) + " must be a non-negative integer");
  return static_cast<std::size_t>(x);
}

}  // namespace

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

Graph star(std::size_t n) {
  require(n >= 1, "star needs n >= 1");
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) e.push_back({0, v});
  return Graph::undirected(n, e);
}

Graph complete(std::size_t n) {
  require(n >= 1, "complete needs n >= 1");
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.push_back({u, v});
  return Graph::undirected(n, e);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  require(a >= 1 && b >= 1, "complete_bipartite needs both sides >= 1");
  std::vector<Edge> e;
  for (NodeId u = 0; u < a; ++u)
    for (std::size_t v = a; v < a + b; ++v) e.push_back({u, static_cast<NodeId>(v)});
  return Graph::undirected(a + b, e);
}

Graph cycle(std::size_t n) {
  require(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u) e.push_back({u, static_cast<NodeId>((u + 1) % n)});
  return Graph::undirected(n, e);
}

Graph path(std::size_t n) {
  require(n >= 1, "path needs n >= 1");
  std::vector<Edge> e;
  for (NodeId u = 0; u + 1 < n; ++u) e.push_back({u, u + 1});
  return Graph::undirected(n, e);
}

Graph grid(std::size_t rows, std::size_t cols) {
  require(rows >= 1 && cols >= 1, "grid needs positive dimensions");
  std::vector<Edge> e;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      auto id = static_cast<NodeId>(r * cols + c);
      if (c + 1 < cols) e.push_back({id, id + 1});
      if (r + 1 < rows) e.push_back({id, static_cast<NodeId>(id + cols)});
    }
  return Graph::undirected(rows * cols, e);
}

Graph disjoint_cliques(std::size_t count, std::size_t size) {
  require(count >= 1 && size >= 1, "disjoint_cliques needs count, size >= 1");
  std::vector<Edge> e;
  for (std::size_t c = 0; c < count; ++c) {
    auto base = static_cast<NodeId>(c * size);
    for (NodeId u = 0; u < size; ++u)
      for (NodeId v = u + 1; v < size; ++v) e.push_back({base + u, base + v});
  }
  return Graph::undirected(count * size, e);
}

Graph circulant(std::size_t n, std::span<const std::size_t> offsets) {
  require(n >= 1, "circulant needs n >= 1");
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> e;
  for (std::size_t o : offsets) {
    require(o >= 1 && o < n, "circulant offsets must lie in [1, n)");
    for (NodeId u = 0; u < n; ++u) {
      auto v = static_cast<NodeId>((u + o) % n);
      auto a = std::min(u, v), b = std::max(u, v);
      if (seen.insert((std::uint64_t{a} << 32) | b).second) e.push_back({a, b});
    }
  }
  return Graph::undirected(n, e);
}

Graph random_d_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  require(n >= 1 && d < n, "random_d_regular needs d < n");
  require((n * d) % 2 == 0, "random_d_regular needs n*d even");
  std::mt19937_64 rng(seed);
  // Pairing model that only ever joins suitable point pairs; restart when stuck.
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<NodeId> points;
    for (NodeId v = 0; v < n; ++v)
      for (std::size_t i = 0; i < d; ++i) points.push_back(v);
    std::unordered_set<std::uint64_t> used;
    std::vector<Edge> e;
    auto key = [](NodeId a, NodeId b) {
      if (a > b) std::swap(a, b);
      return (std::uint64_t{a} << 32) | b;
    };
    bool stuck = false;
    while (!points.empty() && !stuck) {
      bool paired = false;
      for (int tries = 0; tries < 64 && !paired; ++tries) {
        auto i = uniform_below(rng, points.size());
        auto j = uniform_below(rng, points.size());
        NodeId a = points[i], b = points[j];
        if (i == j || a == b || used.count(key(a, b))) continue;
        used.insert(key(a, b));
        e.push_back({std::min(a, b), std::max(a, b)});
        if (i < j) std::swap(i, j);
        points[i] = points.back();
        points.pop_back();
        points[j] = points.back();
        points.pop_back();
        paired = true;
      }
      if (!paired) {
        stuck = true;
        for (std::size_t i = 0; i < points.size() && stuck; ++i)
          for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] != points[j] && !used.count(key(points[i], points[j]))) {
              stuck = false;
              break;
            }
      }
    }
    if (!stuck) return Graph::undirected(n, e);
  }
  throw UsageError("random_d_regular failed to find a simple pairing");
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  require(n >= 1 && p >= 0 && p <= 1, "erdos_renyi needs n >= 1 and p in [0,1]");
  std::mt19937_64 rng(seed);
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) e.push_back({u, v});
  return Graph::undirected(n, e);
}

Graph gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  require(n >= 1 && m <= n * (n - 1) / 2, "gnm needs m <= n(n-1)/2");
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> used;
  used.reserve(m * 2);
  std::vector<Edge> e;
  e.reserve(m);
  while (e.size() < m) {
    auto a = static_cast<NodeId>(uniform_below(rng, n));
    auto b = static_cast<NodeId>(uniform_below(rng, n));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (used.insert((std::uint64_t{a} << 32) | b).second) e.push_back({a, b});
  }
  return Graph::undirected(n, e);
}

Graph random_digraph(std::size_t n, double p, std::uint64_t seed) {
  require(n >= 1 && p >= 0 && p <= 1, "random_digraph needs n >= 1 and p in [0,1]");
  std::mt19937_64 rng(seed);
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v && static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) e.push_back({u, v});
  return Graph::directed(n, e);
}

Graph planted_regular(std::size_t parts, std::size_t size, std::size_t d) {
  require(parts >= 3, "planted_regular needs at least 3 parts");
  require(d >= 2 && d % 2 == 0, "planted_regular needs an even degree >= 2");
  require(size >= d - 1, "planted_regular needs part size >= d-1");
  std::vector<Edge> e;
  const std::size_t half = (d - 2) / 2;
  for (std::size_t p = 0; p < parts; ++p) {
    auto base = static_cast<NodeId>(p * size);
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t o = 1; o <= half; ++o)
      for (NodeId j = 0; j < size; ++j) {
        auto a = base + j, b = base + static_cast<NodeId>((j + o) % size);
        if (a > b) std::swap(a, b);
        if (seen.insert((std::uint64_t{a} << 32) | b).second) e.push_back({a, b});
      }
    auto next = static_cast<NodeId>(((p + 1) % parts) * size);
    for (NodeId j = 0; j < size; ++j)
      e.push_back({std::min(base + j, next + j), std::max(base + j, next + j)});
  }
  Graph g = Graph::undirected(parts * size, e);
  for (NodeId v = 0; v < g.universe(); ++v)
    require(g.degree(v) == d, "planted_regular: part size too small for degree");
  return g;
}

Graph generate(std::string_view kind, std::span<const double> params, std::uint64_t seed) {
  auto need = [&](std::size_t count) {
    require(params.size() == count, std::string(kind) + " takes " + std::to_string(count) +
                                         " parameter(s), got " + std::to_string(params.size()));
  };
  auto arg = [&](std::size_t i) { return as_count(params[i], "parameter"); };
  if (kind == "star") return need(1), star(arg(0));
  if (kind == "complete") return need(1), complete(arg(0));
  if (kind == "complete_bipartite") return need(2), complete_bipartite(arg(0), arg(1));
  if (kind == "cycle") return need(1), cycle(arg(0));
  if (kind == "path") return need(1), path(arg(0));
  if (kind == "grid") return need(2), grid(arg(0), arg(1));
  if (kind == "disjoint_cliques") return need(2), disjoint_cliques(arg(0), arg(1));
  if (kind == "random_d_regular") return need(2), random_d_regular(arg(0), arg(1), seed);
  if (kind == "erdos_renyi") return need(2), erdos_renyi(arg(0), params[1], seed);
  if (kind == "gnm") return need(2), gnm(arg(0), arg(1), seed);
  if (kind == "random_digraph") return need(2), random_digraph(arg(0), params[1], seed);
  if (kind == "planted_regular") return need(3), planted_regular(arg(0), arg(1), arg(2));
  if (kind == "circulant") {
    require(!params.empty(), "circulant takes n followed by offsets");
    std::vector<std::size_t> offsets;
    for (std::size_t i = 1; i < params.size(); ++i) offsets.push_back(arg(i));
    return circulant(arg(0), offsets);
  }
  throw UsageError("unknown graph kind '" + std::string(kind) + "'");
}

}  // namespace corrdetect
