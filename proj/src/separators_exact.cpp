// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <functional>
#include <optional>
#include <string>

#include "corrdetect/error.hpp"
#include "corrdetect/separators.hpp"
#include "mask_graph.hpp"

namespace corrdetect {

using detail::bit;
using detail::count;
using detail::lowest;
using detail::MaskGraph;

bool is_k_separator(const Graph& g, const NodeSet& sep, std::size_t k) {
  auto sizes = component_sizes(g, sep);
  return sizes.empty() || sizes.front() <= k;
}

bool is_g_remainder_separator(const Graph& g, const NodeSet& sep, std::size_t k, std::size_t want) {
  std::size_t big = 0;
  for (auto s : component_sizes(g, sep))
    if (s > k) big += s;
  return big < want;
}

std::vector<std::size_t> reach_profile(const Graph& d, const NodeSet& removed) {
  Graph h = induced_remove(d, removed);
  std::vector<std::size_t> out;
  for (NodeId v : h.vertices()) out.push_back(reach_set(h, v).size());
  std::sort(out.rbegin(), out.rend());
  return out;
}

bool is_reach_separator(const Graph& d, const NodeSet& sep, std::size_t k) {
  auto profile = reach_profile(d, sep);
  return profile.empty() || profile.front() <= k;
}

namespace {

constexpr int kInfeasible = 1 << 20;

// Branch and bound for separator notions with a hitting-set structure: while
// the residual graph is invalid, the finder returns a node set every valid
// extension must intersect. Nodes in `forbidden` may no longer be chosen.
class HittingSearch {
public:
  using Finder = std::function<std::uint64_t(std::uint64_t alive, std::uint64_t forbidden)>;

  HittingSearch(const MaskGraph& g, Finder finder) : g_(g), finder_(std::move(finder)) {}

  /// Minimum solution of size <= limit, if any.
  std::optional<std::uint64_t> solve(int limit) {
    best_size_ = limit + 1;
    found_ = false;
    recurse(0, 0);
    if (!found_) return std::nullopt;
    return best_;
  }

private:
  int packing_bound(std::uint64_t alive, std::uint64_t forbidden) const {
    int lb = 0;
    while (true) {
      const std::uint64_t w = finder_(alive, forbidden);
      if (w == 0) return lb;
      if ((w & ~forbidden) == 0) return kInfeasible;
      ++lb;
      alive &= ~w;
    }
  }

  void recurse(std::uint64_t chosen, std::uint64_t forbidden) {
    const int size = count(chosen);
    if (size >= best_size_) return;
    const std::uint64_t alive = g_.all() & ~chosen;
    const std::uint64_t witness = finder_(alive, forbidden);
    if (witness == 0) {
      best_ = chosen;
      best_size_ = size;
      found_ = true;
      return;
    }
    if ((witness & ~forbidden) == 0) return;
    const int lb = 1 + packing_bound(alive & ~witness, forbidden);
    if (size + lb >= best_size_) return;
    std::uint64_t f = forbidden;
    for (std::uint64_t c = witness & ~forbidden; c != 0; c &= c - 1) {
      const int v = lowest(c);
      recurse(chosen | bit(v), f);
      f |= bit(v);
      if (size + 1 >= best_size_) return;
    }
  }

  const MaskGraph& g_;
  Finder finder_;
  int best_size_ = 0;
  std::uint64_t best_ = 0;
  bool found_ = false;
};

// Grows a connected witness of `need` nodes from `start` inside `region`,
// preferring forbidden nodes (fewer branches) and then high-degree nodes.
std::uint64_t grow_witness(const MaskGraph& g, std::uint64_t region, std::uint64_t forbidden,
                           int start, int need, bool backward) {
  std::uint64_t t = bit(start);
  while (count(t) < need) {
    std::uint64_t frontier = 0;
    for (std::uint64_t f = t; f != 0; f &= f - 1) {
      const int u = lowest(f);
      frontier |= backward ? g.in[u] : g.out[u];
    }
    frontier &= region & ~t;
    if (frontier == 0) break;
    int pick;
    if ((frontier & forbidden) != 0) {
      pick = lowest(frontier & forbidden);
    } else {
      pick = lowest(frontier);
      int best_deg = -1;
      for (std::uint64_t f = frontier; f != 0; f &= f - 1) {
        const int u = lowest(f);
        const int deg = count((backward ? g.in[u] : g.out[u]) & region);
        if (deg > best_deg) {
          best_deg = deg;
          pick = u;
        }
      }
    }
    t |= bit(pick);
  }
  return t;
}

HittingSearch::Finder component_finder(const MaskGraph& g, std::size_t k) {
  const int need = static_cast<int>(k) + 1;
  return [&g, need](std::uint64_t alive, std::uint64_t forbidden) -> std::uint64_t {
    for (std::uint64_t rest = alive; rest != 0;) {
      const std::uint64_t comp = detail::component_of(g, alive, lowest(rest));
      rest &= ~comp;
      if (count(comp) < need) continue;
      int start;
      if ((comp & forbidden) != 0) {
        start = lowest(comp & forbidden);
      } else {
        start = lowest(comp);
        int best_deg = -1;
        for (std::uint64_t c = comp; c != 0; c &= c - 1) {
          const int u = lowest(c);
          if (count(g.out[u] & comp) > best_deg) {
            best_deg = count(g.out[u] & comp);
            start = u;
          }
        }
      }
      return grow_witness(g, comp, forbidden, start, need, false);
    }
    return 0;
  };
}

HittingSearch::Finder reach_finder(const MaskGraph& g, std::size_t k) {
  const int need = static_cast<int>(k) + 1;
  return [&g, need](std::uint64_t alive, std::uint64_t forbidden) -> std::uint64_t {
    for (std::uint64_t rest = alive; rest != 0; rest &= rest - 1) {
      const int v = lowest(rest);
      const std::uint64_t r = detail::reach_of(g, alive, v);
      if (count(r) >= need) return grow_witness(g, r, forbidden, v, need, true);
    }
    return 0;
  };
}

std::vector<NodeSet> weak_components(const Graph& g) {
  return connected_components(g.is_directed() ? underlying(g) : g);
}

// Exact hitting-set separator, solved independently on every weak component
// that violates the bound. nullopt when no solution of size <= limit exists.
std::optional<NodeSet> solve_by_components(const Graph& g, std::size_t k, std::size_t limit,
                                           const ExactOptions& opts, bool reach) {
  NodeSet sep(g.universe());
  std::size_t used = 0;
  for (const NodeSet& comp : weak_components(g)) {
    if (comp.size() <= k) continue;
    const std::size_t cap = std::min<std::size_t>(opts.cap, 64);
    if (comp.size() > cap)
      throw CapacityError("exact separator: component of " + std::to_string(comp.size()) +
                          " nodes exceeds cap " + std::to_string(cap));
    const MaskGraph mg = detail::make_mask_graph(g, comp.to_vector());
    HittingSearch search(mg, reach ? reach_finder(mg, k) : component_finder(mg, k));
    auto local = search.solve(static_cast<int>(limit - used));
    if (!local) return std::nullopt;
    used += static_cast<std::size_t>(count(*local));
    sep |= mg.to_global(*local, g.universe());
  }
  return sep;
}

std::size_t largest_weak_component(const Graph& g) {
  std::size_t best = 0;
  for (const NodeSet& c : weak_components(g)) best = std::max(best, c.size());
  return best;
}

SeparatorResult make_result(const Graph& g, NodeSet sep, std::size_t k, std::size_t want,
                            bool reach) {
  SeparatorResult r;
  r.k = k;
  r.g = want;
  r.objective = sep.size() + k;
  r.component_profile = reach ? reach_profile(g, sep) : component_sizes(g, sep);
  r.separator = std::move(sep);
  return r;
}

void check_k(std::size_t k) {
  if (k < 1) throw UsageError("separator bound k must be >= 1");
}

// Shared argmin loop: solve(k, limit) returns a separator of size <= limit or
// nullopt. k runs upward and only strict improvements replace the incumbent,
// so ties resolve to the smallest k.
template <typename Solve>
std::pair<std::size_t, NodeSet> sweep_min_sum(const Graph& g, std::size_t top, Solve solve) {
  std::size_t best_obj = top + 1;
  std::size_t best_k = top;
  NodeSet best_sep(g.universe());
  for (std::size_t k = 1; k <= top; ++k) {
    if (best_obj < k + 1) break;
    const std::size_t limit = best_obj - k - 1;
    if (auto sep = solve(k, limit)) {
      best_obj = sep->size() + k;
      best_k = k;
      best_sep = std::move(*sep);
    }
  }
  return {best_k, std::move(best_sep)};
}

}  // namespace

SeparatorResult exact_separator(const Graph& g, std::size_t k, const ExactOptions& opts) {
  if (g.is_directed()) throw UsageError("exact_separator needs an undirected graph");
  check_k(k);
  auto sep = solve_by_components(g, k, g.order(), opts, false);
  return make_result(g, std::move(*sep), k, 1, false);
}

SeparatorResult min_sum(const Graph& g, const ExactOptions& opts) {
  if (g.is_directed()) throw UsageError("min_sum needs an undirected graph");
  const std::size_t top = largest_weak_component(g);
  if (top == 0) return make_result(g, NodeSet(g.universe()), 0, 1, false);
  auto [k, sep] = sweep_min_sum(g, top, [&](std::size_t kk, std::size_t limit) {
    return solve_by_components(g, kk, limit, opts, false);
  });
  return make_result(g, std::move(sep), k, 1, false);
}

SeparatorResult exact_reach_separator(const Graph& d, std::size_t k, const ExactOptions& opts) {
  if (!d.is_directed()) throw UsageError("exact_reach_separator needs a directed graph");
  check_k(k);
  auto sep = solve_by_components(d, k, d.order(), opts, true);
  return make_result(d, std::move(*sep), k, 1, true);
}

SeparatorResult reach_min_sum(const Graph& d, const ExactOptions& opts) {
  if (!d.is_directed()) throw UsageError("reach_min_sum needs a directed graph");
  const std::size_t top = largest_weak_component(d);
  if (top == 0) return make_result(d, NodeSet(d.universe()), 0, 1, true);
  auto [k, sep] = sweep_min_sum(d, top, [&](std::size_t kk, std::size_t limit) {
    return solve_by_components(d, kk, limit, opts, true);
  });
  return make_result(d, std::move(sep), k, 1, true);
}

namespace {

// Branch and bound for g-remainder separators. A large residual component is
// either hit (branch over its free nodes) or left intact for good, in which
// case it counts against the remainder allowance.
class RemainderSearch {
public:
  RemainderSearch(const MaskGraph& g, int k, int want) : g_(g), k_(k), want_(want) {}

  std::optional<std::uint64_t> solve(int limit) {
    best_size_ = limit + 1;
    found_ = false;
    recurse(0, 0);
    if (!found_) return std::nullopt;
    return best_;
  }

private:
  void recurse(std::uint64_t chosen, std::uint64_t forbidden) {
    const int size = count(chosen);
    if (size >= best_size_) return;
    const std::uint64_t alive = g_.all() & ~chosen;

    int total = 0, committed = 0;
    std::vector<int> free_sizes;
    std::uint64_t pick = 0;
    int pick_free = 65;
    for (std::uint64_t rest = alive; rest != 0;) {
      const std::uint64_t comp = detail::component_of(g_, alive, lowest(rest));
      rest &= ~comp;
      const int sz = count(comp);
      if (sz <= k_) continue;
      total += sz;
      const int free = count(comp & ~forbidden);
      if (free == 0) {
        committed += sz;
      } else {
        free_sizes.push_back(sz);
        if (free < pick_free) {
          pick_free = free;
          pick = comp;
        }
      }
    }
    if (total < want_) {
      best_ = chosen;
      best_size_ = size;
      found_ = true;
      return;
    }
    if (committed >= want_) return;

    // Leaving the smallest components intact is the cheapest way to fit the
    // allowance; every other large component needs at least one node.
    std::sort(free_sizes.begin(), free_sizes.end());
    int allowance = want_ - 1 - committed;
    int must_hit = 0;
    for (int sz : free_sizes) {
      if (sz <= allowance) allowance -= sz;
      else ++must_hit;
    }
    if (size + must_hit >= best_size_) return;

    if (committed + count(pick) < want_) recurse(chosen, forbidden | pick);
    std::uint64_t f = forbidden;
    for (std::uint64_t c = pick & ~forbidden; c != 0; c &= c - 1) {
      const int v = lowest(c);
      recurse(chosen | bit(v), f);
      f |= bit(v);
      if (size + 1 >= best_size_) return;
    }
  }

  const MaskGraph& g_;
  int k_;
  int want_;
  int best_size_ = 0;
  std::uint64_t best_ = 0;
  bool found_ = false;
};

std::optional<NodeSet> solve_remainder(const Graph& g, const MaskGraph& mg, std::size_t k,
                                       std::size_t want, std::size_t limit) {
  const int w = static_cast<int>(std::min<std::size_t>(want, 65));
  RemainderSearch search(mg, static_cast<int>(std::min<std::size_t>(k, 64)), w);
  auto local = search.solve(static_cast<int>(limit));
  if (!local) return std::nullopt;
  return mg.to_global(*local, g.universe());
}

MaskGraph remainder_mask_graph(const Graph& g, const ExactOptions& opts) {
  if (g.is_directed()) throw UsageError("g-remainder separators need an undirected graph");
  const std::size_t cap = std::min<std::size_t>(opts.cap, 64);
  if (g.order() > cap)
    throw CapacityError("exact g-remainder separator: " + std::to_string(g.order()) +
                        " nodes exceeds cap " + std::to_string(cap));
  return detail::make_mask_graph(g);
}

}  // namespace

SeparatorResult exact_g_remainder(const Graph& g, std::size_t k, std::size_t want,
                                  const ExactOptions& opts) {
  check_k(k);
  if (want < 1) throw UsageError("g-remainder separator needs g >= 1");
  const MaskGraph mg = remainder_mask_graph(g, opts);
  auto sep = solve_remainder(g, mg, k, want, g.order());
  return make_result(g, std::move(*sep), k, want, false);
}

SeparatorResult g_remainder_min_sum(const Graph& g, std::size_t want, const ExactOptions& opts) {
  if (want < 1) throw UsageError("g-remainder separator needs g >= 1");
  const MaskGraph mg = remainder_mask_graph(g, opts);
  const std::size_t top = largest_weak_component(g);
  if (top == 0) return make_result(g, NodeSet(g.universe()), 0, want, false);
  auto [k, sep] = sweep_min_sum(g, top, [&](std::size_t kk, std::size_t limit) {
    return solve_remainder(g, mg, kk, want, limit);
  });
  return make_result(g, std::move(sep), k, want, false);
}

}  // namespace corrdetect
