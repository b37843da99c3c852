// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "corrdetect/graph.hpp"

namespace corrdetect {

/// A separator together with the residual structure it leaves behind.
///
/// For undirected graphs `component_profile` holds the residual component
/// sizes; for reachability separators it holds the residual reachability
/// indices. Both are sorted in decreasing order.
struct SeparatorResult {
  NodeSet separator;
  std::size_t k = 0;
  std::size_t g = 1;
  std::size_t objective = 0;  ///< |separator| + k
  std::vector<std::size_t> component_profile;
};

struct ExactOptions {
  /// Largest connected component (or, for g-remainder separators, the whole
  /// graph) the branch and bound accepts. Hard limit 64.
  std::size_t cap = 24;
};

// Post-hoc validity checks, computed directly on the graph.
bool is_k_separator(const Graph& g, const NodeSet& sep, std::size_t k);
bool is_g_remainder_separator(const Graph& g, const NodeSet& sep, std::size_t k, std::size_t want);
bool is_reach_separator(const Graph& d, const NodeSet& sep, std::size_t k);

/// Reachability indices of d minus `removed`, largest first.
std::vector<std::size_t> reach_profile(const Graph& d, const NodeSet& removed);

/// Minimum k-vertex separator, S_G(k). Throws CapacityError when a component
/// larger than k exceeds opts.cap.
SeparatorResult exact_separator(const Graph& g, std::size_t k, const ExactOptions& opts = {});

/// argmin over k in [1, n] of S_G(k) + k; ties go to the smallest k.
SeparatorResult min_sum(const Graph& g, const ExactOptions& opts = {});

/// Minimum set whose removal leaves components larger than k totalling fewer
/// than `want` nodes, S_G(k, g).
SeparatorResult exact_g_remainder(const Graph& g, std::size_t k, std::size_t want,
                                  const ExactOptions& opts = {});

/// argmin over k of S_G(k, g) + k; ties go to the smallest k.
SeparatorResult g_remainder_min_sum(const Graph& g, std::size_t want, const ExactOptions& opts = {});

/// Minimum k-reachability separator of a directed graph, S_D(k).
SeparatorResult exact_reach_separator(const Graph& d, std::size_t k, const ExactOptions& opts = {});

/// argmin over k of S_D(k) + k; ties go to the smallest k.
SeparatorResult reach_min_sum(const Graph& d, const ExactOptions& opts = {});

struct HeuristicOptions {
  unsigned effort = 4;  ///< seed-pair trials per split
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// A k-vertex separator routine that may overshoot k (bicriteria slack).
using SeparatorHeuristic =
    std::function<NodeSet(const Graph&, std::size_t k, const HeuristicOptions&)>;

/// Default heuristic: split every component larger than k with a minimum
/// vertex cut between BFS-distant seed regions (peeling a maximum-degree
/// vertex when no cut exists), then greedily return separator vertices whose
/// re-insertion keeps every component within k.
NodeSet bisection_peeling(const Graph& g, std::size_t k, const HeuristicOptions& opts);

/// Runs the heuristic and reports the bound it actually achieved: the
/// result's k is the largest residual component size.
SeparatorResult heuristic_separator(const Graph& g, std::size_t k, const HeuristicOptions& opts = {},
                                    const SeparatorHeuristic& heuristic = bisection_peeling);

/// Heuristic separators for k in {1, 2, 4, ..., n}; returns the one with the
/// smallest |B_k| + (largest residual component), ties to the smaller k.
SeparatorResult approx_min_sum(const Graph& g, const HeuristicOptions& opts = {},
                               const SeparatorHeuristic& heuristic = bisection_peeling);

}  // namespace corrdetect
