// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "corrdetect/scenario.hpp"

namespace corrdetect {

/// Result of one run of a central-agency detector.
struct DetectionOutcome {
  NodeSet declared_good;
  std::size_t rounds_removed = 0;  ///< i: number of removed pairs
  std::vector<std::pair<NodeId, NodeId>> removed_pairs;
  /// Size of the smallest declared component (undirected) or the declared
  /// vertex's reachability index (directed); 0 when nothing was declared.
  std::size_t declared_score = 0;
  /// False whenever fewer nodes than requested were declared.
  bool complete = false;
  bool certified = false;
};

struct DetectOptions {
  /// When set, the outcome is certified against this public budget.
  std::optional<std::size_t> budget;
  /// When set, offending pairs are removed in a seeded random order instead of
  /// lexicographic order.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Pair removal on every edge whose two claims are not both Good, then the
/// largest component of the remainder (ties to the smallest id).
DetectionOutcome detect_one_undirected(const Graph& g, const ReportMatrix& reports,
                                       const DetectOptions& opts = {});

/// Pair removal on every arc claimed Bad, then the remaining vertex with the
/// largest reachability index (ties to the smallest id).
DetectionOutcome detect_one_directed(const Graph& d, const ReportMatrix& reports,
                                     const DetectOptions& opts = {});

/// Pair removal as detect_one_undirected, then components by decreasing size
/// until at least `want` nodes are declared.
DetectionOutcome detect_many(const Graph& g, const ReportMatrix& reports, std::size_t want,
                             const DetectOptions& opts = {});

/// declared_score > budget - rounds_removed (and the outcome is complete).
/// When true, every declared node is truthful.
bool certify(const DetectionOutcome& outcome, std::size_t budget);

}  // namespace corrdetect
