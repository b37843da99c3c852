// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "corrdetect/scenario.hpp"

namespace corrdetect {

/// Candidate bad sets that one report matrix can explain simultaneously.
struct CompatibleFamily {
  std::vector<NodeSet> members;
  std::size_t anchor = 0;  ///< index of the true bad set
  std::size_t budget = 0;
};

/// True iff every auditor outside bi ∪ bj sees the same verdicts under both
/// hypotheses: u ∉ bi ∪ bj implies (v ∈ bi ⟺ v ∈ bj) for every audit (u, v).
bool compatible(const Graph& g, const NodeSet& bi, const NodeSet& bj);

/// Reports under which every member is a consistent configuration. Auditor u
/// answers as the anchor predicts if u is good there, otherwise as the first
/// member not containing u predicts, otherwise Bad.
/// Throws UsageError for an incompatible family or a member above budget.
ReportMatrix reports_from_family(const Graph& g, const CompatibleFamily& fam);

struct OracleOptions {
  /// Largest accepted order; defaults to 10 (undirected) or 8 (directed).
  std::optional<std::size_t> cap;
  unsigned threads = 1;
  /// Realize the witnessing family and confirm it with guaranteed_good.
  bool cross_validate = true;
};

struct OracleResult {
  std::size_t value = 0;
  std::size_t g = 1;
  CompatibleFamily family;  ///< witness at budget `value`
};

/// Minimum b such that some pairwise compatible family of sets of size <= b
/// covers at least n - g + 1 nodes, together with that family. Equals the
/// minimum budget that makes finding g truthful nodes impossible.
/// Throws CapacityError above the cap, UsageError unless 1 <= g <= n.
OracleResult solve_critical(const Graph& g, std::size_t want, const OracleOptions& opts = {});

/// m(G).
std::size_t exact_m(const Graph& g, const OracleOptions& opts = {});
/// m(G, g).
std::size_t exact_m_g(const Graph& g, std::size_t want, const OracleOptions& opts = {});
/// m(D) for a directed graph.
std::size_t exact_m_directed(const Graph& d, const OracleOptions& opts = {});

}  // namespace corrdetect
