// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "corrdetect/scenario.hpp"
#include "corrdetect/separators.hpp"

namespace corrdetect {

enum class Construction {
  SeparatorAttack,
  DirectedSeparatorAttack,
  GRemainderAttack,
  ApproxAttack,
  CliqueAppendAttack,
  YesCaseAttack,
};

std::string_view construction_name(Construction c);

/// A corrupt-party strategy plus the certificate that it works.
///
/// Certificate: for every part P in `alternatives`, core ∪ P is a
/// configuration of size <= budget_used consistent with the realized
/// reports, and fewer than target_g nodes lie outside core and every part.
/// Such a plan leaves fewer than target_g guaranteed-good nodes.
struct AttackPlan {
  NodeSet bad;
  std::vector<Claim> claims;  ///< from corrupt auditors only
  std::size_t budget_used = 0;
  std::size_t target_g = 1;
  Construction construction = Construction::SeparatorAttack;
  bool degenerate = false;  ///< budget_used >= ceil(n/2)
  NodeSet core;
  std::vector<std::vector<NodeId>> alternatives;
};

/// Scenario with the plan's claims and budget_used as the public budget.
Scenario realize(const Graph& g, const AttackPlan& plan);

/// Checks the plan's certificate against the realized reports in
/// O(|alternatives| * (n + m)).
bool verify_certificate(const Graph& g, const AttackPlan& plan);

/// Corrupts the separator and the largest residual component (ties to the
/// smallest id); budget_used = |S| + largest component <= sep.objective.
AttackPlan separator_attack(const Graph& g, const SeparatorResult& sep);

/// Corrupts the separator and R_H(v*) for a vertex v* of maximum
/// reachability index in H = D - S (ties to the smallest id).
AttackPlan directed_attack(const Graph& d, const SeparatorResult& sep);

/// Corrupts the separator and the largest residual component of size <= k;
/// components above k stay identifiable but total fewer than `want` nodes.
AttackPlan g_remainder_attack(const Graph& g, const SeparatorResult& sep, std::size_t want);

/// The ceil(n/2) smallest ids collude and accuse everyone else.
AttackPlan majority_attack(const Graph& g);

/// The cheaper of separator_attack on approx_min_sum and majority_attack.
AttackPlan approx_attack(const Graph& g, const HeuristicOptions& opts = {});

struct AppendedAttack {
  Graph graph;  ///< G with an h-clique appended
  std::size_t h = 0;
  AttackPlan plan;
};

/// delta = p/q with 1/2 <= delta < 1. Attacks the G part of G ⊔ K_h with
/// h = delta/(1-delta)·|V| and targets g = h + 1. The G part uses the exact
/// min-sum separator when it fits `exact`, the approximate one otherwise.
AppendedAttack clique_append_attack(const Graph& g, std::size_t p, std::size_t q,
                                    const ExactOptions& exact = {});

}  // namespace corrdetect
