// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corrdetect/graph.hpp"

namespace corrdetect {

enum class Verdict : std::uint8_t { Good = 0, Bad = 1 };

/// One auditor's verdict about one of its (out-)neighbors.
struct Claim {
  NodeId auditor = 0;
  NodeId subject = 0;
  Verdict verdict = Verdict::Good;
  friend bool operator==(const Claim&, const Claim&) = default;
};

/// Exactly one verdict per audit slot of a graph (see Graph::slot()).
class ReportMatrix {
public:
  ReportMatrix() = default;
  ReportMatrix(const Graph& g, Verdict fill);

  std::size_t slot_count() const noexcept { return verdicts_.size(); }
  Verdict at(std::size_t slot) const noexcept { return static_cast<Verdict>(verdicts_[slot]); }
  void set_at(std::size_t slot, Verdict v) noexcept { verdicts_[slot] = static_cast<std::uint8_t>(v); }

  /// Throws UsageError when (u, v) is not an audit pair of g.
  Verdict get(const Graph& g, NodeId u, NodeId v) const;
  void set(const Graph& g, NodeId u, NodeId v, Verdict verdict);

  /// Every claim, auditor-major.
  std::vector<Claim> claims(const Graph& g) const;

  friend bool operator==(const ReportMatrix&, const ReportMatrix&) = default;

private:
  std::vector<std::uint8_t> verdicts_;
};

/// One game instance: network, the true corrupt set, all reports, and the
/// publicly known budget.
struct Scenario {
  Graph graph;
  NodeSet bad;
  ReportMatrix reports;
  std::size_t budget = 0;
};

/// Truthful claims for auditors outside `bad`; claims of auditors in `bad`
/// taken from `adversary_claims`, Bad where unspecified.
/// Throws UsageError for a claim from a truthful auditor or a non-audit pair.
ReportMatrix truthful_fill(const Graph& g, const NodeSet& bad,
                           std::span<const Claim> adversary_claims = {});

/// Builds and validates a scenario (|bad| <= budget).
Scenario make_scenario(Graph g, NodeSet bad, std::span<const Claim> adversary_claims,
                       std::size_t budget);

/// Throws UsageError if the scenario invariants do not hold.
void validate(const Scenario& s);

/// Claims made by corrupt auditors only.
std::vector<Claim> adversary_claims(const Scenario& s);

/// |cfg_bad| <= budget and every auditor outside cfg_bad reports exactly
/// cfg_bad among its neighbors.
bool is_consistent(const Graph& g, const ReportMatrix& reports, const NodeSet& cfg_bad,
                   std::size_t budget);

struct CheckerOptions {
  std::size_t cap = 16;  ///< maximum node count accepted
  unsigned threads = 1;
};

/// Nodes that are good in every consistent configuration. Enumerates all
/// configurations of size <= budget; throws CapacityError above opts.cap.
NodeSet guaranteed_good(const Graph& g, const ReportMatrix& reports, std::size_t budget,
                        const CheckerOptions& opts = {});

/// |guaranteed_good| < want.
bool impossible_to_find(const Graph& g, const ReportMatrix& reports, std::size_t budget,
                        std::size_t want, const CheckerOptions& opts = {});

// Scenario file: JSON object with
//   "graph":  graph text (graph_io format)
//   "bad":    [ids]
//   "claims": [[auditor, subject, "G"|"B"], ...]   corrupt auditors only
//   "budget": b
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

}  // namespace corrdetect
