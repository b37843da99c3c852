// SPDX-License-Identifier: Apache-2.0
#include "corrdetect/scenario.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "corrdetect/error.hpp"
#include "corrdetect/graph_io.hpp"

namespace corrdetect {

ReportMatrix::ReportMatrix(const Graph& g, Verdict fill)
    : verdicts_(g.slot_count(), static_cast<std::uint8_t>(fill)) {}

Verdict ReportMatrix::get(const Graph& g, NodeId u, NodeId v) const {
  auto s = g.slot(u, v);
  if (!s || *s >= verdicts_.size())
    throw UsageError("(" + std::to_string(u) + "," + std::to_string(v) + ") is not an audit pair");
  return at(*s);
}

void ReportMatrix::set(const Graph& g, NodeId u, NodeId v, Verdict verdict) {
  auto s = g.slot(u, v);
  if (!s || *s >= verdicts_.size())
    throw UsageError("(" + std::to_string(u) + "," + std::to_string(v) + ") is not an audit pair");
  set_at(*s, verdict);
}

std::vector<Claim> ReportMatrix::claims(const Graph& g) const {
  std::vector<Claim> out;
  out.reserve(verdicts_.size());
  for (NodeId u = 0; u < g.universe(); ++u)
    for (std::size_t s = g.slot_begin(u); s < g.slot_end(u); ++s)
      out.push_back({u, g.slot_target(s), at(s)});
  return out;
}

ReportMatrix truthful_fill(const Graph& g, const NodeSet& bad,
                           std::span<const Claim> adversary_claims) {
  if (bad.universe() != g.universe()) throw UsageError("bad set has wrong universe");
  if (!bad.is_subset_of(g.vertices())) throw UsageError("bad set is not a subset of V");
  ReportMatrix r(g, Verdict::Good);
  for (NodeId u : g.vertices())
    for (std::size_t s = g.slot_begin(u); s < g.slot_end(u); ++s)
      if (bad.contains(u) || bad.contains(g.slot_target(s))) r.set_at(s, Verdict::Bad);
  for (const Claim& c : adversary_claims) {
    if (!bad.contains(c.auditor))
      throw UsageError("claim from truthful auditor " + std::to_string(c.auditor));
    r.set(g, c.auditor, c.subject, c.verdict);
  }
  return r;
}

void validate(const Scenario& s) {
  const Graph& g = s.graph;
  if (s.bad.universe() != g.universe()) throw UsageError("bad set has wrong universe");
  if (!s.bad.is_subset_of(g.vertices())) throw UsageError("bad set is not a subset of V");
  if (s.reports.slot_count() != g.slot_count()) throw UsageError("report matrix is incomplete");
  if (s.bad.size() > s.budget)
    throw UsageError("|bad| = " + std::to_string(s.bad.size()) + " exceeds budget " +
                     std::to_string(s.budget));
  for (NodeId u : g.vertices()) {
    if (s.bad.contains(u)) continue;
    for (std::size_t k = g.slot_begin(u); k < g.slot_end(u); ++k) {
      const bool says_bad = s.reports.at(k) == Verdict::Bad;
      if (says_bad != s.bad.contains(g.slot_target(k)))
        throw UsageError("truthful auditor " + std::to_string(u) + " misreports " +
                         std::to_string(g.slot_target(k)));
    }
  }
}

Scenario make_scenario(Graph g, NodeSet bad, std::span<const Claim> adversary_claims,
                       std::size_t budget) {
  Scenario s;
  s.reports = truthful_fill(g, bad, adversary_claims);
  s.graph = std::move(g);
  s.bad = std::move(bad);
  s.budget = budget;
  validate(s);
  return s;
}

std::vector<Claim> adversary_claims(const Scenario& s) {
  std::vector<Claim> out;
  for (NodeId u : s.bad)
    for (std::size_t k = s.graph.slot_begin(u); k < s.graph.slot_end(u); ++k)
      out.push_back({u, s.graph.slot_target(k), s.reports.at(k)});
  return out;
}

bool is_consistent(const Graph& g, const ReportMatrix& reports, const NodeSet& cfg_bad,
                   std::size_t budget) {
  if (cfg_bad.size() > budget) return false;
  for (NodeId u : g.vertices()) {
    if (cfg_bad.contains(u)) continue;
    for (std::size_t k = g.slot_begin(u); k < g.slot_end(u); ++k)
      if ((reports.at(k) == Verdict::Bad) != cfg_bad.contains(g.slot_target(k))) return false;
  }
  return true;
}

namespace {

// Configurations as bit masks over compact positions of the present vertices.
struct MaskView {
  std::vector<NodeId> ids;              // position -> node id
  std::vector<std::uint64_t> nbr;       // N(u) over positions
  std::vector<std::uint64_t> says_bad;  // claimed-bad subset of N(u)
};

MaskView make_view(const Graph& g, const ReportMatrix& reports) {
  MaskView m;
  std::vector<int> pos(g.universe(), -1);
  for (NodeId v : g.vertices()) {
    pos[v] = static_cast<int>(m.ids.size());
    m.ids.push_back(v);
  }
  m.nbr.assign(m.ids.size(), 0);
  m.says_bad.assign(m.ids.size(), 0);
  for (std::size_t i = 0; i < m.ids.size(); ++i) {
    NodeId u = m.ids[i];
    for (std::size_t k = g.slot_begin(u); k < g.slot_end(u); ++k) {
      const auto bit = std::uint64_t{1} << pos[g.slot_target(k)];
      m.nbr[i] |= bit;
      if (reports.at(k) == Verdict::Bad) m.says_bad[i] |= bit;
    }
  }
  return m;
}

bool consistent_mask(const MaskView& m, std::uint64_t cfg) {
  for (std::size_t i = 0; i < m.ids.size(); ++i)
    if (((cfg >> i) & 1U) == 0 && (m.nbr[i] & cfg) != m.says_bad[i]) return false;
  return true;
}

// Intersection of complements over all consistent configurations of the given sizes.
std::uint64_t good_over_sizes(const MaskView& m, std::span<const std::size_t> sizes) {
  const std::size_t n = m.ids.size();
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::uint64_t good = all;
  for (std::size_t size : sizes) {
    if (size == 0) {
      if (consistent_mask(m, 0)) good &= all;
      continue;
    }
    // Gosper's hack over all size-element subsets.
    std::uint64_t cfg = (std::uint64_t{1} << size) - 1;
    while (cfg <= all && cfg != 0) {
      if ((good & cfg) != 0 && consistent_mask(m, cfg)) {
        good &= ~cfg;
        if (good == 0) return 0;
      }
      const std::uint64_t c = cfg & -cfg;
      const std::uint64_t r = cfg + c;
      if (r == 0) break;
      cfg = (((r ^ cfg) >> 2) / c) | r;
    }
  }
  return good;
}

}  // namespace

NodeSet guaranteed_good(const Graph& g, const ReportMatrix& reports, std::size_t budget,
                        const CheckerOptions& opts) {
  if (reports.slot_count() != g.slot_count()) throw UsageError("report matrix is incomplete");
  const std::size_t n = g.order();
  if (n > opts.cap || n > 63)
    throw CapacityError("guaranteed_good: " + std::to_string(n) + " nodes exceeds cap " +
                        std::to_string(std::min<std::size_t>(opts.cap, 63)));
  const MaskView m = make_view(g, reports);
  const std::size_t top = std::min(budget, n);

  std::uint64_t good = 0;
  const unsigned workers = std::max(1U, std::min<unsigned>(opts.threads, static_cast<unsigned>(top + 1)));
  if (workers == 1) {
    std::vector<std::size_t> sizes;
    for (std::size_t s = 0; s <= top; ++s) sizes.push_back(s);
    good = good_over_sizes(m, sizes);
  } else {
    // Each worker takes every workers-th size; results combine by intersection.
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        std::vector<std::size_t> sizes;
        for (std::size_t s = w; s <= top; s += workers) sizes.push_back(s);
        partial[w] = good_over_sizes(m, sizes);
      });
    for (auto& t : pool) t.join();
    good = ~std::uint64_t{0};
    for (auto p : partial) good &= p;
  }

  NodeSet out(g.universe());
  for (std::size_t i = 0; i < m.ids.size(); ++i)
    if ((good >> i) & 1U) out.insert(m.ids[i]);
  return out;
}

bool impossible_to_find(const Graph& g, const ReportMatrix& reports, std::size_t budget,
                        std::size_t want, const CheckerOptions& opts) {
  return guaranteed_good(g, reports, budget, opts).size() < want;
}

Scenario parse_scenario(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("scenario JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw ParseError("scenario must be a JSON object");
    for (const char* key : {"graph", "bad", "claims", "budget"})
      if (!j.contains(key)) throw ParseError(std::string("scenario is missing '") + key + "'");
    Graph g = parse_graph(j.at("graph").get<std::string>());
    NodeSet bad(g.universe());
    for (const auto& id : j.at("bad")) {
      auto v = id.get<std::uint64_t>();
      if (v >= g.universe()) throw ParseError("bad id " + std::to_string(v) + " out of range");
      bad.insert(static_cast<NodeId>(v));
    }
    std::vector<Claim> adversary;
    std::vector<Claim> truthful;
    for (const auto& c : j.at("claims")) {
      if (!c.is_array() || c.size() != 3) throw ParseError("claim must be [auditor, subject, G|B]");
      Claim claim;
      claim.auditor = c[0].get<NodeId>();
      claim.subject = c[1].get<NodeId>();
      const auto v = c[2].get<std::string>();
      if (v != "G" && v != "B") throw ParseError("claim verdict must be \"G\" or \"B\"");
      claim.verdict = v == "B" ? Verdict::Bad : Verdict::Good;
      if (claim.auditor >= g.universe() || claim.subject >= g.universe())
        throw ParseError("claim endpoint out of range");
      (bad.contains(claim.auditor) ? adversary : truthful).push_back(claim);
    }
    const auto budget = j.at("budget").get<std::size_t>();
    Scenario s = make_scenario(std::move(g), std::move(bad), adversary, budget);
    for (const Claim& c : truthful)
      if (s.reports.get(s.graph, c.auditor, c.subject) != c.verdict)
        throw UsageError("claim " + std::to_string(c.auditor) + "->" + std::to_string(c.subject) +
                         " from a truthful auditor contradicts the bad set");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario JSON: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  nlohmann::json j;
  j["graph"] = serialize_graph(s.graph);
  j["bad"] = s.bad.to_vector();
  auto claims = nlohmann::json::array();
  for (const Claim& c : adversary_claims(s))
    claims.push_back({c.auditor, c.subject, c.verdict == Verdict::Bad ? "B" : "G"});
  j["claims"] = std::move(claims);
  j["budget"] = s.budget;
  return j.dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << serialize_scenario(s);
}

}  // namespace corrdetect
