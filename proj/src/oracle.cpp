// SPDX-License-Identifier: Apache-2.0
#include "corrdetect/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "corrdetect/error.hpp"
#include "mask_graph.hpp"

namespace corrdetect {

using detail::bit;
using detail::count;
using detail::lowest;
using detail::MaskGraph;

bool compatible(const Graph& g, const NodeSet& bi, const NodeSet& bj) {
  const NodeSet diff = (bi - bj) | (bj - bi);
  const NodeSet either = bi | bj;
  for (NodeId v : diff)
    for (NodeId u : g.in(v))
      if (!either.contains(u)) return false;
  return true;
}

ReportMatrix reports_from_family(const Graph& g, const CompatibleFamily& fam) {
  if (fam.members.empty() || fam.anchor >= fam.members.size())
    throw UsageError("family needs an anchor member");
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    if (fam.members[i].universe() != g.universe())
      throw UsageError("family member has the wrong universe");
    if (fam.members[i].size() > fam.budget)
      throw UsageError("family member " + fam.members[i].to_string() + " exceeds budget");
    for (std::size_t j = 0; j < i; ++j)
      if (!compatible(g, fam.members[i], fam.members[j]))
        throw UsageError("family members " + fam.members[j].to_string() + " and " +
                         fam.members[i].to_string() + " are incompatible");
  }
  ReportMatrix r(g, Verdict::Bad);
  for (NodeId u : g.vertices()) {
    const NodeSet* view = nullptr;
    if (!fam.members[fam.anchor].contains(u)) {
      view = &fam.members[fam.anchor];
    } else {
      for (const NodeSet& m : fam.members)
        if (!m.contains(u)) {
          view = &m;
          break;
        }
    }
    if (view == nullptr) continue;
    for (std::size_t s = g.slot_begin(u); s < g.slot_end(u); ++s)
      r.set_at(s, view->contains(g.slot_target(s)) ? Verdict::Bad : Verdict::Good);
  }
  return r;
}

namespace {

// Covering search over candidate sets of size <= b with a precomputed
// pairwise compatibility matrix.
class FamilySearch {
public:
  FamilySearch(const MaskGraph& g, std::size_t b, int need, int skips)
      : g_(g), need_(need), skips_(skips) {
    for (int size = static_cast<int>(std::min<std::size_t>(b, g.n)); size >= 1; --size) {
      if (size == 64) {
        cands_.push_back(~std::uint64_t{0});
        continue;
      }
      // Gosper's hack over size-subsets of n nodes.
      for (std::uint64_t c = bit(size) - 1; c <= g.all() && c != 0;) {
        cands_.push_back(c);
        const std::uint64_t lo = c & (~c + 1);
        const std::uint64_t hi = c + lo;
        if (hi == 0) break;
        c = (((hi ^ c) >> 2) / lo) | hi;
      }
    }
    words_ = (cands_.size() + 63) / 64;
    compat_.assign(cands_.size() * words_, 0);
    for (std::size_t i = 0; i < cands_.size(); ++i)
      for (std::size_t j = i; j < cands_.size(); ++j)
        if (compatible_masks(cands_[i], cands_[j])) {
          compat_[i * words_ + j / 64] |= bit(static_cast<int>(j % 64));
          compat_[j * words_ + i / 64] |= bit(static_cast<int>(i % 64));
        }
  }

  std::size_t candidate_count() const { return cands_.size(); }

  /// Every search branch at the root: (candidate index or -1 for skip).
  std::vector<int> root_branches() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < cands_.size(); ++i)
      if (cands_[i] & 1U) out.push_back(static_cast<int>(i));
    if (skips_ > 0) out.push_back(-1);
    return out;
  }

  /// Runs the subtree below one root branch; stops early once `stop` is set.
  std::optional<std::vector<std::uint64_t>> run(int branch, const std::atomic<bool>& stop) {
    stop_ = &stop;
    chosen_.clear();
    std::vector<std::uint64_t> allowed(words_, ~std::uint64_t{0});
    trim(allowed);
    if (g_.n == 0 || need_ <= 0) return std::vector<std::uint64_t>{};
    bool ok;
    if (branch < 0) {
      ok = dfs(0, bit(0), allowed, skips_ - 1);
    } else {
      chosen_.push_back(cands_[branch]);
      ok = dfs(cands_[branch], cands_[branch], restrict(allowed, branch), skips_);
    }
    if (!ok) return std::nullopt;
    return chosen_;
  }

private:
  bool compatible_masks(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t diff = a ^ b;
    std::uint64_t auditors = 0;
    for (std::uint64_t d = diff; d != 0; d &= d - 1) auditors |= g_.in[lowest(d)];
    return (auditors & ~(a | b)) == 0;
  }

  void trim(std::vector<std::uint64_t>& allowed) const {
    const std::size_t extra = words_ * 64 - cands_.size();
    if (extra > 0 && !allowed.empty()) allowed.back() &= ~std::uint64_t{0} >> extra;
  }

  std::vector<std::uint64_t> restrict(const std::vector<std::uint64_t>& allowed, int c) const {
    std::vector<std::uint64_t> out(words_);
    for (std::size_t w = 0; w < words_; ++w) out[w] = allowed[w] & compat_[c * words_ + w];
    return out;
  }

  bool dfs(std::uint64_t covered, std::uint64_t decided, const std::vector<std::uint64_t>& allowed,
           int skips) {
    if (count(covered) >= need_) return true;
    if (stop_->load(std::memory_order_relaxed)) return false;
    std::uint64_t reachable = covered;
    for (std::size_t w = 0; w < words_; ++w)
      for (std::uint64_t a = allowed[w]; a != 0; a &= a - 1) reachable |= cands_[w * 64 + lowest(a)];
    if (count(reachable) < need_) return false;
    const std::uint64_t open = g_.all() & ~decided & ~covered;
    if (open == 0) return false;
    const int v = lowest(open);
    for (std::size_t w = 0; w < words_; ++w)
      for (std::uint64_t a = allowed[w]; a != 0; a &= a - 1) {
        const int c = static_cast<int>(w * 64) + lowest(a);
        if ((cands_[c] & bit(v)) == 0) continue;
        chosen_.push_back(cands_[c]);
        if (dfs(covered | cands_[c], decided | cands_[c], restrict(allowed, c), skips)) return true;
        chosen_.pop_back();
      }
    if (skips > 0) return dfs(covered, decided | bit(v), allowed, skips - 1);
    return false;
  }

  const MaskGraph& g_;
  int need_;
  int skips_;
  std::vector<std::uint64_t> cands_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> compat_;
  std::vector<std::uint64_t> chosen_;
  const std::atomic<bool>* stop_ = nullptr;
};

std::optional<std::vector<std::uint64_t>> search_level(const MaskGraph& mg, std::size_t b, int need,
                                                       int skips, unsigned threads) {
  FamilySearch proto(mg, b, need, skips);
  const std::vector<int> branches = proto.root_branches();
  std::atomic<bool> found{false};
  std::mutex lock;
  std::optional<std::vector<std::uint64_t>> result;
  std::size_t result_branch = branches.size();

  auto work = [&](unsigned t, unsigned stride) {
    FamilySearch search = proto;
    for (std::size_t i = t; i < branches.size(); i += stride) {
      if (found.load()) {
        // A later branch cannot replace an earlier success.
        std::lock_guard guard(lock);
        if (result_branch < i) return;
      }
      auto fam = search.run(branches[i], found);
      if (fam) {
        std::lock_guard guard(lock);
        if (i < result_branch) {
          result_branch = i;
          result = std::move(fam);
        }
        found.store(true);
        return;
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, branches.size()));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
    for (auto& th : pool) th.join();
  }
  return result;
}

}  // namespace

OracleResult solve_critical(const Graph& g, std::size_t want, const OracleOptions& opts) {
  const std::size_t n = g.order();
  const std::size_t cap = std::min<std::size_t>(opts.cap.value_or(g.is_directed() ? 8 : 10), 63);
  if (n > cap)
    throw CapacityError("oracle: " + std::to_string(n) + " nodes exceeds cap " +
                        std::to_string(cap));
  if (want < 1 || (want > n && n > 0))
    throw UsageError("oracle: g must satisfy 1 <= g <= n");

  OracleResult res;
  res.g = want;
  if (n == 0) {
    res.family.members = {NodeSet(g.universe())};
    return res;
  }
  const MaskGraph mg = detail::make_mask_graph(g);
  const int need = static_cast<int>(n - want + 1);
  const int skips = static_cast<int>(want) - 1;
  for (std::size_t b = 1; b <= n; ++b) {
    auto fam = search_level(mg, b, need, skips, opts.threads);
    if (!fam) continue;
    res.value = b;
    res.family.budget = b;
    res.family.anchor = 0;
    for (std::uint64_t m : *fam) res.family.members.push_back(mg.to_global(m, g.universe()));
    break;
  }
  if (res.family.members.empty()) throw std::logic_error("oracle: no family up to b = n");

  if (opts.cross_validate) {
    const ReportMatrix reports = reports_from_family(g, res.family);
    for (const NodeSet& m : res.family.members)
      if (!is_consistent(g, reports, m, res.value))
        throw std::logic_error("oracle: realized family member " + m.to_string() +
                               " is not consistent");
    CheckerOptions check;
    check.cap = 63;
    check.threads = opts.threads;
    if (!impossible_to_find(g, reports, res.value, want, check))
      throw std::logic_error("oracle: realized family still allows identification");
  }
  return res;
}

std::size_t exact_m(const Graph& g, const OracleOptions& opts) {
  if (g.is_directed()) throw UsageError("exact_m needs an undirected graph");
  return solve_critical(g, 1, opts).value;
}

std::size_t exact_m_g(const Graph& g, std::size_t want, const OracleOptions& opts) {
  if (g.is_directed()) throw UsageError("exact_m_g needs an undirected graph");
  return solve_critical(g, want, opts).value;
}

std::size_t exact_m_directed(const Graph& d, const OracleOptions& opts) {
  if (!d.is_directed()) throw UsageError("exact_m_directed needs a directed graph");
  return solve_critical(d, 1, opts).value;
}

}  // namespace corrdetect
