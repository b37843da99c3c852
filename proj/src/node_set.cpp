// SPDX-License-Identifier: Apache-2.0
#include "corrdetect/node_set.hpp"

#include "corrdetect/error.hpp"

namespace corrdetect {

void NodeSet::const_iterator::seek() {
  const std::size_t n = set_->universe_;
  while (pos_ < n) {
    const std::size_t w = pos_ >> 6;
    const std::uint64_t word = set_->words_[w] >> (pos_ & 63);
    if (word != 0) {
      pos_ += static_cast<std::size_t>(std::countr_zero(word));
      if (pos_ > n) pos_ = n;
      return;
    }
    pos_ = (w + 1) << 6;
  }
  pos_ = n;
}

NodeSet::NodeSet(std::size_t universe, bool full)
    : universe_(universe), words_((universe + 63) / 64, full ? ~std::uint64_t{0} : 0) {
  if (full && (universe & 63) != 0) words_.back() &= (std::uint64_t{1} << (universe & 63)) - 1;
}

NodeSet::NodeSet(std::size_t universe, std::initializer_list<NodeId> ids) : NodeSet(universe) {
  for (NodeId v : ids) insert(v);
}

NodeSet NodeSet::from_ids(std::size_t universe, const std::vector<NodeId>& ids) {
  NodeSet s(universe);
  for (NodeId v : ids) s.insert(v);
  return s;
}

NodeSet NodeSet::from_mask(std::size_t universe, std::uint64_t mask) {
  NodeSet s(universe);
  if (universe < 64) mask &= (std::uint64_t{1} << universe) - 1;
  if (!s.words_.empty()) s.words_[0] = mask;
  return s;
}

std::size_t NodeSet::size() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool NodeSet::empty() const noexcept {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

void NodeSet::insert(NodeId v) {
  if (v >= universe_) throw UsageError("node " + std::to_string(v) + " out of range");
  words_[v >> 6] |= std::uint64_t{1} << (v & 63);
}

void NodeSet::erase(NodeId v) {
  if (v >= universe_) throw UsageError("node " + std::to_string(v) + " out of range");
  words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

void NodeSet::clear() noexcept {
  for (auto& w : words_) w = 0;
}

void NodeSet::check_same(const NodeSet& o) const {
  if (universe_ != o.universe_) throw UsageError("node sets over different universes");
}

NodeSet& NodeSet::operator|=(const NodeSet& o) {
  check_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

NodeSet& NodeSet::operator&=(const NodeSet& o) {
  check_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

NodeSet& NodeSet::operator-=(const NodeSet& o) {
  check_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

NodeSet NodeSet::complement() const { return NodeSet(universe_, true) - *this; }

bool NodeSet::is_subset_of(const NodeSet& o) const {
  check_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~o.words_[i]) != 0) return false;
  return true;
}

bool NodeSet::intersects(const NodeSet& o) const {
  check_same(o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & o.words_[i]) != 0) return true;
  return false;
}

NodeId NodeSet::first() const noexcept { return *begin(); }

std::vector<NodeId> NodeSet::to_vector() const {
  std::vector<NodeId> out;
  out.reserve(size());
  for (NodeId v : *this) out.push_back(v);
  return out;
}

std::string NodeSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (NodeId v : *this) {
    if (!first) s += ',';
    s += std::to_string(v);
    first = false;
  }
  return s + "}";
}

}  // namespace corrdetect
