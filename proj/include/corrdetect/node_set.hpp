// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

namespace corrdetect {

using NodeId = std::uint32_t;

/// Membership bitset over the node ids [0, universe).
///
/// Iteration is always in ascending id order; every tie-break in the library
/// relies on that.
class NodeSet {
public:
  class const_iterator {
  public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = NodeId;
    using difference_type = std::ptrdiff_t;
    using pointer = const NodeId*;
    using reference = NodeId;

    const_iterator() = default;
    const_iterator(const NodeSet* set, std::size_t pos) : set_(set), pos_(pos) { seek(); }

    NodeId operator*() const { return static_cast<NodeId>(pos_); }
    const_iterator& operator++() {
      ++pos_;
      seek();
      return *this;
    }
    const_iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const const_iterator& o) const { return pos_ == o.pos_; }

  private:
    void seek();

    const NodeSet* set_ = nullptr;
    std::size_t pos_ = 0;
  };

  NodeSet() = default;
  explicit NodeSet(std::size_t universe, bool full = false);
  NodeSet(std::size_t universe, std::initializer_list<NodeId> ids);
  static NodeSet from_ids(std::size_t universe, const std::vector<NodeId>& ids);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept;
  bool empty() const noexcept;

  bool contains(NodeId v) const noexcept {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1U) != 0;
  }
  void insert(NodeId v);
  void erase(NodeId v);
  void clear() noexcept;

  NodeSet& operator|=(const NodeSet& o);
  NodeSet& operator&=(const NodeSet& o);
  NodeSet& operator-=(const NodeSet& o);
  NodeSet complement() const;

  friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
  friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }
  friend bool operator==(const NodeSet&, const NodeSet&) = default;

  bool is_subset_of(const NodeSet& o) const;
  bool intersects(const NodeSet& o) const;

  /// Smallest member; universe() when empty.
  NodeId first() const noexcept;

  const_iterator begin() const { return const_iterator(this, 0); }
  const_iterator end() const { return const_iterator(this, universe_); }

  std::vector<NodeId> to_vector() const;
  std::string to_string() const;  // "{0,2,5}"

  /// Low 64 ids as a mask. Only meaningful for universe() <= 64.
  std::uint64_t to_mask() const noexcept { return words_.empty() ? 0 : words_[0]; }
  static NodeSet from_mask(std::size_t universe, std::uint64_t mask);

private:
  friend class const_iterator;
  void check_same(const NodeSet& o) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace corrdetect
