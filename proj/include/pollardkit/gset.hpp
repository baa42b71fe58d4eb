#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "pollardkit/group.hpp"

namespace pollard {

// A subset of a finite abelian group: one bit per element plus a cached
// cardinality. Groups of order <= 128 keep their bits inline.
class GSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  GSet() = default;  // empty subset of the trivial group
  explicit GSet(GroupSpec group);

  static GSet from_indices(GroupSpec group, std::span<const std::uint32_t> indices);
  static GSet from_indices(GroupSpec group, std::initializer_list<std::uint32_t> indices) {
    return from_indices(std::move(group),
                        std::span<const std::uint32_t>(indices.begin(), indices.size()));
  }
  static GSet full(GroupSpec group);
  static GSet singleton(GroupSpec group, Element x);

  const GroupSpec& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return card_; }
  bool empty() const noexcept { return card_ == 0; }

  bool contains(Element x) const noexcept {
    return x.index < group_.order() && test(x.index);
  }
  bool test(std::uint32_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }

  void insert(Element x);
  void erase(Element x);

  // Smallest member; throws InvalidArgument on the empty set.
  Element first() const;

  std::vector<std::uint32_t> indices() const;
  std::span<const Word> words() const noexcept { return {words_.data(), words_.size()}; }

  // Calls fn(std::uint32_t index) for each member in increasing order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const auto bit = static_cast<std::uint32_t>(std::countr_zero(bits));
        fn(static_cast<std::uint32_t>(w * kWordBits) + bit);
        bits &= bits - 1;
      }
    }
  }

  bool is_subset_of(const GSet& other) const;
  bool intersects(const GSet& other) const;

  // "[0,1,2]"
  std::string literal() const;

  friend bool operator==(const GSet& lhs, const GSet& rhs);

  friend GSet set_union(const GSet& lhs, const GSet& rhs);
  friend GSet set_intersection(const GSet& lhs, const GSet& rhs);
  friend GSet set_difference(const GSet& lhs, const GSet& rhs);

 private:
  void set_bit(std::uint32_t i) noexcept;
  void recount() noexcept;

  GroupSpec group_;
  boost::container::small_vector<Word, 2> words_ = {0};
  std::size_t card_ = 0;
};

// Throws GroupMismatch unless both sets live in the same group.
void require_same_group(const GSet& lhs, const GSet& rhs);

std::size_t intersection_size(const GSet& lhs, const GSet& rhs);

// Accepts "[0,1,2]", "0,1,2", or "[]"; duplicates are rejected.
GSet parse_set_literal(const GroupSpec& group, std::string_view literal);

}  // namespace pollard
