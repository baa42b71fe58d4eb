#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pollard {

// Size ceilings applied when building groups and lattices.
struct Limits {
  std::size_t max_group_order = 4096;
  std::size_t max_lattice_order = 512;
};

// An element of a finite abelian group, stored as its dense index.
//
// The index is a mixed-radix number over the group's cyclic factors with the
// first factor most significant, so in Z2xZ3 the pair (a, b) has index a*3+b.
// An Element carries no reference to its group; passing it to a group whose
// order it exceeds is reported as an InvalidArgument.
struct Element {
  std::uint32_t index = 0;

  friend auto operator<=>(const Element&, const Element&) = default;
};

// A finite abelian group Z_{d1} x ... x Z_{dk}.
//
// GroupSpec is a cheap, immutable handle; copies share the same tables and
// may be used concurrently. Two specs compare equal iff their factor lists
// are equal, so Z2xZ6 and Z2xZ2xZ3 are different specs.
class GroupSpec {
 public:
  // The trivial group Z1.
  GroupSpec();

  const std::vector<std::uint32_t>& factors() const noexcept;
  std::size_t order() const noexcept;
  bool is_prime_order() const noexcept;

  // "Z2xZ6" form; round-trips through parse_group_literal.
  std::string literal() const;

  Element identity() const noexcept { return Element{0}; }

  Element add(Element x, Element y) const;
  Element neg(Element x) const;
  Element sub(Element x, Element y) const;

  std::vector<std::uint32_t> digits(Element x) const;
  Element from_digits(std::span<const std::uint32_t> digits) const;

  // Unchecked index arithmetic for inner loops; callers guarantee range.
  std::uint32_t add_index(std::uint32_t x, std::uint32_t y) const noexcept;
  std::uint32_t neg_index(std::uint32_t x) const noexcept;

  bool contains(Element x) const noexcept { return x.index < order(); }

  friend bool operator==(const GroupSpec& lhs, const GroupSpec& rhs) noexcept;

 private:
  struct Data;
  explicit GroupSpec(std::shared_ptr<const Data> data);
  void require(Element x) const;

  std::shared_ptr<const Data> data_;

  friend GroupSpec make_group(std::span<const std::uint32_t>, const Limits&);
};

// Builds Z_{f1} x ... x Z_{fk}. Throws InvalidArgument on an empty list or a
// zero factor and LimitExceeded when the order passes limits.max_group_order.
GroupSpec make_group(std::span<const std::uint32_t> factors,
                     const Limits& limits = {});

inline GroupSpec make_group(std::initializer_list<std::uint32_t> factors,
                            const Limits& limits = {}) {
  return make_group(std::span<const std::uint32_t>(factors.begin(), factors.size()),
                    limits);
}

// Parses "Z6", "z2xZ2x Z3", ... (case-insensitive, whitespace ignored).
GroupSpec parse_group_literal(std::string_view literal, const Limits& limits = {});

}  // namespace pollard
