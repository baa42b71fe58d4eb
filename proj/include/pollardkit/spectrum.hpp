#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pollardkit/gset.hpp"

namespace pollard {

// The representation function x -> r_{A,B}(x) = |{(a, b) in A x B : a + b = x}|
// over a whole group, with N_t and partial-sum views.
class Spectrum {
 public:
  Spectrum(GroupSpec group, std::vector<std::uint32_t> r, std::size_t card_a,
           std::size_t card_b);

  const GroupSpec& group() const noexcept { return group_; }
  const std::vector<std::uint32_t>& r() const noexcept { return r_; }
  std::uint32_t at(Element x) const { return r_.at(x.index); }
  std::size_t card_a() const noexcept { return card_a_; }
  std::size_t card_b() const noexcept { return card_b_; }

  // N_t = {x : r(x) >= t}; t >= 1.
  GSet n_t(std::size_t t) const;
  std::size_t n_t_size(std::size_t t) const;

  // S_t = sum_{i <= t} |N_i| = sum_x min(t, r(x)); t >= 1.
  std::int64_t partial_sum(std::size_t t) const;

  // S_1 .. S_{min(|A|,|B|)}.
  std::vector<std::int64_t> partial_sums() const;

  // Smallest value of r over the whole group.
  std::uint32_t min_value() const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  GroupSpec group_;
  std::vector<std::uint32_t> r_;
  std::size_t card_a_;
  std::size_t card_b_;
  // level_counts_[k] = |N_k| for k in 1..min(|A|,|B|); index 0 unused.
  std::vector<std::size_t> level_counts_;
};

// Counts every pair of A x B. Throws GroupMismatch / InvalidArgument (empty).
Spectrum compute_spectrum(const GSet& a, const GSet& b);

// Second route: r(x) = |(x - B) cap A| via bitset intersection.
Spectrum compute_spectrum_by_intersection(const GSet& a, const GSet& b);

}  // namespace pollard
