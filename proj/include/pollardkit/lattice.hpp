#pragma once

#include <span>
#include <vector>

#include "pollardkit/gset.hpp"

namespace pollard {

// Every subgroup of a finite abelian group, largest first, with the coset
// decomposition of each one precomputed. Immutable once built.
class SubgroupLattice {
 public:
  const GroupSpec& group() const noexcept { return group_; }

  // Sorted by cardinality descending; ties by ascending index lists.
  // subgroups().front() is G and subgroups().back() is {0}.
  std::span<const GSet> subgroups() const noexcept { return subgroups_; }
  std::size_t size() const noexcept { return subgroups_.size(); }

  // Cosets of subgroups()[i], ordered by their smallest element.
  std::span<const GSet> cosets_of(std::size_t i) const { return cosets_.at(i); }

 private:
  SubgroupLattice() = default;

  GroupSpec group_;
  std::vector<GSet> subgroups_;
  std::vector<std::vector<GSet>> cosets_;

  friend SubgroupLattice subgroup_lattice(const GroupSpec&, const Limits&);
};

// Closure search: start from {0} and repeatedly adjoin one outside element to
// each subgroup found so far. Throws LimitExceeded above limits.max_lattice_order.
SubgroupLattice subgroup_lattice(const GroupSpec& group, const Limits& limits = {});

// The |G|/|H| translates of h, ordered by smallest element. Throws
// InvalidArgument if h is not a subgroup.
std::vector<GSet> cosets(const GroupSpec& group, const GSet& h);

}  // namespace pollard
