#pragma once

#include <cstddef>

#include "pollardkit/gset.hpp"

namespace pollard {

class SubgroupLattice;

// A + B. Throws GroupMismatch, or InvalidArgument when an operand is empty.
GSet sumset(const GSet& a, const GSet& b);

// A + z.
GSet translate(const GSet& a, Element z);

// {g : X + g = X}. The empty set is fixed by every element, so its period is
// the whole group; callers that need Kneser's setting check emptiness first.
GSet period(const GSet& x);

// <S>: the smallest subgroup containing S ({0} for the empty set).
GSet generated_subgroup(const GSet& s);

bool is_subgroup(const GSet& h);

// Size of the largest coset (of any subgroup, G included) contained in x;
// 0 when x is empty.
std::size_t largest_coset_in(const GSet& x, const SubgroupLattice& lattice);

// alpha(A, B): largest_coset_in(A + B). Always >= 1.
std::size_t alpha(const GSet& a, const GSet& b, const SubgroupLattice& lattice);

// Order of the largest proper subgroup. Throws InvalidArgument for |G| = 1.
std::size_t mu(const GroupSpec& group, const SubgroupLattice& lattice);

}  // namespace pollard
