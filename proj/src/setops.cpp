#include "pollardkit/setops.hpp"

#include "pollardkit/error.hpp"
#include "pollardkit/lattice.hpp"

namespace pollard {

GSet sumset(const GSet& a, const GSet& b) {
  require_same_group(a, b);
  if (a.empty() || b.empty()) throw InvalidArgument("sumset of an empty set");
  const auto& g = a.group();
  GSet out(g);
  const auto bs = b.indices();
  a.for_each([&](std::uint32_t x) {
    for (const auto y : bs) out.insert(Element{g.add_index(x, y)});
  });
  return out;
}

GSet translate(const GSet& a, Element z) {
  const auto& g = a.group();
  if (!g.contains(z)) {
    throw InvalidArgument("translation by " + std::to_string(z.index) +
                          " out of range for " + g.literal());
  }
  GSet out(g);
  a.for_each([&](std::uint32_t x) { out.insert(Element{g.add_index(x, z.index)}); });
  return out;
}

GSet period(const GSet& x) {
  const auto& g = x.group();
  if (x.empty()) return GSet::full(g);
  // Any g with X + g = X maps x0 into X, so g ranges over X - x0.
  const auto x0 = x.first();
  const auto back = g.neg_index(x0.index);
  GSet out(g);
  x.for_each([&](std::uint32_t y) {
    const Element shift{g.add_index(y, back)};
    if (translate(x, shift) == x) out.insert(shift);
  });
  return out;
}

GSet generated_subgroup(const GSet& s) {
  const auto& g = s.group();
  GSet out = GSet::singleton(g, g.identity());
  s.for_each([&](std::uint32_t x) {
    if (out.test(x)) return;
    // out + <x>
    GSet cyclic = GSet::singleton(g, g.identity());
    for (std::uint32_t m = x; m != 0; m = g.add_index(m, x)) cyclic.insert(Element{m});
    out = sumset(out, cyclic);
  });
  return out;
}

bool is_subgroup(const GSet& h) {
  if (!h.contains(h.group().identity())) return false;
  return sumset(h, h) == h;
}

std::size_t largest_coset_in(const GSet& x, const SubgroupLattice& lattice) {
  if (!(x.group() == lattice.group())) {
    throw GroupMismatch("lattice of " + lattice.group().literal() + " used with a set in " +
                        x.group().literal());
  }
  if (x.empty()) return 0;
  const auto subgroups = lattice.subgroups();
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    const auto h = subgroups[i].size();
    if (h > x.size()) continue;
    if (h == 1) return 1;
    for (const auto& coset : lattice.cosets_of(i)) {
      if (coset.is_subset_of(x)) return h;
    }
  }
  return 1;
}

std::size_t alpha(const GSet& a, const GSet& b, const SubgroupLattice& lattice) {
  return largest_coset_in(sumset(a, b), lattice);
}

std::size_t mu(const GroupSpec& group, const SubgroupLattice& lattice) {
  if (!(group == lattice.group())) {
    throw GroupMismatch("lattice of " + lattice.group().literal() + " used for " +
                        group.literal());
  }
  if (group.order() < 2) throw InvalidArgument("mu is undefined for the trivial group");
  return lattice.subgroups()[1].size();
}

}  // namespace pollard
