#include "pollardkit/lattice.hpp"

#include <algorithm>
#include <set>

#include "pollardkit/error.hpp"
#include "pollardkit/setops.hpp"

namespace pollard {

namespace {

GSet cyclic_subgroup(const GroupSpec& g, std::uint32_t x) {
  GSet out = GSet::singleton(g, g.identity());
  for (std::uint32_t m = x; m != 0; m = g.add_index(m, x)) out.insert(Element{m});
  return out;
}

std::vector<GSet> cosets_unchecked(const GroupSpec& group, const GSet& h) {
  std::vector<GSet> out;
  GSet covered(group);
  for (std::uint32_t z = 0; z < group.order(); ++z) {
    if (covered.test(z)) continue;
    auto coset = translate(h, Element{z});
    covered = set_union(covered, coset);
    out.push_back(std::move(coset));
  }
  return out;
}

}  // namespace

SubgroupLattice subgroup_lattice(const GroupSpec& group, const Limits& limits) {
  if (group.order() > limits.max_lattice_order) {
    throw LimitExceeded("subgroup lattice of " + group.literal() + " (order " +
                        std::to_string(group.order()) + ") exceeds limit " +
                        std::to_string(limits.max_lattice_order));
  }
  SubgroupLattice lattice;
  lattice.group_ = group;

  std::vector<GSet> found{GSet::singleton(group, group.identity())};
  std::set<std::vector<std::uint32_t>> seen{found.front().indices()};
  for (std::size_t i = 0; i < found.size(); ++i) {
    const GSet h = found[i];
    // H + <g> depends only on the coset g + H.
    GSet done = h;
    for (std::uint32_t g = 0; g < group.order(); ++g) {
      if (done.test(g)) continue;
      done = set_union(done, translate(h, Element{g}));
      GSet extended = sumset(h, cyclic_subgroup(group, g));
      if (seen.insert(extended.indices()).second) found.push_back(std::move(extended));
    }
  }

  std::sort(found.begin(), found.end(), [](const GSet& lhs, const GSet& rhs) {
    if (lhs.size() != rhs.size()) return lhs.size() > rhs.size();
    return lhs.indices() < rhs.indices();
  });
  lattice.cosets_.reserve(found.size());
  for (const auto& h : found) lattice.cosets_.push_back(cosets_unchecked(group, h));
  lattice.subgroups_ = std::move(found);
  return lattice;
}

std::vector<GSet> cosets(const GroupSpec& group, const GSet& h) {
  if (!(h.group() == group)) {
    throw GroupMismatch("subgroup of " + h.group().literal() + " used with " +
                        group.literal());
  }
  if (!is_subgroup(h)) throw InvalidArgument(h.literal() + " is not a subgroup");
  return cosets_unchecked(group, h);
}

}  // namespace pollard
