#include "pollardkit/certificate.hpp"

#include <algorithm>

#include "pollardkit/bounds.hpp"
#include "pollardkit/error.hpp"
#include "pollardkit/setops.hpp"
#include "pollardkit/spectrum.hpp"

namespace pollard {

namespace {

std::int64_t as_int(std::size_t n) { return static_cast<std::int64_t>(n); }

std::optional<std::pair<Element, Element>> choose_pair(const GSet& a, const GSet& b,
                                                       const PairChooser& chooser) {
  const auto& g = a.group();
  const auto bs = b.indices();
  if (!chooser) {
    std::optional<std::pair<Element, Element>> hit;
    a.for_each([&](std::uint32_t x) {
      if (hit) return;
      for (const auto y : bs) {
        if (!a.test(g.add_index(x, y))) {
          hit.emplace(Element{x}, Element{y});
          return;
        }
      }
    });
    return hit;
  }
  std::vector<std::pair<Element, Element>> candidates;
  a.for_each([&](std::uint32_t x) {
    for (const auto y : bs) {
      if (!a.test(g.add_index(x, y))) candidates.emplace_back(Element{x}, Element{y});
    }
  });
  if (candidates.empty()) return std::nullopt;
  const auto pick = chooser(candidates);
  if (pick >= candidates.size()) {
    throw InvalidArgument("pair chooser returned position " + std::to_string(pick) +
                          " of " + std::to_string(candidates.size()));
  }
  return candidates[pick];
}

CertificateNode build(const GSet& a, const GSet& b, std::size_t t,
                      const SubgroupLattice& lattice, const PairChooser& chooser) {
  CertificateNode node;
  node.set_a = a;
  node.set_b = b;
  node.t = t;
  const GSet sum = sumset(a, b);
  node.alpha = as_int(largest_coset_in(sum, lattice));

  if (b.size() == t) {
    node.kind = CertificateKind::base_case;
    node.claimed_bound = as_int(a.size()) * as_int(b.size());
    return node;
  }
  if (sum == a) {
    const GSet k = generated_subgroup(b);
    node.kind = CertificateKind::periodic_case;
    node.periodic = PeriodicParams{k.size(), a.size() / k.size()};
    node.claimed_bound = as_int(t) * as_int(a.size());
    return node;
  }

  const auto choice = choose_pair(a, b, chooser);
  if (!choice) throw InternalError("no pair with a + b outside A although A + B != A");
  const auto& g = a.group();
  const auto [x, y] = *choice;
  const GSet shifted = translate(a, g.neg(x));
  const GSet common = set_intersection(shifted, b);
  SplitParams split{x, y, common.size(), {}, {}, false};

  if (t <= split.v) {
    node.kind = CertificateKind::split_recurse_same;
    node.children.push_back(build(set_union(shifted, b), common, t, lattice, chooser));
    node.claimed_bound = node.children.front().claimed_bound;
  } else {
    node.kind = CertificateKind::split_recurse_diff;
    GSet s = set_difference(shifted, b);
    GSet tt = set_difference(b, shifted);
    split.swapped = s.size() < tt.size();
    if (split.swapped) std::swap(s, tt);
    split.child_shift_a = s.first();
    split.child_shift_b = tt.first();
    node.children.push_back(build(translate(s, g.neg(split.child_shift_a)),
                                  translate(tt, g.neg(split.child_shift_b)), t - split.v,
                                  lattice, chooser));
    const auto v = as_int(split.v);
    node.claimed_bound = v * (as_int(a.size()) + as_int(b.size()) - v) +
                         node.children.front().claimed_bound;
  }
  node.split = split;
  return node;
}

class Verifier {
 public:
  explicit Verifier(const SubgroupLattice& lattice) : lattice_(lattice) {}

  VerifyResult run(const CertificateNode& node, const std::string& path) {
    try {
      check(node, path);
    } catch (const Error& e) {
      fail(path, std::string("malformed node: ") + e.what());
    }
    if (!result_.ok) return result_;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      run(node.children[i], path + "/" + std::to_string(i));
      if (!result_.ok) break;
    }
    return result_;
  }

 private:
  bool fail(const std::string& path, std::string message) {
    if (result_.ok) {
      result_.ok = false;
      result_.path = path;
      result_.message = std::move(message);
    }
    return false;
  }

  bool expect(bool condition, const std::string& path, const char* message) {
    return condition || fail(path, message);
  }

  bool check(const CertificateNode& n, const std::string& path) {
    const auto& a = n.set_a;
    const auto& b = n.set_b;
    const auto& g = a.group();
    if (!expect(g == lattice_.group() && b.group() == g, path, "group mismatch")) return false;
    if (!expect(a.contains(g.identity()) && b.contains(g.identity()), path,
                "instance not normalized: 0 must lie in A and B")) {
      return false;
    }
    if (!expect(n.t >= 1 && b.size() >= n.t && a.size() >= b.size(), path,
                "instance violates |A| >= |B| >= t >= 1")) {
      return false;
    }
    const GSet sum = sumset(a, b);
    if (!expect(n.alpha == as_int(largest_coset_in(sum, lattice_)), path,
                "recorded alpha does not match A + B")) {
      return false;
    }
    const auto ca = as_int(a.size());
    const auto cb = as_int(b.size());
    const auto t = as_int(n.t);
    const auto measured = compute_spectrum(a, b).partial_sum(n.t);
    if (!expect(n.claimed_bound <= measured, path, "claimed bound exceeds measured S_t")) {
      return false;
    }
    if (!expect(n.claimed_bound >= main_rhs(ca, cb, t, n.alpha), path,
                "claimed bound is below the main bound")) {
      return false;
    }

    switch (n.kind) {
      case CertificateKind::base_case:
        return expect(!n.split && !n.periodic && n.children.empty(), path,
                      "base case carries parameters or children") &&
               expect(b.size() == n.t, path, "base case needs |B| = t") &&
               expect(n.claimed_bound == ca * cb, path, "base case claim must be |A||B|");
      case CertificateKind::periodic_case:
        return check_periodic(n, sum, path);
      case CertificateKind::split_recurse_same:
      case CertificateKind::split_recurse_diff:
        return check_split(n, path);
    }
    return fail(path, "unknown node kind");
  }

  bool check_periodic(const CertificateNode& n, const GSet& sum, const std::string& path) {
    const auto& a = n.set_a;
    const auto& b = n.set_b;
    if (!expect(n.periodic && !n.split && n.children.empty(), path,
                "periodic case needs coset parameters and no children")) {
      return false;
    }
    if (!expect(sum == a, path, "periodic case needs A + B = A")) return false;
    const GSet k = generated_subgroup(b);
    if (!expect(sumset(a, k) == a, path, "A is not a union of <B>-cosets")) return false;
    if (!expect(n.periodic->generated_size == k.size() &&
                    n.periodic->coset_count * k.size() == a.size(),
                path, "recorded coset decomposition does not match")) {
      return false;
    }
    // Each coset C of <B> in A satisfies |C| + |B| >= |<B>| + t inside <B>,
    // so r_{C,B} >= t on all of C.
    for (const auto& coset : cosets(a.group(), k)) {
      if (!coset.is_subset_of(a)) continue;
      const auto spec = compute_spectrum(coset, b);
      bool saturated = true;
      coset.for_each([&](std::uint32_t x) { saturated = saturated && spec.r()[x] >= n.t; });
      if (!expect(saturated, path, "a <B>-coset of A is not saturated at level t")) {
        return false;
      }
    }
    return expect(n.claimed_bound == as_int(n.t) * as_int(a.size()), path,
                  "periodic claim must be t|A|");
  }

  bool check_split(const CertificateNode& n, const std::string& path) {
    const auto& a = n.set_a;
    const auto& b = n.set_b;
    const auto& g = a.group();
    if (!expect(n.split && !n.periodic && n.children.size() == 1, path,
                "split case needs split parameters and exactly one child")) {
      return false;
    }
    const auto& p = *n.split;
    if (!expect(a.contains(p.a) && b.contains(p.b), path, "split pair not in A x B")) {
      return false;
    }
    if (!expect(!a.contains(g.add(p.a, p.b)), path, "split pair has a + b in A")) return false;
    const GSet shifted = translate(a, g.neg(p.a));
    const GSet common = set_intersection(shifted, b);
    if (!expect(p.v == common.size(), path, "recorded v differs from |(A - a) cap B|")) {
      return false;
    }
    const auto& child = n.children.front();
    if (!expect(child.alpha <= n.alpha, path, "alpha increased along the tree")) return false;

    if (n.kind == CertificateKind::split_recurse_same) {
      return expect(n.t <= p.v, path, "same-level split needs t <= v") &&
             expect(child.t == n.t, path, "same-level split child must keep t") &&
             expect(child.set_a == set_union(shifted, b) && child.set_b == common, path,
                    "child is not ((A - a) cup B, (A - a) cap B)") &&
             expect(n.claimed_bound == child.claimed_bound, path,
                    "same-level split claim must equal the child's");
    }
    if (!expect(n.t > p.v, path, "lowered-level split needs t > v")) return false;
    if (!expect(child.t == n.t - p.v, path, "child level must be t - v")) return false;
    GSet x = set_difference(shifted, b);
    GSet y = set_difference(b, shifted);
    if (p.swapped) std::swap(x, y);
    if (!expect(x.contains(p.child_shift_a) && y.contains(p.child_shift_b), path,
                "child shifts are not members of S and T")) {
      return false;
    }
    if (!expect(child.set_a == translate(x, g.neg(p.child_shift_a)) &&
                    child.set_b == translate(y, g.neg(p.child_shift_b)),
                path, "child is not the translate of (A - a) \\ B and B \\ (A - a)")) {
      return false;
    }
    const auto v = as_int(p.v);
    return expect(n.claimed_bound ==
                      v * (as_int(a.size()) + as_int(b.size()) - v) + child.claimed_bound,
                  path, "lowered-level claim must be v(|A|+|B|-v) plus the child's");
  }

  const SubgroupLattice& lattice_;
  VerifyResult result_;
};

}  // namespace

std::string_view to_string(CertificateKind kind) noexcept {
  switch (kind) {
    case CertificateKind::base_case: return "base_case";
    case CertificateKind::periodic_case: return "periodic_case";
    case CertificateKind::split_recurse_same: return "split_recurse_same";
    case CertificateKind::split_recurse_diff: return "split_recurse_diff";
  }
  return "base_case";
}

CertificateKind parse_certificate_kind(std::string_view text) {
  if (text == "base_case") return CertificateKind::base_case;
  if (text == "periodic_case") return CertificateKind::periodic_case;
  if (text == "split_recurse_same") return CertificateKind::split_recurse_same;
  if (text == "split_recurse_diff") return CertificateKind::split_recurse_diff;
  throw InvalidArgument("unknown certificate node kind '" + std::string(text) + "'");
}

std::size_t CertificateNode::depth() const noexcept {
  std::size_t deepest = 0;
  for (const auto& c : children) deepest = std::max(deepest, c.depth());
  return deepest + 1;
}

std::size_t CertificateNode::node_count() const noexcept {
  std::size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

CertificateNode build_certificate(const GSet& a, const GSet& b, std::size_t t,
                                  const SubgroupLattice& lattice, const PairChooser& chooser) {
  require_same_group(a, b);
  const auto& g = a.group();
  if (!(lattice.group() == g)) {
    throw GroupMismatch("lattice of " + lattice.group().literal() + " used for " +
                        g.literal());
  }
  if (!a.contains(g.identity()) || !b.contains(g.identity())) {
    throw InvalidArgument("certificate needs 0 in both A and B");
  }
  if (t < 1 || b.size() < t || a.size() < b.size()) {
    throw InvalidArgument("certificate needs |A| >= |B| >= t >= 1");
  }
  return build(a, b, t, lattice, chooser);
}

CertificateNode build_certificate(const GSet& a, const GSet& b, std::size_t t) {
  return build_certificate(a, b, t, subgroup_lattice(a.group()));
}

VerifyResult verify_certificate(const CertificateNode& root, const SubgroupLattice& lattice) {
  return Verifier(lattice).run(root, "root");
}

VerifyResult verify_certificate(const CertificateNode& root) {
  return verify_certificate(root, subgroup_lattice(root.set_a.group()));
}

}  // namespace pollard
