#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pollardkit/gset.hpp"
#include "pollardkit/lattice.hpp"

namespace pollard {

// Derivation trees for the main bound, following the induction on |B|.
//
// Every node carries a normalized instance (0 in A and B, |A| >= |B| >= t)
// and a claimed lower bound on S_t(A, B):
//
//   base_case            |B| = t, claim |A||B| (the sum of r over G).
//   periodic_case        A + B = A. A splits into <B>-cosets on each of which
//                        r >= t everywhere, so the claim is t|A|.
//   split_recurse_same   pick a in A, b in B with a + b not in A, A' = A - a,
//                        v = |A' cap B| >= t. One child on (A' cup B, A' cap B)
//                        at level t; the claim equals the child's.
//   split_recurse_diff   same choice with v < t. One child on the translates of
//                        S = A' \ B and T = B \ A' at level t - v; the claim is
//                        v(|A|+|B|-v) plus the child's.
enum class CertificateKind { base_case, periodic_case, split_recurse_same, split_recurse_diff };

std::string_view to_string(CertificateKind kind) noexcept;
CertificateKind parse_certificate_kind(std::string_view text);

struct SplitParams {
  Element a;
  Element b;
  std::size_t v = 0;
  // split_recurse_diff only: the child is (X - shift_a, Y - shift_b) where
  // (X, Y) = (S, T), or (T, S) when swapped.
  Element child_shift_a;
  Element child_shift_b;
  bool swapped = false;

  friend bool operator==(const SplitParams&, const SplitParams&) = default;
};

struct PeriodicParams {
  std::size_t generated_size = 0;  // |<B>|
  std::size_t coset_count = 0;     // |A| / |<B>|

  friend bool operator==(const PeriodicParams&, const PeriodicParams&) = default;
};

struct CertificateNode {
  CertificateKind kind = CertificateKind::base_case;
  GSet set_a;
  GSet set_b;
  std::size_t t = 1;
  std::int64_t alpha = 1;  // alpha(A, B), recorded so the chain can be audited
  std::int64_t claimed_bound = 0;
  std::optional<SplitParams> split;
  std::optional<PeriodicParams> periodic;
  std::vector<CertificateNode> children;

  std::size_t depth() const noexcept;
  std::size_t node_count() const noexcept;
  friend bool operator==(const CertificateNode&, const CertificateNode&) = default;
};

// Picks one of the candidate pairs (a, b) with a + b not in A; returns its
// position in the candidate list.
using PairChooser =
    std::function<std::size_t(std::span<const std::pair<Element, Element>> candidates)>;

// Replays the induction. The default chooser takes the first pair in
// (a, b) index order. Throws InvalidArgument unless 0 in A cap B and
// |A| >= |B| >= t >= 1.
CertificateNode build_certificate(const GSet& a, const GSet& b, std::size_t t,
                                  const SubgroupLattice& lattice,
                                  const PairChooser& chooser = {});
CertificateNode build_certificate(const GSet& a, const GSet& b, std::size_t t);

struct VerifyResult {
  bool ok = true;
  std::string path;     // "root", "root/0", ... of the first failing node
  std::string message;

  explicit operator bool() const noexcept { return ok; }
};

// Rechecks every node from scratch: set equations, recorded parameters,
// arithmetic of the claim, alpha monotonicity along the tree, the main bound
// (claim >= rhs) and soundness (claim <= S_t from a fresh spectrum).
VerifyResult verify_certificate(const CertificateNode& root, const SubgroupLattice& lattice);
VerifyResult verify_certificate(const CertificateNode& root);

}  // namespace pollard
