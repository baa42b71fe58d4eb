#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pollardkit/gset.hpp"
#include "pollardkit/lattice.hpp"
#include "pollardkit/spectrum.hpp"

namespace pollard {

// Strictness cases of the main bound: I is alpha >= 3 with t >= 2, II is
// alpha >= 2 with t = 2. Both apply when t = 2 and alpha >= 3.
enum class StrictCase { none, I, II, I_and_II };

std::string_view to_string(StrictCase c) noexcept;
StrictCase parse_strict_case(std::string_view text);
StrictCase strict_case_for(std::int64_t alpha, std::int64_t t) noexcept;

// Right-hand sides, as plain integer formulas.
std::int64_t correction_w(std::int64_t alpha) noexcept;  // min(alpha - 1, 1)
std::int64_t main_rhs(std::int64_t card_a, std::int64_t card_b, std::int64_t t,
                      std::int64_t alpha) noexcept;
std::int64_t green_ruzsa_rhs(std::int64_t order, std::int64_t card_a, std::int64_t card_b,
                             std::int64_t t, std::int64_t mu) noexcept;
std::int64_t pollard_rhs(std::int64_t p, std::int64_t card_a, std::int64_t card_b,
                         std::int64_t t) noexcept;
std::int64_t grynkiewicz_rhs(std::int64_t card_a, std::int64_t card_b,
                             std::int64_t period_size) noexcept;

// Which checks evaluate() runs. Checks whose hypotheses fail on an instance
// (prime order for Pollard, |B| >= 2 for Grynkiewicz, ...) are skipped.
struct BoundSelection {
  bool main = true;
  bool green_ruzsa = true;
  bool pollard = true;
  bool grynkiewicz = true;
  bool dicks_ivanov = true;
  bool kneser = true;

  static BoundSelection none() { return {false, false, false, false, false, false}; }
  friend bool operator==(const BoundSelection&, const BoundSelection&) = default;
};

// "all" or a comma list of main, green_ruzsa, pollard, grynkiewicz,
// dicks_ivanov, kneser.
BoundSelection parse_bound_selection(std::string_view text);
std::string to_string(const BoundSelection& selection);

struct KneserResult {
  bool applicable = false;  // |A+B| <= |A| + |B| - 2
  std::size_t sumset_size = 0;
  std::size_t period_size = 0;  // |period(A+B)|, recorded either way
  std::size_t ah_size = 0;
  std::size_t bh_size = 0;
  // Evaluated only when applicable.
  std::optional<bool> period_nontrivial;
  std::optional<bool> kn1_holds;  // |A+B| = |A+H| + |B+H| - |H|
  std::optional<bool> kn2_holds;  // N_2 = A+B

  bool holds() const noexcept {
    return !applicable || (*period_nontrivial && *kn1_holds && *kn2_holds);
  }
  friend bool operator==(const KneserResult&, const KneserResult&) = default;
};

struct GrynkiewiczResult {
  std::int64_t lhs = 0;  // |N_1| + |N_2|
  std::int64_t rhs = 0;
  std::int64_t slack = 0;
  std::size_t period_size = 0;  // |period(N_2)|
  bool n2_empty = false;        // period is then all of G by definition

  friend bool operator==(const GrynkiewiczResult&, const GrynkiewiczResult&) = default;
};

struct DicksIvanovResult {
  std::int64_t lhs = 0;  // |N_1| + |N_2|
  std::int64_t rhs = 0;  // 2(|A| + |B| - 2)
  bool condition_i = false;
  bool condition_ii = false;             // N_2 contains a coset of size >= 3
  std::size_t largest_coset_in_n2 = 0;

  bool holds() const noexcept { return condition_i || condition_ii; }
  // "i", "ii" or "neither"; (i) is reported when both hold.
  std::string_view holding() const noexcept;
  friend bool operator==(const DicksIvanovResult&, const DicksIvanovResult&) = default;
};

// Translations applied to reach 0 in A and 0 in B: the evaluated sets are
// set_a = original_a - a and set_b = original_b - b.
struct NormalizationShift {
  Element a;
  Element b;
  friend bool operator==(const NormalizationShift&, const NormalizationShift&) = default;
};

// Every applicable bound evaluated on one instance (A, B, t).
struct BoundReport {
  GSet set_a;
  GSet set_b;
  std::size_t t = 1;
  std::int64_t lhs = 0;  // S_t
  std::optional<std::int64_t> alpha;
  std::optional<std::int64_t> w;
  std::optional<std::int64_t> mu;

  std::optional<std::int64_t> rhs_main;
  std::optional<std::int64_t> slack_main;
  StrictCase strict_case = StrictCase::none;

  std::optional<std::int64_t> rhs_green_ruzsa;
  std::optional<std::int64_t> slack_green_ruzsa;
  std::optional<std::int64_t> rhs_pollard;
  std::optional<std::int64_t> slack_pollard;

  std::optional<GrynkiewiczResult> grynkiewicz;
  std::optional<KneserResult> kneser;
  std::optional<DicksIvanovResult> dicks_ivanov;

  // Names of failed checks: main, main_strict, green_ruzsa, pollard,
  // grynkiewicz, dicks_ivanov, kneser.
  std::vector<std::string> violations;

  std::optional<NormalizationShift> normalization_shift;
  bool operands_swapped = false;

  const GroupSpec& group() const noexcept { return set_a.group(); }
  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

// Facts about one pair (A, B) shared by every t: spectrum, sumset, alpha, mu,
// N_2 and its period. The lattice pointer may be null, in which case alpha is
// known only for prime order (where it is p or 1) and mu is computed directly.
class PairContext {
 public:
  PairContext(GSet a, GSet b, const SubgroupLattice* lattice);

  const GSet& a() const noexcept { return a_; }
  const GSet& b() const noexcept { return b_; }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  const GSet& sumset() const noexcept { return sumset_; }
  std::optional<std::int64_t> alpha() const noexcept { return alpha_; }
  std::optional<std::int64_t> mu() const noexcept { return mu_; }
  const SubgroupLattice* lattice() const noexcept { return lattice_; }

 private:
  GSet a_;
  GSet b_;
  Spectrum spectrum_;
  GSet sumset_;
  std::optional<std::int64_t> alpha_;
  std::optional<std::int64_t> mu_;
  const SubgroupLattice* lattice_;
};

// Main bound: S_t >= t(|A|+|B|-t-alpha+1+w) - w. Requires 0 in A and B and
// |A| >= |B| >= t >= 1; throws InvalidArgument otherwise.
BoundReport check_main(const GSet& a, const GSet& b, std::size_t t,
                       const SubgroupLattice& lattice);

// S_t >= t min(|G|, |A|+|B|-mu(G)-t+1). Requires |G| >= 2, t <= min(|A|,|B|).
BoundReport check_green_ruzsa(const GSet& a, const GSet& b, std::size_t t,
                              const SubgroupLattice& lattice);

// S_t >= t min(p, |A|+|B|-t). Requires prime order and t <= min(|A|,|B|).
BoundReport check_pollard(const GSet& a, const GSet& b, std::size_t t);

// Kneser's structure checks on A+B when |A+B| <= |A|+|B|-2.
KneserResult check_kneser(const GSet& a, const GSet& b);

// |N_1|+|N_2| >= 2(|A|+|B|-max(2,|H|)), H the period of N_2. Requires
// 2 <= |B| <= |A|. Reported at t = 2.
BoundReport check_grynkiewicz(const GSet& a, const GSet& b);

// Disjunction (i) |N_1|+|N_2| >= 2(|A|+|B|-2) or (ii) N_2 contains a coset of
// size >= 3. Requires 2 <= |B| <= |A|.
DicksIvanovResult check_dicks_ivanov(const GSet& a, const GSet& b,
                                     const SubgroupLattice& lattice);

// Pair-level pieces used by evaluate() and the search engine.
KneserResult kneser_for(const PairContext& ctx);
GrynkiewiczResult grynkiewicz_for(const PairContext& ctx);
DicksIvanovResult dicks_ivanov_for(const PairContext& ctx);

// Runs the selected checks on an already normalized pair with |A| >= |B|.
BoundReport evaluate_normalized(const PairContext& ctx, std::size_t t,
                                const BoundSelection& selection);

// Front door: translates A and B so their smallest members move to 0,
// swaps them if |A| < |B|, then runs evaluate_normalized. Throws
// InvalidArgument if t is outside [1, min(|A|,|B|)].
BoundReport evaluate(const GSet& a, const GSet& b, std::size_t t,
                     const SubgroupLattice& lattice,
                     const BoundSelection& selection = {});

}  // namespace pollard
