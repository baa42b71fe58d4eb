#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pollardkit/bounds.hpp"
#include "pollardkit/gset.hpp"

namespace pollard {

enum class SearchMode { verify, equality_hunt, conjecture_scan };

std::string_view to_string(SearchMode mode) noexcept;
SearchMode parse_search_mode(std::string_view text);

// Inclusive range; hi = 0 means "up to the largest meaningful value".
struct SizeRange {
  std::size_t lo = 1;
  std::size_t hi = 0;
  friend bool operator==(const SizeRange&, const SizeRange&) = default;
};

struct SearchConfig {
  std::vector<std::string> groups;  // group literals
  SizeRange size_a;
  SizeRange size_b;
  SizeRange t;
  BoundSelection bounds;
  SearchMode mode = SearchMode::verify;
  std::size_t shards = 1;
  std::string out;                  // witness JSON-lines path; empty = none
  std::uint64_t max_instances = 0;  // 0 = unlimited
  Limits limits;
};

// One group literal per isomorphism class of abelian groups of order <= 12.
std::vector<std::string> default_catalog();
SearchConfig default_search_config();

// key = value lines; '#' starts a comment. Keys: groups, size_a, size_b, t,
// mode, shards, bounds, out, max_instances. Ranges are "3", "2-5", "3+" or "all";
// groups is "default" or a comma list of literals.
SearchConfig parse_search_config(std::string_view text);
std::string render_search_config(const SearchConfig& config);

enum class WitnessCategory { violation, equality, conjecture_equality };

std::string_view to_string(WitnessCategory c) noexcept;
WitnessCategory parse_witness_category(std::string_view text);

// Enumeration position of an instance; witness order is the lexicographic
// order of these keys.
struct InstanceKey {
  std::size_t group_position = 0;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::uint64_t rank_a = 0;
  std::uint64_t rank_b = 0;
  std::size_t t = 0;
  friend auto operator<=>(const InstanceKey&, const InstanceKey&) = default;
};

struct SearchWitness {
  std::string group;
  std::vector<std::uint32_t> set_a;
  std::vector<std::uint32_t> set_b;
  std::size_t t = 1;
  std::int64_t lhs = 0;
  std::optional<std::int64_t> alpha;
  std::optional<std::int64_t> rhs_main, slack_main;
  std::optional<std::int64_t> rhs_green_ruzsa, slack_green_ruzsa;
  std::optional<std::int64_t> rhs_pollard, slack_pollard;
  std::optional<std::int64_t> rhs_grynkiewicz, slack_grynkiewicz;
  StrictCase strict_case = StrictCase::none;
  WitnessCategory category = WitnessCategory::violation;
  std::vector<std::string> violations;
  InstanceKey key;  // not serialized

  friend bool operator==(const SearchWitness&, const SearchWitness&) = default;
};

// Build a witness from a report; the report must be normalized.
SearchWitness make_witness(const BoundReport& report, WitnessCategory category,
                           const InstanceKey& key = {});

struct BoundTally {
  std::uint64_t evaluated = 0;
  std::uint64_t equalities = 0;
  std::uint64_t violations = 0;
  std::optional<std::int64_t> min_slack;

  void record(std::int64_t slack);
  void merge(const BoundTally& other);
  friend bool operator==(const BoundTally&, const BoundTally&) = default;
};

struct SearchSummary {
  std::string mode;
  std::vector<std::string> groups;
  std::uint64_t pairs = 0;
  std::uint64_t instances = 0;  // (pair, t) triples
  BoundTally main, green_ruzsa, pollard, grynkiewicz;
  std::uint64_t strict_instances = 0;
  std::uint64_t strict_failures = 0;
  std::uint64_t dicks_ivanov_evaluated = 0;
  std::uint64_t dicks_ivanov_by_i = 0;
  std::uint64_t dicks_ivanov_by_ii = 0;
  std::uint64_t dicks_ivanov_failures = 0;
  std::uint64_t kneser_evaluated = 0;
  std::uint64_t kneser_applicable = 0;
  std::uint64_t kneser_failures = 0;
  std::uint64_t conjecture_regime_instances = 0;  // t >= 3, alpha = 2
  std::uint64_t conjecture_equalities = 0;
  std::uint64_t violations = 0;  // instances with at least one failed check
  std::uint64_t witnesses = 0;

  void merge(const SearchSummary& other);
  friend bool operator==(const SearchSummary&, const SearchSummary&) = default;
};

struct SearchResult {
  SearchSummary summary;
  std::vector<SearchWitness> witnesses;  // sorted by key
};

// Number of pairs with 0 in A, 0 in B, |A| = size_a, |B| = size_b:
// C(n-1, size_a-1) * C(n-1, size_b-1).
std::uint64_t count_pairs(const GroupSpec& group, std::size_t size_a, std::size_t size_b);

// Subsets of size k that contain 0, in lexicographic order of their sorted
// index lists. fn(const GSet&, std::uint64_t rank).
void for_each_zero_subset(const GroupSpec& group, std::size_t k,
                          const std::function<void(const GSet&, std::uint64_t)>& fn);

// Streams every translation-normalized pair. Requires 1 <= size_b <= size_a <= |G|.
void enumerate_pairs(const GroupSpec& group, std::size_t size_a, std::size_t size_b,
                     const std::function<void(const GSet&, const GSet&)>& fn);

// Which shard owns a given A subset.
std::size_t shard_of(std::size_t group_position, std::size_t size_a, std::uint64_t rank_a,
                     std::size_t shards);

// Runs one shard in the calling thread.
SearchResult sweep_shard(const SearchConfig& config, std::size_t shard);

// Runs all shards (concurrently when more than one) and merges them.
// Throws InvalidArgument on a bad config and LimitExceeded when the planned
// instance count passes max_instances (nothing is run in that case).
SearchResult sweep(const SearchConfig& config);

// Merges shard results; the output does not depend on the input order.
SearchResult merge_results(std::vector<SearchResult> parts);

// Number of (pair, t) instances the config would evaluate.
std::uint64_t planned_instances(const SearchConfig& config);

}  // namespace pollard
