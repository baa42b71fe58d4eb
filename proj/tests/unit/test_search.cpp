#include <doctest.h>

#include <algorithm>
#include <set>

#include "pollardkit/bounds.hpp"
#include "pollardkit/error.hpp"
#include "pollardkit/search.hpp"
#include "pollardkit/setops.hpp"
#include "support/oracles.hpp"

using namespace pollard;

namespace {

using V = std::vector<std::uint32_t>;
using Pair = std::pair<V, V>;

std::vector<Pair> collect(const GroupSpec& g, std::size_t sa, std::size_t sb) {
  std::vector<Pair> out;
  enumerate_pairs(g, sa, sb, [&](const GSet& a, const GSet& b) {
    out.emplace_back(a.indices(), b.indices());
  });
  return out;
}

SearchConfig small_config(std::vector<std::string> groups, SearchMode mode) {
  SearchConfig c;
  c.groups = std::move(groups);
  c.mode = mode;
  return c;
}

}  // namespace

TEST_CASE("enumerate_pairs examples") {
  const auto z5 = make_group({5});
  CHECK(collect(z5, 2, 2).size() == 16);
  CHECK(count_pairs(z5, 2, 2) == 16);

  const auto z4 = make_group({4});
  const auto full = collect(z4, 4, 1);
  REQUIRE(full.size() == 1);
  CHECK(full[0].first == V{0, 1, 2, 3});
  CHECK(full[0].second == V{0});

  CHECK(collect(make_group({3}), 2, 2).size() == 4);

  CHECK_THROWS_AS(enumerate_pairs(z5, 2, 3, [](const GSet&, const GSet&) {}), InvalidArgument);
  CHECK_THROWS_AS(enumerate_pairs(z5, 6, 1, [](const GSet&, const GSet&) {}), InvalidArgument);
  CHECK_THROWS_AS(enumerate_pairs(z5, 1, 0, [](const GSet&, const GSet&) {}), InvalidArgument);
}

TEST_CASE("enumeration counts match the binomial formula") {
  for (const auto& lit : default_catalog()) {
    const auto g = parse_group_literal(lit);
    const auto n = g.order();
    for (std::size_t sa = 1; sa <= n; ++sa) {
      for (std::size_t sb = 1; sb <= sa; ++sb) {
        const auto expected = oracle::binomial(n - 1, sa - 1) * oracle::binomial(n - 1, sb - 1);
        CHECK(count_pairs(g, sa, sb) == expected);
        if (n <= 8) {
          const auto pairs = collect(g, sa, sb);
          CHECK(pairs.size() == expected);
          CHECK(std::set<Pair>(pairs.begin(), pairs.end()).size() == pairs.size());
        }
      }
    }
  }
}

TEST_CASE("zero subsets come in lexicographic order with consecutive ranks") {
  const auto g = make_group({7});
  std::vector<V> seen;
  std::uint64_t expected_rank = 0;
  for_each_zero_subset(g, 3, [&](const GSet& s, std::uint64_t rank) {
    CHECK(rank == expected_rank++);
    CHECK(s.contains(Element{0}));
    CHECK(s.size() == 3);
    seen.push_back(s.indices());
  });
  CHECK(seen.size() == 15);
  CHECK(std::is_sorted(seen.begin(), seen.end()));
}

TEST_CASE("translation orbits on Z5 are covered exactly") {
  const auto g = make_group({5});
  std::set<Pair> normalized;
  for (std::uint64_t ma = 1; ma < 32; ++ma) {
    for (std::uint64_t mb = 1; mb < 32; ++mb) {
      const auto a = oracle::to_gset(g, oracle::from_mask(5, ma));
      const auto b = oracle::to_gset(g, oracle::from_mask(5, mb));
      if (a.size() != 2 || b.size() != 2) continue;
      // Every translate of A that contains 0, paired with every such translate of B.
      a.for_each([&](std::uint32_t x) {
        b.for_each([&](std::uint32_t y) {
          normalized.emplace(translate(a, g.neg(Element{x})).indices(),
                             translate(b, g.neg(Element{y})).indices());
        });
      });
    }
  }
  const auto pairs = collect(g, 2, 2);
  CHECK(std::set<Pair>(pairs.begin(), pairs.end()) == normalized);
}

TEST_CASE("size ranges and config parsing") {
  const auto c = parse_search_config(R"(# a comment
groups = Z5, z2 x z2   # trailing comment
size_a = 2-4
size_b = 2+
t = all
mode = equality-hunt
shards = 3
bounds = main,pollard
out = witnesses.jsonl
max_instances = 1000
)");
  CHECK(c.groups == std::vector<std::string>{"Z5", "Z2xZ2"});
  CHECK(c.size_a == SizeRange{2, 4});
  CHECK(c.size_b == SizeRange{2, 0});
  CHECK(c.t == SizeRange{1, 0});
  CHECK(c.mode == SearchMode::equality_hunt);
  CHECK(c.shards == 3);
  CHECK(c.bounds.main);
  CHECK(c.bounds.pollard);
  CHECK_FALSE(c.bounds.kneser);
  CHECK(c.out == "witnesses.jsonl");
  CHECK(c.max_instances == 1000);

  const auto again = parse_search_config(render_search_config(c));
  CHECK(render_search_config(again) == render_search_config(c));

  CHECK(parse_search_config("size_a = 3").size_a == SizeRange{3, 3});
  CHECK(parse_search_config("").groups == default_catalog());
  CHECK(parse_search_config("groups = default").groups.size() == 17);

  CHECK_THROWS_AS(parse_search_config("colour = red"), InvalidArgument);
  CHECK_THROWS_AS(parse_search_config("size_a"), InvalidArgument);
  CHECK_THROWS_AS(parse_search_config("size_a = 4-2"), InvalidArgument);
  CHECK_THROWS_AS(parse_search_config("size_a = 0"), InvalidArgument);
  CHECK_THROWS_AS(parse_search_config("shards = 0"), InvalidArgument);
  CHECK_THROWS_AS(parse_search_config("shards = many"), InvalidArgument);
  CHECK_THROWS_AS(parse_search_config("mode = fast"), InvalidArgument);
  CHECK_THROWS_AS(parse_search_config("groups = Z5, Q3"), InvalidArgument);
  CHECK_THROWS_AS(parse_search_config("bounds = everything"), InvalidArgument);

  for (auto m : {SearchMode::verify, SearchMode::equality_hunt, SearchMode::conjecture_scan}) {
    CHECK(parse_search_mode(to_string(m)) == m);
  }
  for (auto w : {WitnessCategory::violation, WitnessCategory::equality,
                 WitnessCategory::conjecture_equality}) {
    CHECK(parse_witness_category(to_string(w)) == w);
  }
}

TEST_CASE("default catalog") {
  const auto cat = default_catalog();
  CHECK(cat.size() == 17);
  std::size_t total_order = 0;
  for (const auto& lit : cat) {
    const auto g = parse_group_literal(lit);
    CHECK(g.literal() == lit);
    CHECK(g.order() <= 12);
    total_order += g.order();
  }
  CHECK(total_order == 78 + 4 + 8 + 9 + 8 + 12);
}

TEST_CASE("verify sweep over prime cyclic groups has no violations") {
  auto c = small_config({"Z2", "Z3", "Z5", "Z7"}, SearchMode::verify);
  const auto r = sweep(c);
  CHECK(r.summary.violations == 0);
  CHECK(r.witnesses.empty());
  CHECK(r.summary.pollard.violations == 0);
  CHECK(r.summary.pollard.evaluated == r.summary.instances);
  CHECK(r.summary.main.evaluated == r.summary.instances);
  CHECK(r.summary.strict_failures == 0);
  CHECK(r.summary.dicks_ivanov_failures == 0);
  CHECK(r.summary.kneser_failures == 0);
  std::uint64_t pairs = 0;
  std::uint64_t instances = 0;
  for (std::size_t n : {2, 3, 5, 7}) {
    for (std::size_t sa = 1; sa <= n; ++sa) {
      for (std::size_t sb = 1; sb <= sa; ++sb) {
        const auto k = oracle::binomial(n - 1, sa - 1) * oracle::binomial(n - 1, sb - 1);
        pairs += k;
        instances += k * sb;
      }
    }
  }
  CHECK(r.summary.pairs == pairs);
  CHECK(r.summary.instances == instances);
  CHECK(planned_instances(c) == instances);
}

TEST_CASE("equality hunt finds the Z9 witness") {
  auto c = small_config({"Z9"}, SearchMode::equality_hunt);
  c.size_a = SizeRange{3, 3};
  c.size_b = SizeRange{3, 3};
  c.t = SizeRange{2, 2};
  const auto r = sweep(c);
  CHECK(r.summary.violations == 0);
  const auto hit = std::find_if(r.witnesses.begin(), r.witnesses.end(), [](const SearchWitness& w) {
    return w.set_a == V{0, 1, 2} && w.set_b == V{0, 1, 2};
  });
  REQUIRE(hit != r.witnesses.end());
  CHECK(hit->category == WitnessCategory::equality);
  CHECK(hit->slack_main == 0);
  CHECK(hit->lhs == 8);
  CHECK(hit->rhs_main == 8);
  CHECK(hit->t == 2);
  CHECK(hit->group == "Z9");
  CHECK(std::is_sorted(r.witnesses.begin(), r.witnesses.end(),
                       [](const SearchWitness& x, const SearchWitness& y) { return x.key < y.key; }));
}

TEST_CASE("witnesses are reproducible from their record") {
  auto c = small_config({"Z8", "Z2xZ4"}, SearchMode::equality_hunt);
  const auto r = sweep(c);
  REQUIRE_FALSE(r.witnesses.empty());
  for (const auto& w : r.witnesses) {
    const auto g = parse_group_literal(w.group);
    const auto lat = subgroup_lattice(g);
    const auto a = GSet::from_indices(g, w.set_a);
    const auto b = GSet::from_indices(g, w.set_b);
    auto sel = BoundSelection{};
    sel.grynkiewicz = sel.dicks_ivanov = sel.kneser = false;
    const auto rep = evaluate_normalized(PairContext(a, b, &lat), w.t, sel);
    const auto again = make_witness(rep, w.category, w.key);
    CHECK(again.lhs == w.lhs);
    CHECK(again.alpha == w.alpha);
    CHECK(again.rhs_main == w.rhs_main);
    CHECK(again.slack_main == w.slack_main);
    CHECK(again.rhs_green_ruzsa == w.rhs_green_ruzsa);
    CHECK(again.strict_case == w.strict_case);
  }
}

TEST_CASE("sweeps are deterministic and shard invariant") {
  auto c = small_config({"Z6", "Z2xZ2", "Z7", "Z8"}, SearchMode::equality_hunt);
  const auto one = sweep(c);
  const auto repeat = sweep(c);
  CHECK(one.summary == repeat.summary);
  CHECK(one.witnesses == repeat.witnesses);

  for (std::size_t k : {2, 3, 5}) {
    c.shards = k;
    const auto merged = sweep(c);
    CHECK(merged.summary == one.summary);
    CHECK(merged.witnesses == one.witnesses);

    std::vector<SearchResult> parts;
    for (std::size_t s = k; s-- > 0;) parts.push_back(sweep_shard(c, s));
    const auto manual = merge_results(std::move(parts));
    CHECK(manual.summary == one.summary);
    CHECK(manual.witnesses == one.witnesses);
  }
  CHECK_THROWS_AS(sweep_shard(c, 5), InvalidArgument);
}

TEST_CASE("shard assignment is stable and balanced enough") {
  std::vector<std::size_t> hits(4, 0);
  for (std::uint64_t rank = 0; rank < 4000; ++rank) {
    const auto s = shard_of(3, 5, rank, 4);
    CHECK(s == shard_of(3, 5, rank, 4));
    ++hits[s];
  }
  for (auto h : hits) CHECK(h > 800);
  CHECK(shard_of(0, 1, 0, 1) == 0);
}

TEST_CASE("conjecture scan on a small catalog") {
  auto c = small_config({"Z4", "Z6", "Z8", "Z2xZ4"}, SearchMode::conjecture_scan);
  c.bounds = BoundSelection::none();
  const auto r = sweep(c);
  CHECK(r.summary.main.evaluated == r.summary.instances);
  CHECK(r.summary.conjecture_regime_instances > 0);
  CHECK(r.summary.violations == 0);
  for (const auto& w : r.witnesses) {
    CHECK(w.category == WitnessCategory::conjecture_equality);
    CHECK(w.t >= 3);
    CHECK(w.alpha == 2);
    CHECK(w.slack_main == 0);
  }
  CHECK(r.summary.conjecture_equalities == r.witnesses.size());
}

TEST_CASE("instance limit and config validation") {
  auto c = small_config({"Z12"}, SearchMode::verify);
  c.max_instances = 100;
  CHECK(planned_instances(c) > 100);
  CHECK_THROWS_AS(sweep(c), LimitExceeded);

  auto empty = small_config({}, SearchMode::verify);
  CHECK_THROWS_AS(sweep(empty), InvalidArgument);

  auto bad = small_config({"Z5"}, SearchMode::verify);
  bad.shards = 0;
  CHECK_THROWS_AS(sweep(bad), InvalidArgument);

  auto big = small_config({"Z600"}, SearchMode::verify);
  CHECK_THROWS_AS(sweep(big), LimitExceeded);

  auto narrow = small_config({"Z5"}, SearchMode::verify);
  narrow.size_a = SizeRange{2, 2};
  narrow.size_b = SizeRange{3, 3};
  const auto r = sweep(narrow);
  CHECK(r.summary.pairs == 0);
  CHECK(r.summary.instances == 0);
}

TEST_CASE("tallies merge associatively") {
  BoundTally a;
  a.record(3);
  a.record(0);
  BoundTally b;
  b.record(-1);
  BoundTally c;
  BoundTally left = a;
  left.merge(b);
  left.merge(c);
  BoundTally right = b;
  right.merge(c);
  BoundTally right_total = a;
  right_total.merge(right);
  CHECK(left == right_total);
  CHECK(left.evaluated == 3);
  CHECK(left.equalities == 1);
  CHECK(left.violations == 1);
  CHECK(left.min_slack == -1);
}
