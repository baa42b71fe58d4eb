#include "pollardkit/search.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <sstream>
#include <thread>

#include "pollardkit/error.hpp"
#include "pollardkit/lattice.hpp"

namespace pollard {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  const auto s = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidArgument("malformed " + std::string(what) + " '" + s + "'");
  }
  return v;
}

SizeRange parse_range(std::string_view text, std::string_view what) {
  const auto s = trim(text);
  if (s == "all") return {};
  SizeRange open_ended;
  if (!s.empty() && s.back() == '+') {
    open_ended.lo = parse_uint(std::string_view(s).substr(0, s.size() - 1), what);
    if (open_ended.lo < 1) throw InvalidArgument("bad " + std::string(what) + " range '" + s + "'");
    return open_ended;
  }
  const auto dash = s.find('-');
  SizeRange r;
  if (dash == std::string::npos) {
    r.lo = r.hi = parse_uint(s, what);
  } else {
    r.lo = parse_uint(std::string_view(s).substr(0, dash), what);
    r.hi = parse_uint(std::string_view(s).substr(dash + 1), what);
  }
  if (r.lo < 1 || r.hi < r.lo) throw InvalidArgument("bad " + std::string(what) + " range '" + s + "'");
  return r;
}

std::string render_range(const SizeRange& r) {
  if (r.hi == 0) return r.lo == 1 ? "all" : std::to_string(r.lo) + "+";
  if (r.lo == r.hi) return std::to_string(r.lo);
  return std::to_string(r.lo) + "-" + std::to_string(r.hi);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t upper(const SizeRange& r, std::size_t cap) {
  return r.hi == 0 ? cap : std::min(r.hi, cap);
}

struct PreparedGroup {
  std::string literal;
  GroupSpec group;
  SubgroupLattice lattice;
};

SearchConfig validated(const SearchConfig& config) {
  SearchConfig c = config;
  if (c.groups.empty()) throw InvalidArgument("search config lists no groups");
  if (c.shards < 1) throw InvalidArgument("shards must be >= 1");
  for (const auto* r : {&c.size_a, &c.size_b, &c.t}) {
    if (r->lo < 1 || (r->hi != 0 && r->hi < r->lo)) throw InvalidArgument("bad size range");
  }
  if (c.mode == SearchMode::conjecture_scan) c.bounds.main = true;
  return c;
}

std::vector<PreparedGroup> prepare(const SearchConfig& config) {
  std::vector<PreparedGroup> out;
  for (const auto& literal : config.groups) {
    auto g = parse_group_literal(literal, config.limits);
    auto lattice = subgroup_lattice(g, config.limits);
    out.push_back({g.literal(), g, std::move(lattice)});
  }
  return out;
}

bool has_equality(const BoundReport& r, const BoundSelection& sel) {
  return (sel.main && r.slack_main == 0) || (sel.green_ruzsa && r.slack_green_ruzsa == 0) ||
         (sel.pollard && r.slack_pollard == 0);
}

class ShardRunner {
 public:
  ShardRunner(const SearchConfig& config, const std::vector<PreparedGroup>& groups,
              std::size_t shard)
      : config_(config), groups_(groups), shard_(shard) {
    per_t_ = config.bounds;
    per_t_.grynkiewicz = per_t_.dicks_ivanov = per_t_.kneser = false;
    result_.summary.mode = std::string(to_string(config.mode));
    for (const auto& g : groups) result_.summary.groups.push_back(g.literal);
  }

  SearchResult run() {
    for (std::size_t gp = 0; gp < groups_.size(); ++gp) run_group(gp);
    result_.summary.witnesses = result_.witnesses.size();
    return std::move(result_);
  }

 private:
  void run_group(std::size_t gp) {
    const auto& prepared = groups_[gp];
    const auto& g = prepared.group;
    const auto n = g.order();
    for (std::size_t sa = config_.size_a.lo; sa <= upper(config_.size_a, n); ++sa) {
      const auto sb_hi = upper(config_.size_b, sa);
      if (config_.size_b.lo > sb_hi) continue;
      for_each_zero_subset(g, sa, [&](const GSet& a, std::uint64_t rank_a) {
        if (shard_of(gp, sa, rank_a, config_.shards) != shard_) return;
        for (std::size_t sb = config_.size_b.lo; sb <= sb_hi; ++sb) {
          for_each_zero_subset(g, sb, [&](const GSet& b, std::uint64_t rank_b) {
            run_pair(prepared, InstanceKey{gp, sa, sb, rank_a, rank_b, 0}, a, b);
          });
        }
      });
    }
  }

  void run_pair(const PreparedGroup& prepared, InstanceKey key, const GSet& a,
                const GSet& b) {
    const std::size_t t_lo = config_.t.lo;
    const std::size_t t_hi = upper(config_.t, b.size());
    if (t_lo > t_hi) return;
    auto& s = result_.summary;
    ++s.pairs;
    const PairContext ctx(a, b, &prepared.lattice);
    const auto& sel = config_.bounds;

    // Pair-level checks are reported at t = min(2, |B|).
    const std::size_t t_pair = std::min<std::size_t>(2, b.size());
    std::vector<std::string> pair_violations;
    std::optional<GrynkiewiczResult> gry;
    std::optional<KneserResult> kn;
    std::optional<DicksIvanovResult> di;
    if (sel.kneser) {
      kn = kneser_for(ctx);
      ++s.kneser_evaluated;
      if (kn->applicable) ++s.kneser_applicable;
      if (!kn->holds()) {
        ++s.kneser_failures;
        pair_violations.emplace_back("kneser");
      }
    }
    if (b.size() >= 2 && sel.grynkiewicz) {
      gry = grynkiewicz_for(ctx);
      s.grynkiewicz.record(gry->slack);
      if (gry->slack < 0) pair_violations.emplace_back("grynkiewicz");
    }
    if (b.size() >= 2 && sel.dicks_ivanov) {
      di = dicks_ivanov_for(ctx);
      ++s.dicks_ivanov_evaluated;
      if (di->condition_i) ++s.dicks_ivanov_by_i;
      else if (di->condition_ii) ++s.dicks_ivanov_by_ii;
      else {
        ++s.dicks_ivanov_failures;
        pair_violations.emplace_back("dicks_ivanov");
      }
    }

    bool pair_reported = pair_violations.empty();
    for (std::size_t t = t_lo; t <= t_hi; ++t) {
      key.t = t;
      ++s.instances;
      auto report = evaluate_normalized(ctx, t, per_t_);
      tally(report);
      if (t == t_pair) attach_pair_results(report, pair_violations, gry, kn, di, pair_reported);
      classify(report, key);
    }
    if (!pair_reported) {
      key.t = t_pair;
      auto report = evaluate_normalized(ctx, t_pair, per_t_);
      attach_pair_results(report, pair_violations, gry, kn, di, pair_reported);
      ++s.violations;
      result_.witnesses.push_back(make_witness(report, WitnessCategory::violation, key));
    }
  }

  static void attach_pair_results(BoundReport& report, const std::vector<std::string>& pv,
                                  const std::optional<GrynkiewiczResult>& gry,
                                  const std::optional<KneserResult>& kn,
                                  const std::optional<DicksIvanovResult>& di,
                                  bool& pair_reported) {
    report.grynkiewicz = gry;
    report.kneser = kn;
    report.dicks_ivanov = di;
    report.violations.insert(report.violations.end(), pv.begin(), pv.end());
    pair_reported = true;
  }

  void tally(const BoundReport& r) {
    auto& s = result_.summary;
    if (r.slack_main) {
      s.main.record(*r.slack_main);
      if (r.strict_case != StrictCase::none) {
        ++s.strict_instances;
        if (*r.slack_main < 1) ++s.strict_failures;
      }
    }
    if (r.slack_green_ruzsa) s.green_ruzsa.record(*r.slack_green_ruzsa);
    if (r.slack_pollard) s.pollard.record(*r.slack_pollard);
  }

  void classify(const BoundReport& r, const InstanceKey& key) {
    auto& s = result_.summary;
    const bool regime = r.t >= 3 && r.alpha == 2;
    if (regime && r.slack_main) {
      ++s.conjecture_regime_instances;
      if (*r.slack_main == 0) ++s.conjecture_equalities;
    }
    if (!r.violations.empty()) {
      ++s.violations;
      result_.witnesses.push_back(make_witness(r, WitnessCategory::violation, key));
      return;
    }
    if (config_.mode == SearchMode::conjecture_scan && regime && r.slack_main == 0) {
      result_.witnesses.push_back(make_witness(r, WitnessCategory::conjecture_equality, key));
    } else if (config_.mode == SearchMode::equality_hunt && has_equality(r, per_t_)) {
      result_.witnesses.push_back(make_witness(r, WitnessCategory::equality, key));
    }
  }

  const SearchConfig& config_;
  const std::vector<PreparedGroup>& groups_;
  std::size_t shard_;
  BoundSelection per_t_;
  SearchResult result_;
};

}  // namespace

std::string_view to_string(SearchMode mode) noexcept {
  switch (mode) {
    case SearchMode::verify: return "verify";
    case SearchMode::equality_hunt: return "equality-hunt";
    case SearchMode::conjecture_scan: return "conjecture-scan";
  }
  return "verify";
}

SearchMode parse_search_mode(std::string_view text) {
  const auto s = trim(text);
  if (s == "verify") return SearchMode::verify;
  if (s == "equality-hunt") return SearchMode::equality_hunt;
  if (s == "conjecture-scan") return SearchMode::conjecture_scan;
  throw InvalidArgument("unknown search mode '" + s + "'");
}

std::string_view to_string(WitnessCategory c) noexcept {
  switch (c) {
    case WitnessCategory::violation: return "violation";
    case WitnessCategory::equality: return "equality";
    case WitnessCategory::conjecture_equality: return "conjecture-equality";
  }
  return "violation";
}

WitnessCategory parse_witness_category(std::string_view text) {
  if (text == "violation") return WitnessCategory::violation;
  if (text == "equality") return WitnessCategory::equality;
  if (text == "conjecture-equality") return WitnessCategory::conjecture_equality;
  throw InvalidArgument("unknown witness category '" + std::string(text) + "'");
}

std::vector<std::string> default_catalog() {
  return {"Z1",  "Z2",  "Z3",  "Z4",    "Z5",    "Z6",    "Z7",        "Z8",   "Z9",
          "Z10", "Z11", "Z12", "Z2xZ2", "Z2xZ4", "Z3xZ3", "Z2xZ2xZ2", "Z2xZ6"};
}

SearchConfig default_search_config() {
  SearchConfig c;
  c.groups = default_catalog();
  return c;
}

SearchConfig parse_search_config(std::string_view text) {
  SearchConfig c = default_search_config();
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const auto key = trim(std::string_view(body).substr(0, eq));
    const auto value = trim(std::string_view(body).substr(eq + 1));
    if (key == "groups") {
      if (value == "default") {
        c.groups = default_catalog();
      } else {
        c.groups.clear();
        std::size_t pos = 0;
        while (pos <= value.size()) {
          const auto next = std::min(value.find(',', pos), value.size());
          const auto item = trim(std::string_view(value).substr(pos, next - pos));
          c.groups.push_back(parse_group_literal(item, c.limits).literal());
          pos = next + 1;
        }
      }
    } else if (key == "size_a") {
      c.size_a = parse_range(value, key);
    } else if (key == "size_b") {
      c.size_b = parse_range(value, key);
    } else if (key == "t") {
      c.t = parse_range(value, key);
    } else if (key == "mode") {
      c.mode = parse_search_mode(value);
    } else if (key == "shards") {
      c.shards = parse_uint(value, key);
      if (c.shards < 1) throw InvalidArgument("shards must be >= 1");
    } else if (key == "bounds") {
      c.bounds = parse_bound_selection(value);
    } else if (key == "out") {
      c.out = value;
    } else if (key == "max_instances") {
      c.max_instances = parse_uint(value, key);
    } else {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": unknown key '" +
                            key + "'");
    }
  }
  return c;
}

std::string render_search_config(const SearchConfig& c) {
  std::string out = "groups = ";
  for (std::size_t i = 0; i < c.groups.size(); ++i) {
    if (i > 0) out += ',';
    out += c.groups[i];
  }
  out += "\nsize_a = " + render_range(c.size_a);
  out += "\nsize_b = " + render_range(c.size_b);
  out += "\nt = " + render_range(c.t);
  out += "\nmode = " + std::string(to_string(c.mode));
  out += "\nshards = " + std::to_string(c.shards);
  out += "\nbounds = " + to_string(c.bounds);
  if (!c.out.empty()) out += "\nout = " + c.out;
  if (c.max_instances != 0) out += "\nmax_instances = " + std::to_string(c.max_instances);
  out += '\n';
  return out;
}

SearchWitness make_witness(const BoundReport& r, WitnessCategory category,
                           const InstanceKey& key) {
  SearchWitness w;
  w.group = r.group().literal();
  w.set_a = r.set_a.indices();
  w.set_b = r.set_b.indices();
  w.t = r.t;
  w.lhs = r.lhs;
  w.alpha = r.alpha;
  w.rhs_main = r.rhs_main;
  w.slack_main = r.slack_main;
  w.rhs_green_ruzsa = r.rhs_green_ruzsa;
  w.slack_green_ruzsa = r.slack_green_ruzsa;
  w.rhs_pollard = r.rhs_pollard;
  w.slack_pollard = r.slack_pollard;
  if (r.grynkiewicz) {
    w.rhs_grynkiewicz = r.grynkiewicz->rhs;
    w.slack_grynkiewicz = r.grynkiewicz->slack;
  }
  w.strict_case = r.strict_case;
  w.category = category;
  w.violations = r.violations;
  w.key = key;
  return w;
}

void BoundTally::record(std::int64_t slack) {
  ++evaluated;
  if (slack == 0) ++equalities;
  if (slack < 0) ++violations;
  min_slack = min_slack ? std::min(*min_slack, slack) : slack;
}

void BoundTally::merge(const BoundTally& o) {
  evaluated += o.evaluated;
  equalities += o.equalities;
  violations += o.violations;
  if (o.min_slack) min_slack = min_slack ? std::min(*min_slack, *o.min_slack) : *o.min_slack;
}

void SearchSummary::merge(const SearchSummary& o) {
  if (mode.empty()) mode = o.mode;
  if (groups.empty()) groups = o.groups;
  pairs += o.pairs;
  instances += o.instances;
  main.merge(o.main);
  green_ruzsa.merge(o.green_ruzsa);
  pollard.merge(o.pollard);
  grynkiewicz.merge(o.grynkiewicz);
  strict_instances += o.strict_instances;
  strict_failures += o.strict_failures;
  dicks_ivanov_evaluated += o.dicks_ivanov_evaluated;
  dicks_ivanov_by_i += o.dicks_ivanov_by_i;
  dicks_ivanov_by_ii += o.dicks_ivanov_by_ii;
  dicks_ivanov_failures += o.dicks_ivanov_failures;
  kneser_evaluated += o.kneser_evaluated;
  kneser_applicable += o.kneser_applicable;
  kneser_failures += o.kneser_failures;
  conjecture_regime_instances += o.conjecture_regime_instances;
  conjecture_equalities += o.conjecture_equalities;
  violations += o.violations;
  witnesses += o.witnesses;
}

std::uint64_t count_pairs(const GroupSpec& group, std::size_t size_a, std::size_t size_b) {
  const auto n = group.order();
  if (size_b < 1 || size_b > size_a || size_a > n) {
    throw InvalidArgument("sizes must satisfy 1 <= size_b <= size_a <= |G|");
  }
  return binomial(n - 1, size_a - 1) * binomial(n - 1, size_b - 1);
}

void for_each_zero_subset(const GroupSpec& group, std::size_t k,
                          const std::function<void(const GSet&, std::uint64_t)>& fn) {
  const auto n = group.order();
  if (k < 1 || k > n) throw InvalidArgument("subset size out of range");
  const std::size_t m = k - 1;  // members chosen from 1..n-1
  std::vector<std::uint32_t> pick(m);
  for (std::size_t i = 0; i < m; ++i) pick[i] = static_cast<std::uint32_t>(i + 1);
  std::uint64_t rank = 0;
  while (true) {
    GSet s = GSet::singleton(group, group.identity());
    for (const auto x : pick) s.insert(Element{x});
    fn(s, rank++);
    // Advance to the next combination in lexicographic order.
    std::size_t i = m;
    while (i > 0 && pick[i - 1] == n - m + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
}

void enumerate_pairs(const GroupSpec& group, std::size_t size_a, std::size_t size_b,
                     const std::function<void(const GSet&, const GSet&)>& fn) {
  count_pairs(group, size_a, size_b);  // validates sizes
  std::vector<GSet> bs;
  for_each_zero_subset(group, size_b, [&](const GSet& b, std::uint64_t) { bs.push_back(b); });
  for_each_zero_subset(group, size_a, [&](const GSet& a, std::uint64_t) {
    for (const auto& b : bs) fn(a, b);
  });
}

std::size_t shard_of(std::size_t group_position, std::size_t size_a, std::uint64_t rank_a,
                     std::size_t shards) {
  if (shards <= 1) return 0;
  const auto h = splitmix64((static_cast<std::uint64_t>(group_position) << 48) ^
                            (static_cast<std::uint64_t>(size_a) << 36) ^ rank_a);
  return static_cast<std::size_t>(h % shards);
}

std::uint64_t planned_instances(const SearchConfig& raw) {
  const auto config = validated(raw);
  std::uint64_t total = 0;
  for (const auto& literal : config.groups) {
    const auto g = parse_group_literal(literal, config.limits);
    const auto n = g.order();
    for (std::size_t sa = config.size_a.lo; sa <= upper(config.size_a, n); ++sa) {
      for (std::size_t sb = config.size_b.lo; sb <= upper(config.size_b, sa); ++sb) {
        const auto t_hi = upper(config.t, sb);
        if (config.t.lo > t_hi) continue;
        total += count_pairs(g, sa, sb) * (t_hi - config.t.lo + 1);
      }
    }
  }
  return total;
}

SearchResult sweep_shard(const SearchConfig& raw, std::size_t shard) {
  const auto config = validated(raw);
  if (shard >= config.shards) throw InvalidArgument("shard index out of range");
  const auto groups = prepare(config);
  return ShardRunner(config, groups, shard).run();
}

SearchResult merge_results(std::vector<SearchResult> parts) {
  SearchResult out;
  for (auto& p : parts) {
    out.summary.merge(p.summary);
    out.witnesses.insert(out.witnesses.end(), std::make_move_iterator(p.witnesses.begin()),
                         std::make_move_iterator(p.witnesses.end()));
  }
  std::stable_sort(out.witnesses.begin(), out.witnesses.end(),
                   [](const SearchWitness& l, const SearchWitness& r) {
                     return std::tie(l.key, l.category) < std::tie(r.key, r.category);
                   });
  out.summary.witnesses = out.witnesses.size();
  return out;
}

SearchResult sweep(const SearchConfig& raw) {
  const auto config = validated(raw);
  if (config.max_instances != 0) {
    const auto planned = planned_instances(config);
    if (planned > config.max_instances) {
      throw LimitExceeded("sweep would evaluate " + std::to_string(planned) +
                          " instances, above max_instances = " +
                          std::to_string(config.max_instances));
    }
  }
  const auto groups = prepare(config);
  std::vector<SearchResult> parts(config.shards);
  if (config.shards == 1) {
    parts[0] = ShardRunner(config, groups, 0).run();
  } else {
    const auto hw = std::max(1U, std::thread::hardware_concurrency());
    const auto workers = std::min<std::size_t>(config.shards, hw);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (auto s = next.fetch_add(1); s < config.shards; s = next.fetch_add(1)) {
            parts[s] = ShardRunner(config, groups, s).run();
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return merge_results(std::move(parts));
}

}  // namespace pollard
