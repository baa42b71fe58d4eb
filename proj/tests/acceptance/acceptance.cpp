// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "pollardkit/bounds.hpp"
#include "pollardkit/certificate.hpp"
#include "pollardkit/io.hpp"
#include "pollardkit/search.hpp"
#include "pollardkit/setops.hpp"
#include "pollardkit/spectrum.hpp"
#include "support/oracles.hpp"

using namespace pollard;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& what, const std::string& detail,
            double seconds) {
  if (!ok) ++failures;
  std::printf("[%s] %s %s: %s (%.1fs)\n", ok ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str(), seconds);
  std::fflush(stdout);
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<GroupSpec> catalog_up_to(std::size_t max_order) {
  std::vector<GroupSpec> out;
  for (const auto& lit : default_catalog()) {
    auto g = parse_group_literal(lit);
    if (g.order() <= max_order) out.push_back(std::move(g));
  }
  return out;
}

std::uint64_t expected_pairs(const std::vector<GroupSpec>& groups) {
  std::uint64_t total = 0;
  for (const auto& g : groups) {
    const auto n = g.order();
    for (std::size_t sa = 1; sa <= n; ++sa) {
      for (std::size_t sb = 1; sb <= sa; ++sb) {
        total += oracle::binomial(n - 1, sa - 1) * oracle::binomial(n - 1, sb - 1);
      }
    }
  }
  return total;
}

std::int64_t s_or_zero(const GSet& a, const GSet& b, std::size_t t) {
  if (a.empty() || b.empty() || t == 0) return 0;
  return compute_spectrum(a, b).partial_sum(t);
}

// AC1 + AC2: one verify sweep over the whole default catalog.
void exhaustive_verification() {
  Timer timer;
  SearchConfig config = default_search_config();
  config.shards = 4;
  const auto result = sweep(config);
  const auto& s = result.summary;
  const auto groups = catalog_up_to(12);
  const bool complete = s.pairs == expected_pairs(groups) && groups.size() == 17;
  const bool clean = s.violations == 0 && s.main.violations == 0 &&
                     s.green_ruzsa.violations == 0 && s.pollard.violations == 0 &&
                     s.grynkiewicz.violations == 0 && s.dicks_ivanov_failures == 0 &&
                     s.kneser_failures == 0 && result.witnesses.empty();
  const bool all_evaluated = s.main.evaluated == s.instances &&
                             s.dicks_ivanov_evaluated == s.grynkiewicz.evaluated &&
                             s.pollard.evaluated > 0;
  std::ostringstream d1;
  d1 << s.pairs << " pairs, " << s.instances << " instances; violations main "
     << s.main.violations << ", green_ruzsa " << s.green_ruzsa.violations << ", pollard "
     << s.pollard.violations << " (of " << s.pollard.evaluated << "), grynkiewicz "
     << s.grynkiewicz.violations << ", dicks_ivanov " << s.dicks_ivanov_failures
     << ", kneser " << s.kneser_failures;
  const double elapsed = timer.seconds();
  report("AC1", complete && clean && all_evaluated, "exhaustive theorem verification", d1.str(),
         elapsed);

  std::ostringstream d2;
  d2 << s.strict_instances << " strict instances, " << s.strict_failures
     << " with slack_main < 1";
  report("AC2", s.strict_instances > 0 && s.strict_failures == 0, "strictness verification",
         d2.str(), 0.0);
}

// AC3: identities, exhaustive over every pair of nonempty subsets, |G| <= 10.
void identity_suite() {
  Timer timer;
  std::uint64_t pairs = 0;
  std::uint64_t translation = 0, total = 0, split = 0, subset = 0, saturation = 0, kneser = 0;
  std::uint64_t saturation_cases = 0, kneser_cases = 0;
  for (const auto& g : catalog_up_to(10)) {
    const auto n = static_cast<std::uint32_t>(g.order());
    const std::uint64_t masks = std::uint64_t{1} << n;
    std::vector<GSet> subsets;
    subsets.reserve(masks - 1);
    for (std::uint64_t m = 1; m < masks; ++m) subsets.push_back(oracle::to_gset(g, oracle::from_mask(n, m)));

    for (const auto& a : subsets) {
      for (const auto& b : subsets) {
        ++pairs;
        const auto s = compute_spectrum(a, b);
        const auto tmax = std::min(a.size(), b.size());
        const auto& r = s.r();

        // S_|B| = |A||B| (and symmetrically S_|A|).
        if (s.partial_sum(b.size()) != static_cast<std::int64_t>(a.size() * b.size()) ||
            s.partial_sum(a.size()) != static_cast<std::int64_t>(a.size() * b.size())) {
          ++total;
        }

        // Translating A by z moves every N_t by z; translating B keeps |N_t|.
        for (std::uint32_t z = 1; z < n; ++z) {
          const auto ra = compute_spectrum(translate(a, Element{z}), b).r();
          const auto rb = compute_spectrum(a, translate(b, Element{z})).r();
          bool ok = true;
          for (std::uint32_t x = 0; x < n && ok; ++x) {
            const auto xz = g.add_index(x, z);
            ok = ra[xz] == r[x] && rb[xz] == r[x];
          }
          if (!ok) ++translation;
        }

        const auto meet = set_intersection(a, b);
        const auto join = set_union(a, b);
        const auto left = set_difference(a, b);
        const auto right = set_difference(b, a);
        const bool has_meet = !meet.empty();
        const bool has_diff = !left.empty() && !right.empty();
        std::optional<Spectrum> sm;
        std::optional<Spectrum> sd;
        if (has_meet) sm = compute_spectrum(meet, join);
        if (has_diff) sd = compute_spectrum(left, right);
        for (std::size_t t = 1; t <= tmax; ++t) {
          if (has_meet && !sm->n_t(t).is_subset_of(s.n_t(t))) ++subset;
          for (std::size_t v = 0; v <= t; ++v) {
            const auto lhs = s.partial_sum(t);
            const std::int64_t first = (has_meet && v > 0) ? sm->partial_sum(v) : 0;
            const std::int64_t second = (has_diff && t - v > 0) ? sd->partial_sum(t - v) : 0;
            if (lhs < first + second) ++split;
          }
        }

        if (a.size() + b.size() > n) {
          ++saturation_cases;
          if (s.min_value() < a.size() + b.size() - n) ++saturation;
        }

        const auto k = check_kneser(a, b);
        if (k.applicable) {
          ++kneser_cases;
          if (!k.holds()) ++kneser;
        }
      }
    }
  }
  std::ostringstream d;
  d << pairs << " pairs; failures total-count " << total << ", translation " << translation << ", split "
    << split << ", subset " << subset << ", saturation " << saturation << "/" << saturation_cases
    << ", Kneser " << kneser << "/" << kneser_cases;
  report("AC3", translation + total + split + subset + saturation + kneser == 0 && kneser_cases > 0,
         "identity suite", d.str(), timer.seconds());
}

// AC4: double loop vs intersection route vs brute force on random instances.
void oracle_equivalence() {
  Timer timer;
  std::mt19937_64 rng(0x5eed2026);
  const auto groups = catalog_up_to(12);
  const std::size_t rounds = 5000;
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < rounds; ++i) {
    const auto& g = groups[i % groups.size()];
    const auto ref = oracle::of(g);
    const auto n = static_cast<std::uint32_t>(g.order());
    const auto sa = oracle::random_nonempty(rng, n);
    const auto sb = oracle::random_nonempty(rng, n);
    const auto a = oracle::to_gset(g, sa);
    const auto b = oracle::to_gset(g, sb);
    const auto s = compute_spectrum(a, b);
    const auto r = oracle::spectrum(ref, sa, sb);
    bool ok = s == compute_spectrum_by_intersection(a, b) && s.r() == r;
    for (std::size_t t = 1; t <= std::min(a.size(), b.size()) + 1; ++t) {
      ok = ok && oracle::to_set(s.n_t(t)) == oracle::threshold(r, static_cast<std::uint32_t>(t));
    }
    if (!ok) ++mismatches;
  }
  std::ostringstream d;
  d << rounds << " random instances over " << groups.size() << " groups, " << mismatches
    << " mismatches";
  report("AC4", mismatches == 0, "oracle equivalence", d.str(), timer.seconds());
}

// AC5: certificates for every normalized catalog instance with |G| <= 10.
void certificates() {
  Timer timer;
  std::uint64_t built = 0;
  std::uint64_t bad = 0;
  for (const auto& g : catalog_up_to(10)) {
    const auto lat = subgroup_lattice(g);
    for (std::size_t sa = 1; sa <= g.order(); ++sa) {
      for (std::size_t sb = 1; sb <= sa; ++sb) {
        enumerate_pairs(g, sa, sb, [&](const GSet& a, const GSet& b) {
          const auto s = compute_spectrum(a, b);
          const auto al = static_cast<std::int64_t>(alpha(a, b, lat));
          for (std::size_t t = 1; t <= sb; ++t) {
            ++built;
            const auto cert = build_certificate(a, b, t, lat);
            const auto rhs = main_rhs(static_cast<std::int64_t>(sa), static_cast<std::int64_t>(sb),
                                      static_cast<std::int64_t>(t), al);
            const bool ok = verify_certificate(cert, lat).ok && rhs <= cert.claimed_bound &&
                            cert.claimed_bound <= s.partial_sum(t) && cert.depth() <= sb;
            if (!ok) {
              if (bad == 0) {
                std::printf("  first failure: %s A=%s B=%s t=%zu\n", g.literal().c_str(),
                            a.literal().c_str(), b.literal().c_str(), t);
              }
              ++bad;
            }
          }
        });
      }
    }
  }
  std::ostringstream d;
  d << built << " certificates built and verified, " << bad << " failures";
  report("AC5", bad == 0 && built > 0, "certificate soundness and tightness", d.str(),
         timer.seconds());
}

// AC6: the two known equality families.
void known_witnesses() {
  Timer timer;
  const auto z9 = make_group({9});
  const auto a9 = GSet::from_indices(z9, {0, 1, 2});
  const auto r9 = check_main(a9, a9, 2, subgroup_lattice(z9));
  const bool z9_ok = r9.lhs == 8 && r9.rhs_main == 8 && r9.alpha == 1;

  const auto z7 = make_group({7});
  const auto a7 = GSet::from_indices(z7, {0, 1, 2});
  std::ostringstream d;
  d << "Z9 t=2 lhs " << r9.lhs << " rhs_main " << *r9.rhs_main << " alpha " << *r9.alpha
    << "; Z7 Pollard";
  bool z7_ok = true;
  const std::int64_t expected[] = {5, 8, 9};
  for (std::size_t t = 1; t <= 3; ++t) {
    const auto r = check_pollard(a7, a7, t);
    z7_ok = z7_ok && r.lhs == expected[t - 1] && r.rhs_pollard == expected[t - 1];
    d << " t=" << t << " " << r.lhs << "/" << *r.rhs_pollard;
  }
  report("AC6", z9_ok && z7_ok, "known equality witnesses", d.str(), timer.seconds());
}

// AC7: conjecture scan over the catalog; every witness must reproduce.
void conjecture_scan() {
  Timer timer;
  SearchConfig config = default_search_config();
  config.mode = SearchMode::conjecture_scan;
  config.bounds = BoundSelection::none();
  config.t = SizeRange{3, 0};
  config.shards = 4;
  const auto result = sweep(config);
  const auto& s = result.summary;
  bool reproducible = true;
  for (const auto& w : result.witnesses) {
    const auto g = parse_group_literal(w.group);
    const auto rep = check_main(GSet::from_indices(g, w.set_a), GSet::from_indices(g, w.set_b),
                                w.t, subgroup_lattice(g));
    reproducible = reproducible && rep.lhs == w.lhs && rep.rhs_main == w.rhs_main &&
                   rep.alpha == 2 && rep.slack_main == 0;
  }
  std::ostringstream d;
  d << s.conjecture_regime_instances << " instances with t >= 3 and alpha = 2, "
    << s.conjecture_equalities << " equalities, " << result.witnesses.size()
    << " witnesses emitted, violations " << s.violations;
  const bool ok = s.conjecture_regime_instances > 0 && s.violations == 0 && reproducible &&
                  s.conjecture_equalities == result.witnesses.size();
  report("AC7", ok, "conjecture scan", d.str(), timer.seconds());
}

// AC8: byte-identical JSON lines across runs and shard counts.
void determinism() {
  Timer timer;
  SearchConfig config = default_search_config();
  config.groups = {"Z8", "Z9", "Z10", "Z2xZ4", "Z3xZ3"};
  config.mode = SearchMode::equality_hunt;
  const auto render = [](const SearchResult& r) {
    std::ostringstream out;
    write_json_lines(out, r.witnesses);
    return out.str() + to_json(r.summary).dump() + "\n";
  };
  config.shards = 1;
  const auto first = render(sweep(config));
  const auto second = render(sweep(config));
  bool ok = first == second && !first.empty();
  std::ostringstream d;
  d << "1-shard runs identical: " << (first == second ? "yes" : "no");
  for (std::size_t k : {2, 3, 7}) {
    config.shards = k;
    const auto sharded = render(sweep(config));
    const bool same = sharded == first;
    ok = ok && same;
    d << "; " << k << "-shard merge identical: " << (same ? "yes" : "no");
  }
  d << "; " << std::count(first.begin(), first.end(), '\n') - 1 << " witness lines";
  report("AC8", ok, "determinism and shard invariance", d.str(), timer.seconds());
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void()>> criteria[] = {
      {"AC1/AC2", exhaustive_verification}, {"AC3", identity_suite},
      {"AC4", oracle_equivalence},          {"AC5", certificates},
      {"AC6", known_witnesses},             {"AC7", conjecture_scan},
      {"AC8", determinism}};
  for (const auto& [id, fn] : criteria) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, false, "aborted", e.what(), 0.0);
    }
  }
  std::printf("%s: %d criterion failure(s)\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
