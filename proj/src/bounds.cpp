#include "pollardkit/bounds.hpp"

#include <algorithm>

#include "pollardkit/error.hpp"
#include "pollardkit/setops.hpp"

namespace pollard {

namespace {

std::int64_t as_int(std::size_t n) { return static_cast<std::int64_t>(n); }

void require_nonempty_pair(const GSet& a, const GSet& b) {
  require_same_group(a, b);
  if (a.empty() || b.empty()) throw InvalidArgument("operands must be nonempty");
}

void require_level(const GSet& a, const GSet& b, std::size_t t) {
  if (t < 1 || t > std::min(a.size(), b.size())) {
    throw InvalidArgument("t = " + std::to_string(t) + " outside [1, min(|A|,|B|)] = [1, " +
                          std::to_string(std::min(a.size(), b.size())) + "]");
  }
}

void require_normalized(const GSet& a, const GSet& b) {
  const auto zero = a.group().identity();
  if (!a.contains(zero) || !b.contains(zero)) {
    throw InvalidArgument("main bound needs 0 in both A and B; translate first");
  }
  if (a.size() < b.size()) throw InvalidArgument("main bound needs |A| >= |B|");
}

void require_di_sizes(const GSet& a, const GSet& b) {
  if (b.size() < 2 || a.size() < b.size()) {
    throw InvalidArgument("needs 2 <= |B| <= |A|, got |A| = " + std::to_string(a.size()) +
                          ", |B| = " + std::to_string(b.size()));
  }
}

std::int64_t prime_alpha(const GSet& sum) {
  return sum.size() == sum.group().order() ? as_int(sum.size()) : 1;
}

}  // namespace

std::string_view to_string(StrictCase c) noexcept {
  switch (c) {
    case StrictCase::none: return "none";
    case StrictCase::I: return "I";
    case StrictCase::II: return "II";
    case StrictCase::I_and_II: return "I+II";
  }
  return "none";
}

StrictCase parse_strict_case(std::string_view text) {
  if (text == "none") return StrictCase::none;
  if (text == "I") return StrictCase::I;
  if (text == "II") return StrictCase::II;
  if (text == "I+II") return StrictCase::I_and_II;
  throw InvalidArgument("unknown strict case '" + std::string(text) + "'");
}

StrictCase strict_case_for(std::int64_t alpha, std::int64_t t) noexcept {
  const bool case_i = alpha >= 3 && t >= 2;
  const bool case_ii = alpha >= 2 && t == 2;
  if (case_i && case_ii) return StrictCase::I_and_II;
  if (case_i) return StrictCase::I;
  if (case_ii) return StrictCase::II;
  return StrictCase::none;
}

std::int64_t correction_w(std::int64_t alpha) noexcept { return std::min<std::int64_t>(alpha - 1, 1); }

std::int64_t main_rhs(std::int64_t card_a, std::int64_t card_b, std::int64_t t,
                      std::int64_t alpha) noexcept {
  const auto w = correction_w(alpha);
  return t * (card_a + card_b - t - alpha + 1 + w) - w;
}

std::int64_t green_ruzsa_rhs(std::int64_t order, std::int64_t card_a, std::int64_t card_b,
                             std::int64_t t, std::int64_t mu) noexcept {
  return t * std::min(order, card_a + card_b - mu - t + 1);
}

std::int64_t pollard_rhs(std::int64_t p, std::int64_t card_a, std::int64_t card_b,
                         std::int64_t t) noexcept {
  return t * std::min(p, card_a + card_b - t);
}

std::int64_t grynkiewicz_rhs(std::int64_t card_a, std::int64_t card_b,
                             std::int64_t period_size) noexcept {
  return 2 * (card_a + card_b - std::max<std::int64_t>(2, period_size));
}

BoundSelection parse_bound_selection(std::string_view text) {
  if (text == "all") return {};
  auto out = BoundSelection::none();
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = std::min(text.find(',', pos), text.size());
    auto name = text.substr(pos, next - pos);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (name == "main") out.main = true;
    else if (name == "green_ruzsa") out.green_ruzsa = true;
    else if (name == "pollard") out.pollard = true;
    else if (name == "grynkiewicz") out.grynkiewicz = true;
    else if (name == "dicks_ivanov") out.dicks_ivanov = true;
    else if (name == "kneser") out.kneser = true;
    else throw InvalidArgument("unknown bound '" + std::string(name) + "'");
    pos = next + 1;
  }
  return out;
}

std::string to_string(const BoundSelection& s) {
  if (s == BoundSelection{}) return "all";
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(s.main, "main");
  add(s.green_ruzsa, "green_ruzsa");
  add(s.pollard, "pollard");
  add(s.grynkiewicz, "grynkiewicz");
  add(s.dicks_ivanov, "dicks_ivanov");
  add(s.kneser, "kneser");
  return out;
}

std::string_view DicksIvanovResult::holding() const noexcept {
  if (condition_i) return "i";
  if (condition_ii) return "ii";
  return "neither";
}

PairContext::PairContext(GSet a, GSet b, const SubgroupLattice* lattice)
    : a_(std::move(a)),
      b_(std::move(b)),
      spectrum_(compute_spectrum(a_, b_)),
      sumset_(spectrum_.n_t(1)),
      lattice_(lattice) {
  const auto& g = a_.group();
  if (lattice_ != nullptr) {
    if (!(lattice_->group() == g)) {
      throw GroupMismatch("lattice of " + lattice_->group().literal() + " used for " +
                          g.literal());
    }
    alpha_ = as_int(largest_coset_in(sumset_, *lattice_));
    if (g.order() >= 2) mu_ = as_int(pollard::mu(g, *lattice_));
  } else if (g.is_prime_order()) {
    alpha_ = prime_alpha(sumset_);
    mu_ = 1;
  }
}

KneserResult kneser_for(const PairContext& ctx) {
  KneserResult res;
  const auto& sum = ctx.sumset();
  const GSet h = period(sum);
  res.sumset_size = sum.size();
  res.period_size = h.size();
  res.ah_size = sumset(ctx.a(), h).size();
  res.bh_size = sumset(ctx.b(), h).size();
  res.applicable = sum.size() + 2 <= ctx.a().size() + ctx.b().size();
  if (res.applicable) {
    res.period_nontrivial = h.size() >= 2;
    res.kn1_holds = as_int(sum.size()) ==
                    as_int(res.ah_size) + as_int(res.bh_size) - as_int(h.size());
    // N_2 is a subset of N_1 = A+B, so equal sizes mean equal sets.
    res.kn2_holds = ctx.spectrum().n_t_size(2) == sum.size();
  }
  return res;
}

GrynkiewiczResult grynkiewicz_for(const PairContext& ctx) {
  GrynkiewiczResult res;
  const GSet n2 = ctx.spectrum().n_t(2);
  res.n2_empty = n2.empty();
  res.period_size = period(n2).size();
  res.lhs = ctx.spectrum().partial_sum(2);
  res.rhs = grynkiewicz_rhs(as_int(ctx.a().size()), as_int(ctx.b().size()),
                            as_int(res.period_size));
  res.slack = res.lhs - res.rhs;
  return res;
}

DicksIvanovResult dicks_ivanov_for(const PairContext& ctx) {
  if (ctx.lattice() == nullptr) throw InvalidArgument("Dicks-Ivanov check needs a lattice");
  DicksIvanovResult res;
  res.lhs = ctx.spectrum().partial_sum(2);
  res.rhs = 2 * (as_int(ctx.a().size()) + as_int(ctx.b().size()) - 2);
  res.condition_i = res.lhs >= res.rhs;
  res.largest_coset_in_n2 = largest_coset_in(ctx.spectrum().n_t(2), *ctx.lattice());
  res.condition_ii = res.largest_coset_in_n2 >= 3;
  return res;
}

BoundReport evaluate_normalized(const PairContext& ctx, std::size_t t,
                                const BoundSelection& selection) {
  const auto& a = ctx.a();
  const auto& b = ctx.b();
  const auto& g = a.group();
  require_level(a, b, t);

  BoundReport report;
  report.set_a = a;
  report.set_b = b;
  report.t = t;
  report.lhs = ctx.spectrum().partial_sum(t);
  report.alpha = ctx.alpha();
  if (report.alpha) report.w = correction_w(*report.alpha);
  report.mu = ctx.mu();

  const auto ca = as_int(a.size());
  const auto cb = as_int(b.size());
  const auto tt = as_int(t);

  if (selection.main) {
    require_normalized(a, b);
    if (!report.alpha) throw InvalidArgument("main bound needs a subgroup lattice");
    report.rhs_main = main_rhs(ca, cb, tt, *report.alpha);
    report.slack_main = report.lhs - *report.rhs_main;
    report.strict_case = strict_case_for(*report.alpha, tt);
    if (*report.slack_main < 0) report.violations.emplace_back("main");
    if (report.strict_case != StrictCase::none && *report.slack_main < 1) {
      report.violations.emplace_back("main_strict");
    }
  }
  if (selection.green_ruzsa && g.order() >= 2 && report.mu) {
    report.rhs_green_ruzsa = green_ruzsa_rhs(as_int(g.order()), ca, cb, tt, *report.mu);
    report.slack_green_ruzsa = report.lhs - *report.rhs_green_ruzsa;
    if (*report.slack_green_ruzsa < 0) report.violations.emplace_back("green_ruzsa");
  }
  if (selection.pollard && g.is_prime_order()) {
    report.rhs_pollard = pollard_rhs(as_int(g.order()), ca, cb, tt);
    report.slack_pollard = report.lhs - *report.rhs_pollard;
    if (*report.slack_pollard < 0) report.violations.emplace_back("pollard");
  }
  const bool di_sizes = b.size() >= 2 && a.size() >= b.size();
  if (selection.grynkiewicz && di_sizes) {
    report.grynkiewicz = grynkiewicz_for(ctx);
    if (report.grynkiewicz->slack < 0) report.violations.emplace_back("grynkiewicz");
  }
  if (selection.dicks_ivanov && di_sizes && ctx.lattice() != nullptr) {
    report.dicks_ivanov = dicks_ivanov_for(ctx);
    if (!report.dicks_ivanov->holds()) report.violations.emplace_back("dicks_ivanov");
  }
  if (selection.kneser) {
    report.kneser = kneser_for(ctx);
    if (!report.kneser->holds()) report.violations.emplace_back("kneser");
  }
  return report;
}

BoundReport check_main(const GSet& a, const GSet& b, std::size_t t,
                       const SubgroupLattice& lattice) {
  require_nonempty_pair(a, b);
  require_normalized(a, b);
  require_level(a, b, t);
  auto sel = BoundSelection::none();
  sel.main = true;
  return evaluate_normalized(PairContext(a, b, &lattice), t, sel);
}

BoundReport check_green_ruzsa(const GSet& a, const GSet& b, std::size_t t,
                              const SubgroupLattice& lattice) {
  require_nonempty_pair(a, b);
  if (a.group().order() < 2) {
    throw InvalidArgument("Green-Ruzsa bound is not evaluated on the trivial group");
  }
  require_level(a, b, t);
  auto sel = BoundSelection::none();
  sel.green_ruzsa = true;
  return evaluate_normalized(PairContext(a, b, &lattice), t, sel);
}

BoundReport check_pollard(const GSet& a, const GSet& b, std::size_t t) {
  require_nonempty_pair(a, b);
  if (!a.group().is_prime_order()) {
    throw InvalidArgument("Pollard bound needs prime order, got " + a.group().literal());
  }
  require_level(a, b, t);
  auto sel = BoundSelection::none();
  sel.pollard = true;
  return evaluate_normalized(PairContext(a, b, nullptr), t, sel);
}

KneserResult check_kneser(const GSet& a, const GSet& b) {
  require_nonempty_pair(a, b);
  return kneser_for(PairContext(a, b, nullptr));
}

BoundReport check_grynkiewicz(const GSet& a, const GSet& b) {
  require_nonempty_pair(a, b);
  require_di_sizes(a, b);
  auto sel = BoundSelection::none();
  sel.grynkiewicz = true;
  return evaluate_normalized(PairContext(a, b, nullptr), 2, sel);
}

DicksIvanovResult check_dicks_ivanov(const GSet& a, const GSet& b,
                                     const SubgroupLattice& lattice) {
  require_nonempty_pair(a, b);
  require_di_sizes(a, b);
  return dicks_ivanov_for(PairContext(a, b, &lattice));
}

BoundReport evaluate(const GSet& a, const GSet& b, std::size_t t,
                     const SubgroupLattice& lattice, const BoundSelection& selection) {
  require_nonempty_pair(a, b);
  require_level(a, b, t);
  const NormalizationShift shift{a.first(), b.first()};
  const auto& g = a.group();
  GSet na = translate(a, g.neg(shift.a));
  GSet nb = translate(b, g.neg(shift.b));
  const bool swapped = na.size() < nb.size();
  if (swapped) std::swap(na, nb);
  auto report = evaluate_normalized(PairContext(std::move(na), std::move(nb), &lattice), t,
                                    selection);
  report.normalization_shift = shift;
  report.operands_swapped = swapped;
  return report;
}

}  // namespace pollard
