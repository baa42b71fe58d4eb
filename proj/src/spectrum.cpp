#include "pollardkit/spectrum.hpp"

#include <algorithm>

#include "pollardkit/error.hpp"
#include "pollardkit/setops.hpp"

namespace pollard {

namespace {

void require_operands(const GSet& a, const GSet& b) {
  require_same_group(a, b);
  if (a.empty() || b.empty()) throw InvalidArgument("spectrum of an empty set");
}

void require_level(std::size_t t) {
  if (t < 1) throw InvalidArgument("t must be >= 1");
}

}  // namespace

Spectrum::Spectrum(GroupSpec group, std::vector<std::uint32_t> r, std::size_t card_a,
                   std::size_t card_b)
    : group_(std::move(group)), r_(std::move(r)), card_a_(card_a), card_b_(card_b) {
  if (r_.size() != group_.order()) {
    throw InvalidArgument("spectrum length does not match group order");
  }
  const auto top = std::min(card_a_, card_b_);
  level_counts_.assign(top + 2, 0);
  for (const auto v : r_) {
    if (v > top) throw InvalidArgument("spectrum value exceeds min(|A|,|B|)");
    ++level_counts_[v];
  }
  // Suffix sums turn value histograms into |N_k|.
  for (std::size_t k = top; k-- > 1;) level_counts_[k] += level_counts_[k + 1];
  level_counts_[0] = 0;
}

GSet Spectrum::n_t(std::size_t t) const {
  require_level(t);
  GSet out(group_);
  for (std::uint32_t x = 0; x < r_.size(); ++x) {
    if (r_[x] >= t) out.insert(Element{x});
  }
  return out;
}

std::size_t Spectrum::n_t_size(std::size_t t) const {
  require_level(t);
  return t < level_counts_.size() ? level_counts_[t] : 0;
}

std::int64_t Spectrum::partial_sum(std::size_t t) const {
  require_level(t);
  const auto top = std::min(t, level_counts_.size() - 1);
  std::int64_t s = 0;
  for (std::size_t k = 1; k <= top; ++k) s += static_cast<std::int64_t>(level_counts_[k]);
  return s;
}

std::vector<std::int64_t> Spectrum::partial_sums() const {
  const auto top = std::min(card_a_, card_b_);
  std::vector<std::int64_t> out;
  out.reserve(top);
  std::int64_t s = 0;
  for (std::size_t k = 1; k <= top; ++k) {
    s += static_cast<std::int64_t>(level_counts_[k]);
    out.push_back(s);
  }
  return out;
}

std::uint32_t Spectrum::min_value() const {
  return *std::min_element(r_.begin(), r_.end());
}

Spectrum compute_spectrum(const GSet& a, const GSet& b) {
  require_operands(a, b);
  const auto& g = a.group();
  std::vector<std::uint32_t> r(g.order(), 0);
  const auto bs = b.indices();
  a.for_each([&](std::uint32_t x) {
    for (const auto y : bs) ++r[g.add_index(x, y)];
  });
  return Spectrum(g, std::move(r), a.size(), b.size());
}

Spectrum compute_spectrum_by_intersection(const GSet& a, const GSet& b) {
  require_operands(a, b);
  const auto& g = a.group();
  // x - B = (-B) + x
  GSet neg_b(g);
  b.for_each([&](std::uint32_t y) { neg_b.insert(Element{g.neg_index(y)}); });
  std::vector<std::uint32_t> r(g.order(), 0);
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    r[x] = static_cast<std::uint32_t>(intersection_size(translate(neg_b, Element{x}), a));
  }
  return Spectrum(g, std::move(r), a.size(), b.size());
}

}  // namespace pollard
