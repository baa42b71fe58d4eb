#include "pollardkit/gset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "pollardkit/error.hpp"

namespace pollard {

namespace {

std::size_t words_for(std::size_t order) {
  return (order + GSet::kWordBits - 1) / GSet::kWordBits;
}

}  // namespace

GSet::GSet(GroupSpec group)
    : group_(std::move(group)), words_(words_for(group_.order()), 0) {}

GSet GSet::from_indices(GroupSpec group, std::span<const std::uint32_t> indices) {
  GSet out(std::move(group));
  for (const auto i : indices) out.insert(Element{i});
  return out;
}

GSet GSet::full(GroupSpec group) {
  GSet out(std::move(group));
  const auto n = out.group_.order();
  for (std::size_t w = 0; w < out.words_.size(); ++w) {
    const auto remaining = n - w * kWordBits;
    out.words_[w] = remaining >= kWordBits ? ~Word{0} : (Word{1} << remaining) - 1;
  }
  out.card_ = n;
  return out;
}

GSet GSet::singleton(GroupSpec group, Element x) {
  GSet out(std::move(group));
  out.insert(x);
  return out;
}

void GSet::set_bit(std::uint32_t i) noexcept {
  Word& w = words_[i / kWordBits];
  const Word mask = Word{1} << (i % kWordBits);
  if ((w & mask) == 0) {
    w |= mask;
    ++card_;
  }
}

void GSet::insert(Element x) {
  if (!group_.contains(x)) {
    throw InvalidArgument("index " + std::to_string(x.index) + " out of range for " +
                          group_.literal());
  }
  set_bit(x.index);
}

void GSet::erase(Element x) {
  if (!group_.contains(x)) {
    throw InvalidArgument("index " + std::to_string(x.index) + " out of range for " +
                          group_.literal());
  }
  Word& w = words_[x.index / kWordBits];
  const Word mask = Word{1} << (x.index % kWordBits);
  if ((w & mask) != 0) {
    w &= ~mask;
    --card_;
  }
}

void GSet::recount() noexcept {
  card_ = 0;
  for (const auto w : words_) card_ += static_cast<std::size_t>(std::popcount(w));
}

Element GSet::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) {
      return Element{static_cast<std::uint32_t>(w * kWordBits +
                                                std::countr_zero(words_[w]))};
    }
  }
  throw InvalidArgument("first() of an empty set");
}

std::vector<std::uint32_t> GSet::indices() const {
  std::vector<std::uint32_t> out;
  out.reserve(card_);
  for_each([&](std::uint32_t i) { out.push_back(i); });
  return out;
}

bool GSet::is_subset_of(const GSet& other) const {
  require_same_group(*this, other);
  if (card_ > other.card_) return false;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool GSet::intersects(const GSet& other) const {
  require_same_group(*this, other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

std::string GSet::literal() const {
  std::string out = "[";
  bool first_item = true;
  for_each([&](std::uint32_t i) {
    if (!first_item) out += ',';
    out += std::to_string(i);
    first_item = false;
  });
  out += ']';
  return out;
}

bool operator==(const GSet& lhs, const GSet& rhs) {
  return lhs.group_ == rhs.group_ && lhs.card_ == rhs.card_ &&
         std::equal(lhs.words_.begin(), lhs.words_.end(), rhs.words_.begin(),
                    rhs.words_.end());
}

GSet set_union(const GSet& lhs, const GSet& rhs) {
  require_same_group(lhs, rhs);
  GSet out = lhs;
  for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] |= rhs.words_[w];
  out.recount();
  return out;
}

GSet set_intersection(const GSet& lhs, const GSet& rhs) {
  require_same_group(lhs, rhs);
  GSet out = lhs;
  for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] &= rhs.words_[w];
  out.recount();
  return out;
}

GSet set_difference(const GSet& lhs, const GSet& rhs) {
  require_same_group(lhs, rhs);
  GSet out = lhs;
  for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] &= ~rhs.words_[w];
  out.recount();
  return out;
}

void require_same_group(const GSet& lhs, const GSet& rhs) {
  if (!(lhs.group() == rhs.group())) {
    throw GroupMismatch("sets belong to different groups: " + lhs.group().literal() +
                        " vs " + rhs.group().literal());
  }
}

std::size_t intersection_size(const GSet& lhs, const GSet& rhs) {
  require_same_group(lhs, rhs);
  std::size_t n = 0;
  const auto a = lhs.words();
  const auto b = rhs.words();
  for (std::size_t w = 0; w < a.size(); ++w) {
    n += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  }
  return n;
}

GSet parse_set_literal(const GroupSpec& group, std::string_view literal) {
  std::string_view body = literal;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  body = trim(body);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') {
      throw InvalidArgument("malformed set literal '" + std::string(literal) + "'");
    }
    body = trim(body.substr(1, body.size() - 2));
  }
  GSet out(group);
  if (body.empty()) return out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const auto next = std::min(body.find(',', pos), body.size());
    const auto token = trim(body.substr(pos, next - pos));
    std::uint32_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw InvalidArgument("malformed set element '" + std::string(token) + "' in '" +
                            std::string(literal) + "'");
    }
    if (value >= group.order()) {
      throw InvalidArgument("set element '" + std::string(token) + "' out of range for " +
                            group.literal());
    }
    if (out.contains(Element{value})) {
      throw InvalidArgument("duplicate set element '" + std::string(token) + "'");
    }
    out.insert(Element{value});
    pos = next + 1;
  }
  return out;
}

}  // namespace pollard
