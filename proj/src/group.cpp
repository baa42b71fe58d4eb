#include "pollardkit/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "pollardkit/error.hpp"

namespace pollard {

namespace {

// Orders up to this size get a precomputed addition table (2 MiB at most).
constexpr std::size_t kAddTableMaxOrder = 1024;

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

struct GroupSpec::Data {
  std::vector<std::uint32_t> factors;
  std::vector<std::uint32_t> strides;
  std::size_t order = 1;
  bool prime = false;
  std::vector<std::uint16_t> add_table;  // empty above kAddTableMaxOrder

  std::uint32_t add_digitwise(std::uint32_t x, std::uint32_t y) const noexcept {
    std::uint32_t out = 0;
    for (std::size_t i = factors.size(); i-- > 0;) {
      const std::uint32_t d = factors[i];
      std::uint32_t s = x % d + y % d;
      if (s >= d) s -= d;
      out += s * strides[i];
      x /= d;
      y /= d;
    }
    return out;
  }

  std::uint32_t neg_digitwise(std::uint32_t x) const noexcept {
    std::uint32_t out = 0;
    for (std::size_t i = factors.size(); i-- > 0;) {
      const std::uint32_t d = factors[i];
      const std::uint32_t digit = x % d;
      out += (digit == 0 ? 0 : d - digit) * strides[i];
      x /= d;
    }
    return out;
  }
};

GroupSpec::GroupSpec() {
  static const GroupSpec trivial = make_group({1});
  data_ = trivial.data_;
}

GroupSpec::GroupSpec(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

const std::vector<std::uint32_t>& GroupSpec::factors() const noexcept {
  return data_->factors;
}

std::size_t GroupSpec::order() const noexcept { return data_->order; }

bool GroupSpec::is_prime_order() const noexcept { return data_->prime; }

std::string GroupSpec::literal() const {
  std::string out;
  for (std::size_t i = 0; i < data_->factors.size(); ++i) {
    if (i > 0) out += 'x';
    out += 'Z';
    out += std::to_string(data_->factors[i]);
  }
  return out;
}

void GroupSpec::require(Element x) const {
  if (x.index >= data_->order) {
    throw InvalidArgument("element index " + std::to_string(x.index) +
                          " out of range for " + literal());
  }
}

std::uint32_t GroupSpec::add_index(std::uint32_t x, std::uint32_t y) const noexcept {
  if (!data_->add_table.empty()) {
    return data_->add_table[static_cast<std::size_t>(x) * data_->order + y];
  }
  return data_->add_digitwise(x, y);
}

std::uint32_t GroupSpec::neg_index(std::uint32_t x) const noexcept {
  return data_->neg_digitwise(x);
}

Element GroupSpec::add(Element x, Element y) const {
  require(x);
  require(y);
  return Element{add_index(x.index, y.index)};
}

Element GroupSpec::neg(Element x) const {
  require(x);
  return Element{neg_index(x.index)};
}

Element GroupSpec::sub(Element x, Element y) const {
  require(x);
  require(y);
  return Element{add_index(x.index, neg_index(y.index))};
}

std::vector<std::uint32_t> GroupSpec::digits(Element x) const {
  require(x);
  std::vector<std::uint32_t> out(data_->factors.size());
  std::uint32_t rest = x.index;
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = rest % data_->factors[i];
    rest /= data_->factors[i];
  }
  return out;
}

Element GroupSpec::from_digits(std::span<const std::uint32_t> digits) const {
  if (digits.size() != data_->factors.size()) {
    throw InvalidArgument("digit vector has " + std::to_string(digits.size()) +
                          " entries, " + literal() + " needs " +
                          std::to_string(data_->factors.size()));
  }
  std::uint32_t index = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= data_->factors[i]) {
      throw InvalidArgument("digit " + std::to_string(digits[i]) +
                            " out of range for factor Z" +
                            std::to_string(data_->factors[i]));
    }
    index += digits[i] * data_->strides[i];
  }
  return Element{index};
}

bool operator==(const GroupSpec& lhs, const GroupSpec& rhs) noexcept {
  return lhs.data_ == rhs.data_ || lhs.data_->factors == rhs.data_->factors;
}

GroupSpec make_group(std::span<const std::uint32_t> factors, const Limits& limits) {
  if (factors.empty()) throw InvalidArgument("group needs at least one cyclic factor");
  auto data = std::make_shared<GroupSpec::Data>();
  data->factors.assign(factors.begin(), factors.end());
  std::size_t order = 1;
  for (const auto f : factors) {
    if (f == 0) throw InvalidArgument("cyclic factor must be >= 1, got 0");
    order *= f;
    if (order > limits.max_group_order) {
      throw LimitExceeded("group order exceeds limit " +
                          std::to_string(limits.max_group_order));
    }
  }
  data->order = order;
  data->prime = is_prime(order);
  data->strides.resize(factors.size());
  std::uint32_t stride = 1;
  for (std::size_t i = factors.size(); i-- > 0;) {
    data->strides[i] = stride;
    stride *= factors[i];
  }
  if (order <= kAddTableMaxOrder) {
    data->add_table.resize(order * order);
    for (std::uint32_t x = 0; x < order; ++x) {
      for (std::uint32_t y = 0; y < order; ++y) {
        data->add_table[static_cast<std::size_t>(x) * order + y] =
            static_cast<std::uint16_t>(data->add_digitwise(x, y));
      }
    }
  }
  return GroupSpec(std::move(data));
}

GroupSpec parse_group_literal(std::string_view literal, const Limits& limits) {
  std::string compact;
  for (const char c : literal) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      compact += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (compact.empty()) throw InvalidArgument("empty group literal");

  std::vector<std::uint32_t> factors;
  std::size_t pos = 0;
  while (pos <= compact.size()) {
    const auto next = std::min(compact.find('x', pos), compact.size());
    const std::string_view token(compact.data() + pos, next - pos);
    std::uint32_t value = 0;
    const bool shaped = token.size() >= 2 && token[0] == 'z';
    const auto* first = token.data() + (shaped ? 1 : 0);
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (!shaped || ec != std::errc{} || ptr != last) {
      throw InvalidArgument("malformed group literal token '" + std::string(token) +
                            "' in '" + std::string(literal) + "'");
    }
    factors.push_back(value);
    pos = next + 1;
  }
  return make_group(factors, limits);
}

}  // namespace pollard
