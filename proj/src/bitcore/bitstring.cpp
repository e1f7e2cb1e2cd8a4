#include "ait/bitstring.hpp"

#include <ostream>

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace ait {

BitString::BitString(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("bit value must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw std::invalid_argument("bit value must be 0 or 1");
  }
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::optional<BitString> parse_hex(std::string_view body) {
  std::string_view digits = body;
  std::optional<std::size_t> length;
  if (auto colon = body.find(':'); colon != std::string_view::npos) {
    digits = body.substr(0, colon);
    auto len_text = body.substr(colon + 1);
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(len_text.data(), len_text.data() + len_text.size(), n);
    if (ec != std::errc{} || ptr != len_text.data() + len_text.size() || len_text.empty()) {
      return std::nullopt;
    }
    length = n;
  }
  BitString out;
  out.reserve(digits.size() * 4);
  for (char c : digits) {
    int v = hex_value(c);
    if (v < 0) return std::nullopt;
    for (int shift = 3; shift >= 0; --shift) out.push_back(((v >> shift) & 1) != 0);
  }
  if (length) {
    // The suffix may only trim the padding of the final nibble.
    if (*length > out.size() || out.size() - *length >= 4 || *length % 4 == 0) return std::nullopt;
    for (std::size_t i = *length; i < out.size(); ++i) {
      if (out[i]) return std::nullopt;
    }
    out = out.prefix(*length);
  }
  return out;
}

}  // namespace

std::optional<BitString> BitString::try_parse(std::string_view text) {
  if (!text.empty() && text.front() == 'x') return parse_hex(text.substr(1));
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0') {
      bits.push_back(0);
    } else if (c == '1') {
      bits.push_back(1);
    } else {
      return std::nullopt;
    }
  }
  return BitString(std::move(bits));
}

BitString BitString::parse(std::string_view text) {
  auto parsed = try_parse(text);
  if (!parsed) throw std::invalid_argument("not a bit string: '" + std::string(text) + "'");
  return *std::move(parsed);
}

BitString BitString::repeat(bool bit, std::size_t count) {
  return BitString(std::vector<std::uint8_t>(count, bit ? 1 : 0));
}

BitString BitString::from_bytes(std::string_view bytes) {
  std::vector<std::uint8_t> bits;
  bits.reserve(bytes.size() * 8);
  for (unsigned char c : bytes) {
    for (int shift = 7; shift >= 0; --shift) bits.push_back((c >> shift) & 1);
  }
  return BitString(std::move(bits));
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitString BitString::prefix(std::size_t n) const {
  n = std::min(n, bits_.size());
  return BitString(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n)));
}

BitString BitString::substr(std::size_t pos, std::size_t n) const {
  if (pos > bits_.size()) throw std::out_of_range("BitString::substr");
  n = std::min(n, bits_.size() - pos);
  auto first = bits_.begin() + static_cast<std::ptrdiff_t>(pos);
  return BitString(std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(n)));
}

bool BitString::starts_with(const BitString& p) const noexcept {
  return p.size() <= size() && std::equal(p.bits_.begin(), p.bits_.end(), bits_.begin());
}

std::size_t BitString::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s = "x";
  for (std::size_t i = 0; i < bits_.size(); i += 4) {
    int v = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      v <<= 1;
      if (i + j < bits_.size()) v |= bits_[i + j];
    }
    s.push_back(kDigits[v]);
  }
  if (bits_.size() % 4 != 0) s += ":" + std::to_string(bits_.size());
  return s;
}

BitString operator+(BitString a, const BitString& b) {
  a.append(b);
  return a;
}

std::ostream& operator<<(std::ostream& os, const BitString& s) { return os << '"' << s.to_string() << '"'; }

bool canonical_less(const BitString& a, const BitString& b) noexcept {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::size_t BitStringHash::operator()(const BitString& s) const noexcept {
  // FNV-1a over the bits plus the length.
  std::uint64_t h = 1469598103934665603ULL;
  for (auto b : s.bits()) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  h ^= s.size();
  h *= 1099511628211ULL;
  return static_cast<std::size_t>(h);
}

}  // namespace ait
