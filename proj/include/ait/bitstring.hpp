#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ait {

// Finite sequence of bits, stored one bit per byte.
//
// Text form is the ASCII '0'/'1' sequence. The hex form is "x" followed by
// hex digits (bits MSB-first per nibble) and, when the length is not a
// multiple of four, ":" and the bit length. Both are accepted by parse().
class BitString {
 public:
  BitString() = default;
  BitString(std::initializer_list<int> bits);
  explicit BitString(std::vector<std::uint8_t> bits);

  static BitString parse(std::string_view text);
  static std::optional<BitString> try_parse(std::string_view text);
  static BitString repeat(bool bit, std::size_t count);
  // Raw bytes, each expanded MSB-first.
  static BitString from_bytes(std::string_view bytes);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
  void pop_back() { bits_.pop_back(); }
  void append(const BitString& other);
  void reserve(std::size_t n) { bits_.reserve(n); }

  BitString prefix(std::size_t n) const;
  BitString substr(std::size_t pos, std::size_t n = static_cast<std::size_t>(-1)) const;
  bool starts_with(const BitString& p) const noexcept;
  std::size_t count_ones() const noexcept;

  std::string to_string() const;
  std::string to_hex() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  // Lexicographic; a proper prefix orders first.
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

BitString operator+(BitString a, const BitString& b);

// (length, lexicographic) order used for canonical witnesses.
bool canonical_less(const BitString& a, const BitString& b) noexcept;

std::ostream& operator<<(std::ostream& os, const BitString& s);

struct BitStringHash {
  std::size_t operator()(const BitString& s) const noexcept;
};

}  // namespace ait
