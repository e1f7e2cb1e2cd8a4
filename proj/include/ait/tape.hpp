#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ait::vm {

// Binary work tape, unbounded in both directions, initially all zero.
class Tape {
 public:
  Tape() : cells_(kGrow, 0), head_(kGrow / 2) {}

  bool read() const noexcept { return cells_[head_] != 0; }
  void write(bool bit) noexcept { cells_[head_] = bit ? 1 : 0; }
  void flip() noexcept { cells_[head_] ^= 1; }

  void left() {
    if (head_ == 0) {
      cells_.insert(cells_.begin(), kGrow, 0);
      head_ = kGrow;
    }
    --head_;
  }

  void right() {
    if (++head_ == cells_.size()) cells_.resize(cells_.size() + kGrow, 0);
  }

  // Appends a translation-invariant encoding of (contents, head) to key.
  void append_key(std::string& key) const;

 private:
  static constexpr std::size_t kGrow = 16;

  std::vector<std::uint8_t> cells_;
  std::size_t head_;
};

}  // namespace ait::vm
