#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ait/bitstring.hpp"
#include "ait/dyadic.hpp"

namespace ait::kraft {

// Online best-fit allocator of aligned dyadic segments. A codeword w stands
// for the segment of sequences extending w, of measure 2^-|w|.
class AllocatorState {
 public:
  AllocatorState();

  // Returns a codeword of length exactly n. Throws Overflow when no free
  // segment is long enough, which happens only once the requested measures
  // sum past 1.
  BitString allocate(std::uint32_t n);

  // Free segments ordered by length; lengths are pairwise distinct.
  const std::vector<BitString>& free_segments() const noexcept { return free_; }
  const std::vector<BitString>& allocated() const noexcept { return allocated_; }

  DyadicRational free_measure() const;
  DyadicRational allocated_measure() const;

 private:
  std::vector<BitString> free_;
  std::vector<BitString> allocated_;
};

class Overflow : public std::runtime_error {
 public:
  explicit Overflow(std::size_t index);
  // Position of the failing request within its sequence (0 for a lone call).
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

struct KraftResult {
  std::vector<BitString> codewords;      // granted before any overflow
  std::optional<std::size_t> overflow;   // index of the first refused request
};

KraftResult kraft_code(const std::vector<std::uint32_t>& requests);

}  // namespace ait::kraft
