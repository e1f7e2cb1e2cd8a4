#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "ait/bitstring.hpp"

namespace ait {

class MalformedPair : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every bit emitted twice.
BitString dbl_encode(const BitString& x);

// Binary without leading zeros; bin(0) = "0".
BitString bin(std::uint64_t n);

// dbl_encode(bin(n)) followed by "01".
BitString selfdelim_number(std::uint64_t n);

// dbl_encode(bin(|x|)) ++ "01" ++ x ++ y
BitString pair_encode(const BitString& x, const BitString& y);

// Inverse of pair_encode. Only canonical length fields (no leading zeros)
// are accepted, so pair_encode(pair_decode(d)) == d whenever it succeeds.
std::pair<BitString, BitString> pair_decode(const BitString& d);

}  // namespace ait
