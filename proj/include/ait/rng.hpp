#pragma once

#include <cstdint>

#include "ait/bitstring.hpp"

namespace ait {

// SplitMix64. Satisfies UniformRandomBitGenerator, so it plugs into the
// <random> distributions.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  // Independent stream for trial `index` of a run seeded with `seed`.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
    SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return SplitMix64(mix());
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  bool bit() noexcept { return ((*this)() >> 63) != 0; }

  // Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t v;
    do v = (*this)();
    while (v >= limit);
    return v % n;
  }

  // Bernoulli(p) with 53-bit resolution.
  bool bernoulli(double p) noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53 < p; }

  BitString bits(std::size_t n) {
    BitString out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(bit());
    return out;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ait
