#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace ait {

// Exact non-negative rational numerator / 2^exponent, kept normalized
// (odd numerator, or zero with exponent 0).
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(mpz_class numerator, std::uint64_t exponent);

  static DyadicRational zero() { return {}; }
  static DyadicRational one() { return DyadicRational(1, 0); }
  // 2^-n
  static DyadicRational pow2_neg(std::uint64_t n) { return DyadicRational(1, n); }

  const mpz_class& numerator() const noexcept { return num_; }
  std::uint64_t exponent() const noexcept { return exp_; }
  bool is_zero() const noexcept { return num_ == 0; }

  DyadicRational& operator+=(const DyadicRational& rhs);
  // Throws std::domain_error if the result would be negative.
  DyadicRational& operator-=(const DyadicRational& rhs);
  DyadicRational& operator*=(const DyadicRational& rhs);
  // Multiply by 2^-k.
  DyadicRational scaled_down(std::uint64_t k) const;

  friend DyadicRational operator+(DyadicRational a, const DyadicRational& b) { return a += b; }
  friend DyadicRational operator-(DyadicRational a, const DyadicRational& b) { return a -= b; }
  friend DyadicRational operator*(DyadicRational a, const DyadicRational& b) { return a *= b; }

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

  mpq_class to_mpq() const;
  double to_double() const;
  // -log2 of the value; +inf for zero.
  double neg_log2() const;
  // "num/2^exp", or "0"/"1".
  std::string to_string() const;

 private:
  void normalize();

  mpz_class num_{0};
  std::uint64_t exp_ = 0;
};

}  // namespace ait
