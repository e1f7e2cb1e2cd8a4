#include "ait/dyadic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ait {

DyadicRational::DyadicRational(mpz_class numerator, std::uint64_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  if (num_ < 0) throw std::domain_error("DyadicRational must be non-negative");
  normalize();
}

void DyadicRational::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  auto twos = mpz_scan1(num_.get_mpz_t(), 0);
  auto shift = std::min<std::uint64_t>(twos, exp_);
  if (shift > 0) {
    mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), shift);
    exp_ -= shift;
  }
}

namespace {

// Numerators of a and b over the common denominator 2^max(exp).
std::pair<mpz_class, mpz_class> aligned(const DyadicRational& a, const DyadicRational& b) {
  mpz_class x = a.numerator();
  mpz_class y = b.numerator();
  if (a.exponent() < b.exponent()) {
    mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), b.exponent() - a.exponent());
  } else if (b.exponent() < a.exponent()) {
    mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), a.exponent() - b.exponent());
  }
  return {x, y};
}

}  // namespace

DyadicRational& DyadicRational::operator+=(const DyadicRational& rhs) {
  auto [x, y] = aligned(*this, rhs);
  exp_ = std::max(exp_, rhs.exp_);
  num_ = x + y;
  normalize();
  return *this;
}

DyadicRational& DyadicRational::operator-=(const DyadicRational& rhs) {
  auto [x, y] = aligned(*this, rhs);
  if (x < y) throw std::domain_error("DyadicRational subtraction underflow");
  exp_ = std::max(exp_, rhs.exp_);
  num_ = x - y;
  normalize();
  return *this;
}

DyadicRational& DyadicRational::operator*=(const DyadicRational& rhs) {
  num_ *= rhs.num_;
  exp_ += rhs.exp_;
  normalize();
  return *this;
}

DyadicRational DyadicRational::scaled_down(std::uint64_t k) const {
  return DyadicRational(num_, exp_ + k);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  auto [x, y] = aligned(a, b);
  int c = cmp(x, y);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

mpq_class DyadicRational::to_mpq() const {
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exp_);
  mpq_class q(num_, den);
  q.canonicalize();
  return q;
}

double DyadicRational::to_double() const {
  if (num_ == 0) return 0.0;
  long e = 0;
  double mant = mpz_get_d_2exp(&e, num_.get_mpz_t());
  return std::ldexp(mant, static_cast<int>(e - static_cast<long>(exp_)));
}

double DyadicRational::neg_log2() const {
  if (num_ == 0) return std::numeric_limits<double>::infinity();
  long e = 0;
  double mant = mpz_get_d_2exp(&e, num_.get_mpz_t());
  return static_cast<double>(exp_) - (static_cast<double>(e) + std::log2(mant));
}

std::string DyadicRational::to_string() const {
  if (exp_ == 0) return num_.get_str();
  return num_.get_str() + "/2^" + std::to_string(exp_);
}

}  // namespace ait
