#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "ait/bitstring.hpp"
#include "ait/codec.hpp"
#include "ait/cover.hpp"
#include "ait/dyadic.hpp"
#include "test_util.hpp"

using namespace ait;

namespace {

BitString B(const char* s) { return BitString::parse(s); }

BitString random_bits(test::Rng& rng, std::size_t max_len) { return rng.bits(rng.below(max_len + 1)); }

}  // namespace

TEST(BitStringTest, TextRoundTrip) {
  test::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto x = random_bits(rng, 40);
    EXPECT_EQ(BitString::parse(x.to_string()), x);
    EXPECT_EQ(BitString::parse(x.to_hex()), x);
    EXPECT_EQ(x.to_string().size(), x.size());
  }
  EXPECT_TRUE(BitString().empty());
  EXPECT_EQ(BitString::parse(""), BitString());
}

TEST(BitStringTest, HexForm) {
  EXPECT_EQ(B("10100101").to_hex(), "xa5");
  EXPECT_EQ(B("101").to_hex(), "xa:3");
  EXPECT_EQ(BitString::parse("xa:3"), B("101"));
  EXPECT_EQ(BitString::parse("xf0"), B("11110000"));
}

TEST(BitStringTest, RejectsMalformedText) {
  for (const char* bad : {"012", "1 0", "xg", "xa:5", "xa:", "y"}) {
    EXPECT_FALSE(BitString::try_parse(bad).has_value()) << bad;
  }
  EXPECT_THROW(BitString::parse("2"), std::invalid_argument);
}

TEST(BitStringTest, CanonicalOrderIsLengthThenLex) {
  std::vector<BitString> v{B("11"), B(""), B("0"), B("10"), B("1"), B("000")};
  std::sort(v.begin(), v.end(), [](const BitString& a, const BitString& b) { return canonical_less(a, b); });
  std::vector<BitString> want{B(""), B("0"), B("1"), B("10"), B("11"), B("000")};
  EXPECT_EQ(v, want);
}

TEST(BitStringTest, Slicing) {
  auto x = B("110100");
  EXPECT_EQ(x.prefix(3), B("110"));
  EXPECT_EQ(x.substr(2, 2), B("01"));
  EXPECT_EQ(x.substr(4), B("00"));
  EXPECT_TRUE(x.starts_with(B("1101")));
  EXPECT_FALSE(x.starts_with(B("111")));
  EXPECT_EQ(x.count_ones(), 3u);
  EXPECT_EQ(B("01") + B("1"), B("011"));
  EXPECT_EQ(BitString::from_bytes("A"), B("01000001"));
}

TEST(DyadicTest, ExactArithmetic) {
  auto half = DyadicRational::pow2_neg(1);
  auto quarter = DyadicRational::pow2_neg(2);
  EXPECT_EQ(half + half, DyadicRational::one());
  EXPECT_EQ(half - quarter, quarter);
  EXPECT_EQ(quarter * half, DyadicRational::pow2_neg(3));
  EXPECT_EQ(DyadicRational(6, 3), DyadicRational(3, 2));
  EXPECT_EQ(DyadicRational(6, 3).numerator(), 3);
  EXPECT_LT(quarter, half);
  EXPECT_THROW(quarter - half, std::domain_error);
  EXPECT_EQ(DyadicRational::zero().to_string(), "0");
  EXPECT_DOUBLE_EQ(DyadicRational(3, 3).to_double(), 0.375);
  EXPECT_DOUBLE_EQ(quarter.neg_log2(), 2.0);
  EXPECT_TRUE(std::isinf(DyadicRational::zero().neg_log2()));
}

TEST(DyadicTest, SumOfManySmallTermsIsExact) {
  DyadicRational sum;
  for (int i = 0; i < 1024; ++i) sum += DyadicRational::pow2_neg(10);
  EXPECT_EQ(sum, DyadicRational::one());
  EXPECT_EQ(DyadicRational::pow2_neg(200).scaled_down(5), DyadicRational::pow2_neg(205));
}

TEST(DyadicTest, OrderAgreesWithRationals) {
  test::Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    DyadicRational a(mpz_class(static_cast<unsigned long>(rng.below(1000))), rng.below(20));
    DyadicRational b(mpz_class(static_cast<unsigned long>(rng.below(1000))), rng.below(20));
    EXPECT_EQ(a < b, a.to_mpq() < b.to_mpq());
    EXPECT_EQ(a == b, a.to_mpq() == b.to_mpq());
    EXPECT_EQ((a + b).to_mpq(), a.to_mpq() + b.to_mpq());
  }
}

TEST(CodecTest, DoubleEncoding) {
  EXPECT_EQ(dbl_encode(B("")), B(""));
  EXPECT_EQ(dbl_encode(B("01")), B("0011"));
  EXPECT_EQ(dbl_encode(B("1")), B("11"));
}

TEST(CodecTest, SelfDelimitingNumbers) {
  EXPECT_EQ(bin(0), B("0"));
  EXPECT_EQ(bin(6), B("110"));
  EXPECT_EQ(selfdelim_number(0), B("0001"));
  EXPECT_EQ(selfdelim_number(1), B("1101"));
  EXPECT_EQ(selfdelim_number(5), B("11001101"));
}

TEST(CodecTest, PairEncodingExamples) {
  EXPECT_EQ(pair_encode(B(""), B("")), B("0001"));
  EXPECT_EQ(pair_encode(B("1"), B("0")), B("110110"));
  EXPECT_EQ(pair_encode(B("10"), B("1")), B("110001101"));
  EXPECT_EQ(pair_decode(B("0001")), std::make_pair(B(""), B("")));
  EXPECT_EQ(pair_decode(B("110110")), std::make_pair(B("1"), B("0")));
}

TEST(CodecTest, MalformedPairs) {
  for (const char* bad : {"11", "", "0", "10", "1101", "1110", "00000101"}) {
    EXPECT_THROW(pair_decode(B(bad)), MalformedPair) << bad;
  }
}

TEST(CodecTest, PairRoundTripAndLength) {
  test::Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    auto x = random_bits(rng, 30);
    auto y = random_bits(rng, 30);
    auto d = pair_encode(x, y);
    EXPECT_EQ(d.size(), x.size() + y.size() + 2 * bin(x.size()).size() + 2);
    EXPECT_EQ(pair_decode(d), std::make_pair(x, y));
  }
}

TEST(CodecTest, DoubledRegionHasNoDelimiterAtEvenOffsets) {
  test::Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    auto d = dbl_encode(random_bits(rng, 20));
    for (std::size_t k = 0; k + 1 < d.size(); k += 2) EXPECT_EQ(d[k], d[k + 1]);
  }
}

TEST(CoverTest, AlphaSizeExamples) {
  IntervalCover full{{B("0"), B("1")}};
  auto s = alpha_size(full, 1);
  ASSERT_TRUE(s.exact.has_value());
  EXPECT_EQ(*s.exact, DyadicRational::one());
  EXPECT_DOUBLE_EQ(s.value, 1.0);

  auto h = alpha_size(IntervalCover{{B("00")}}, mpq_class(1, 2));
  EXPECT_FALSE(h.exact.has_value());
  EXPECT_NEAR(h.value, 0.5, 1e-12);

  EXPECT_EQ(alpha_size(IntervalCover{}, mpq_class(7, 10)).value, 0.0);
  EXPECT_THROW(alpha_size(full, 0), std::domain_error);
}

TEST(CoverTest, MeasureCountsDuplicatesAndIsMonotone) {
  IntervalCover c{{B("0"), B("0")}};
  EXPECT_EQ(c.measure(), DyadicRational::one());
  test::Rng rng(21);
  IntervalCover grow;
  DyadicRational last;
  for (int i = 0; i < 100; ++i) {
    grow.members.push_back(random_bits(rng, 12));
    auto m = grow.measure();
    EXPECT_GE(m, last);
    EXPECT_EQ(alpha_size(grow, 1).exact, m);
    last = m;
  }
}

TEST(CoverTest, AlphaSizeNonIncreasingInAlpha) {
  test::Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    IntervalCover c;
    for (int i = 0; i < 10; ++i) c.members.push_back(rng.bits(1 + rng.below(10)));
    double prev = alpha_size(c, mpq_class(1, 10)).value;
    for (int k = 2; k <= 20; ++k) {
      double v = alpha_size(c, mpq_class(k, 10)).value;
      EXPECT_LE(v, prev * (1 + 1e-12));
      prev = v;
    }
  }
}
