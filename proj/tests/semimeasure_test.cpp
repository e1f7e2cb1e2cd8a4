#include <gtest/gtest.h>

#include <map>

#include "ait/semimeasure.hpp"
#include "test_util.hpp"

using namespace ait;
using namespace ait::prob;

namespace {

BitString A(const char* src) { return vm::assemble(src); }

DyadicRational D(long num, std::uint64_t exp) { return DyadicRational(num, exp); }

BitString bits_of(std::uint64_t v, std::size_t n) {
  BitString b;
  for (std::size_t i = n; i-- > 0;) b.push_back((v >> i) & 1);
  return b;
}

struct CoinOracle {
  std::map<BitString, DyadicRational> dist;
  DyadicRational halted;
  DyadicRational undecided;
};

// Runs the code on every coin string of length depth; each carries 2^-depth.
CoinOracle coin_oracle(const BitString& code, std::size_t depth) {
  CoinOracle o;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << depth); ++v) {
    auto r = vm::run(code, vm::Mode::Coin, {}, bits_of(v, depth), {depth});
    if (auto* h = std::get_if<vm::Halted>(&r)) {
      o.dist[h->output] += DyadicRational::pow2_neg(depth);
      o.halted += DyadicRational::pow2_neg(depth);
    } else {
      o.undecided += DyadicRational::pow2_neg(depth);
    }
  }
  return o;
}

// Random well-bracketed code segment ending in END.
BitString random_code(test::Rng& rng, std::size_t ops) {
  static const vm::Op body[] = {vm::Op::Left, vm::Op::Right, vm::Op::Flip, vm::Op::Out,
                                vm::Op::Open, vm::Op::Close, vm::Op::ReadD};
  BitString code;
  int open = 0;
  for (std::size_t i = 0; i < ops; ++i) {
    auto op = body[rng.below(7)];
    if (op == vm::Op::Close && open == 0) op = vm::Op::ReadD;
    open += (op == vm::Op::Open) - (op == vm::Op::Close);
    code.append(vm::op_bits(op));
  }
  while (open-- > 0) code.append(vm::op_bits(vm::Op::Close));
  code.append(vm::op_bits(vm::Op::End));
  return code;
}

mpq_class beta_upper(const BitString& prefix) {
  mpq_class v = 0, w(1, 2);
  for (std::size_t i = 0; i < prefix.size(); ++i, w /= 2) {
    if (prefix[i]) v += w;
  }
  return v + w * 2;
}

}  // namespace

TEST(HaltingBounds, SampleMachines) {
  auto end = halting_bounds(A("END"), 1);
  EXPECT_EQ(end.lower, DyadicRational::one());
  EXPECT_EQ(end.upper, DyadicRational::one());

  auto loop = halting_bounds(A("READD OPEN CLOSE END"), 100);
  EXPECT_EQ(loop.lower, D(1, 1));
  EXPECT_EQ(loop.upper, DyadicRational::one());
  EXPECT_EQ(loop.depth, 100u);

  auto two = halting_bounds(A("READD READD END"), 10);
  EXPECT_EQ(two.lower, DyadicRational::one());
  EXPECT_EQ(two.upper, DyadicRational::one());
}

TEST(HaltingBounds, InvalidCodeIsTyped) {
  EXPECT_THROW(halting_bounds(BitString::parse("100"), 4), vm::InvalidProgram);
  EXPECT_THROW(halting_bounds(A("OPEN END"), 4), vm::InvalidProgram);
  EXPECT_THROW(halting_bounds(A("END END"), 4), vm::InvalidProgram);
}

TEST(HaltingBounds, MonotoneInDepth) {
  for (const char* src : {"END", "READD OPEN CLOSE END", "READD READD END", "READD [ FLIP READD ] OUT END"}) {
    auto code = A(src);
    auto prev = halting_bounds(code, 0);
    for (std::uint64_t d = 1; d <= 24; ++d) {
      auto cur = halting_bounds(code, d);
      EXPECT_LE(cur.lower, cur.upper);
      EXPECT_LE(cur.upper, DyadicRational::one());
      EXPECT_GE(cur.lower, prev.lower) << src << " " << d;
      EXPECT_LE(cur.upper, prev.upper) << src << " " << d;
      prev = cur;
    }
  }
}

TEST(OutputDistribution, Examples) {
  auto end = output_distribution(A("END"), 4);
  EXPECT_EQ(end.entries, (std::map<BitString, DyadicRational>{{BitString(), DyadicRational::one()}}));
  auto coin = output_distribution(A("READD OUT END"), 8);
  EXPECT_EQ(coin.entries.at(BitString::parse("0")), D(1, 1));
  EXPECT_EQ(coin.entries.at(BitString::parse("1")), D(1, 1));
  EXPECT_EQ(coin.entries.size(), 2u);
  auto loop = output_distribution(A("READD OPEN CLOSE END"), 50);
  EXPECT_EQ(loop.entries, (std::map<BitString, DyadicRational>{{BitString(), D(1, 1)}}));
  EXPECT_EQ(loop.depth, 50u);
}

TEST(OutputDistribution, MatchesCoinStringOracle) {
  test::Rng rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    auto code = random_code(rng, 1 + rng.below(9));
    const std::size_t depth = 1 + rng.below(12);
    auto oracle = coin_oracle(code, depth);
    auto dist = output_distribution(code, depth);
    auto bounds = halting_bounds(code, depth);
    EXPECT_EQ(dist.entries, oracle.dist) << code;
    EXPECT_EQ(bounds.lower, oracle.halted) << code;
    EXPECT_EQ(bounds.upper, oracle.halted + oracle.undecided) << code;
    EXPECT_LE(dist.total(), bounds.lower);
  }
}

TEST(LscMachine, Examples) {
  auto zeros = [] { return false; };
  auto one = LscSequence::constant(1);
  auto r = lsc_machine_run(one, zeros, 10);
  EXPECT_TRUE(r.halts);
  EXPECT_EQ(r.index, 1u);

  auto zero = LscSequence::constant(0);
  test::Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    EXPECT_FALSE(lsc_machine_run(zero, [&] { return rng.bit(); }, 30).halts);
  }

  // Coins 0, 1: after one coin the real is below 1/2 < 5/8.
  int k = 0;
  auto r58 = lsc_machine_run(LscSequence::constant(mpq_class(5, 8)), [&] { return k++ == 1; }, 10);
  EXPECT_TRUE(r58.halts);
  EXPECT_EQ(r58.index, 1u);
}

TEST(LscMachine, HaltsExactlyBelowP) {
  for (const mpq_class& p : {mpq_class(0), mpq_class(1, 2), mpq_class(5, 8), mpq_class(1)}) {
    auto seq = LscSequence::constant(p);
    for (std::uint64_t v = 0; v < (1u << 12); ++v) {
      auto coins = bits_of(v, 12);
      std::size_t pos = 0;
      auto run = lsc_machine_run(seq, [&] { return coins[pos++]; }, 12);
      std::optional<std::size_t> first;
      for (std::size_t i = 0; i <= 12 && !first; ++i) {
        if (beta_upper(coins.prefix(i)) < p) first = i;
      }
      EXPECT_EQ(run.halts, first.has_value()) << coins << " p=" << p.get_str();
      if (first) {
        EXPECT_EQ(run.index, *first);
      }
    }
  }
}

TEST(LscMachine, RejectsTermsOutsideUnitInterval) {
  LscSequence bad([](std::size_t) { return std::optional<mpq_class>(mpq_class(3, 2)); });
  EXPECT_THROW(bad.term(0), std::domain_error);
}

TEST(LscMachine, StalledGeneratorIsUndecided) {
  LscSequence stalled([](std::size_t i) -> std::optional<mpq_class> {
    if (i < 3) return mpq_class(0);
    return std::nullopt;
  });
  EXPECT_FALSE(lsc_machine_run(stalled, [] { return false; }, 50).halts);
}

TEST(LscBounds, BracketP) {
  const mpq_class p(5, 8);
  auto b = lsc_halting_bounds(LscSequence::constant(p), 20);
  const mpq_class eps(1, 1 << 18);
  EXPECT_LE(b.lower.to_mpq(), p);
  EXPECT_GE(b.upper.to_mpq(), p);
  EXPECT_LE(p - b.lower.to_mpq(), eps);
  EXPECT_LE(b.upper.to_mpq() - p, eps);

  auto z = lsc_halting_bounds(LscSequence::constant(0), 15);
  EXPECT_TRUE(z.lower.is_zero());
  EXPECT_TRUE(z.upper.is_zero());
}

TEST(LscBounds, ApproachingOne) {
  LscSequence seq([](std::size_t i) { return std::optional<mpq_class>(1 - mpq_class(1, mpz_class(1) << i)); },
                  mpq_class(1));
  for (std::size_t depth : {4u, 10u, 16u}) {
    auto b = lsc_halting_bounds(seq, depth);
    EXPECT_GE(b.lower, DyadicRational::one() - DyadicRational::pow2_neg(depth - 1)) << depth;
    EXPECT_LE(b.upper, DyadicRational::one());
  }
}

TEST(LscBounds, MatchesMachineRuns) {
  auto seq = LscSequence::from_terms({mpq_class(1, 3), mpq_class(1, 2), mpq_class(3, 5), mpq_class(7, 10)});
  const std::size_t depth = 10;
  DyadicRational mass;
  for (std::uint64_t v = 0; v < (1u << depth); ++v) {
    auto coins = bits_of(v, depth);
    std::size_t pos = 0;
    if (lsc_machine_run(seq, [&] { return coins[pos++]; }, depth).halts) mass += DyadicRational::pow2_neg(depth);
  }
  EXPECT_EQ(lsc_halting_bounds(seq, depth).lower, mass);
}

TEST(Apriori, EmptyStringAtFourBits) {
  // "1111" halts, and "1110" reads the exhausted condition and halts too.
  EXPECT_EQ(apriori_lower(BitString(), {4, 10}), D(1, 3));
  EXPECT_TRUE(apriori_lower(BitString::parse("1"), {4, 10}).is_zero());
}

TEST(Apriori, MatchesDirectSum) {
  const kc::Budgets b{14, 64};
  std::map<BitString, DyadicRational> oracle;
  for (std::size_t n = 0; n <= b.max_len; ++n) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      auto r = vm::run(bits_of(v, n), vm::Mode::Prefix, {}, {}, {b.max_steps});
      if (auto* h = std::get_if<vm::Halted>(&r)) oracle[h->output] += DyadicRational::pow2_neg(n);
    }
  }
  auto table = apriori_table(b);
  EXPECT_EQ(table.entries, oracle);
  for (const auto& [x, m] : oracle) EXPECT_EQ(apriori_lower(x, b), m);
  EXPECT_LE(table.total(), DyadicRational::one());
}

TEST(Apriori, MassBelowOneAndMonotone) {
  SemimeasureTable prev;
  for (std::size_t L = 4; L <= 18; L += 2) {
    auto t = apriori_table({L, 128});
    EXPECT_LE(t.total(), DyadicRational::one());
    for (const auto& [x, m] : prev.entries) EXPECT_GE(t.entries.at(x), m);
    prev = t;
  }
}

TEST(CodingGap, WitnessBoundsApriori) {
  auto report = coding_gap_report({16, 256});
  EXPECT_TRUE(report.all_hold);
  std::size_t counted = 0;
  for (const auto& [g, n] : report.histogram) counted += n;
  EXPECT_EQ(counted, report.entries.size());
  for (const auto& e : report.entries) {
    EXPECT_EQ(kc::k_prefix(e.output, {16, 256}).value, e.k_prefix);
    EXPECT_GE(e.apriori, DyadicRational::pow2_neg(e.k_prefix));
    EXPECT_GE(e.gap, 0.0);
  }
}
