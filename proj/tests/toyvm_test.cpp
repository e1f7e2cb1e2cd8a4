#include <gtest/gtest.h>

#include <map>
#include <set>

#include "ait/toyvm.hpp"
#include "test_util.hpp"

using namespace ait;
using namespace ait::vm;

namespace {

const BitString kEmpty;

Halted expect_halted(const RunOutcome& o) {
  const auto* h = std::get_if<Halted>(&o);
  EXPECT_NE(h, nullptr);
  return h ? *h : Halted{};
}

BitString copier() { return assemble("FLIP [ RIGHT READD OUT LEFT ] END"); }

// Every description of length <= max_len, run directly.
std::vector<HaltingRecord> brute_force(Mode mode, const BitString& cond, std::size_t max_len, std::uint64_t t) {
  std::vector<HaltingRecord> out;
  for (std::size_t n = 0; n <= max_len; ++n) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      BitString d;
      for (std::size_t i = n; i-- > 0;) d.push_back((v >> i) & 1);
      auto o = run(d, mode, cond, kEmpty, RunBudget{t});
      if (auto* h = std::get_if<Halted>(&o)) out.push_back({d, h->output, h->steps});
    }
  }
  return out;
}

std::vector<HaltingRecord> enumerated(Mode mode, const BitString& cond, std::size_t max_len, std::uint64_t t) {
  std::vector<HaltingRecord> out;
  enumerate_halting(mode, cond, max_len, RunBudget{t}, [&](const HaltingRecord& r) { out.push_back(r); });
  return out;
}

// Shortest description per output, first in (length, lex) order.
std::map<BitString, BitString> shortest_by_output(const std::vector<HaltingRecord>& records) {
  std::map<BitString, BitString> best;
  for (const auto& r : records) best.emplace(r.output, r.description);
  return best;
}

}  // namespace

TEST(Encoding, OpcodesFormPrefixCodeInEnumOrder) {
  EXPECT_EQ(op_bits(Op::Left).to_string(), "000");
  EXPECT_EQ(op_bits(Op::ReadC).to_string(), "1110");
  EXPECT_EQ(op_bits(Op::End).to_string(), "1111");
  for (std::size_t i = 0; i + 1 < std::size(kAllOps); ++i) {
    EXPECT_LT(op_bits(kAllOps[i]), op_bits(kAllOps[i + 1]));
    EXPECT_EQ(op_bits(kAllOps[i]).size(), op_length(kAllOps[i]));
  }
}

TEST(Encoding, AssemblerAcceptsBracketAliases) {
  EXPECT_EQ(assemble("open close end"), assemble("[ ] END"));
  EXPECT_THROW(assemble("JUMP"), std::invalid_argument);
  EXPECT_EQ(copier().size(), 25u);
}

TEST(Run, SingleEnd) {
  auto h = expect_halted(run(BitString::parse("1111"), Mode::Plain, kEmpty, kEmpty, RunBudget{10}));
  EXPECT_EQ(h.output, BitString{});
  EXPECT_EQ(h.steps, 1u);
  EXPECT_EQ(h.consumed, 4u);
}

TEST(Run, LiteralCopier) {
  BitString d = BitString::parse("0101000011100110001011111101");
  EXPECT_EQ(d, copier() + BitString::parse("101"));
  auto h = expect_halted(run(d, Mode::Plain, kEmpty, kEmpty, RunBudget{100}));
  EXPECT_EQ(h.output.to_string(), "101");
  EXPECT_EQ(h.steps, 5u * 3 + 4);
  EXPECT_EQ(h.consumed, 28u);
}

TEST(Run, CopierLiteralBoundForRandomStrings) {
  test::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    BitString x = rng.bits(rng.below(65));
    BitString d = copier() + x;
    ASSERT_EQ(d.size(), x.size() + 25);
    auto h = expect_halted(run(d, Mode::Plain, kEmpty, kEmpty, RunBudget{5 * x.size() + 4}));
    EXPECT_EQ(h.output, x);
    EXPECT_EQ(h.steps, 5 * x.size() + 4);
  }
}

TEST(Run, PrefixConsumptionExactness) {
  auto h = expect_halted(run(BitString::parse("1111"), Mode::Prefix, kEmpty, kEmpty, RunBudget{10}));
  EXPECT_EQ(h.consumed, 4u);
  EXPECT_EQ(run(BitString::parse("11110"), Mode::Prefix, kEmpty, kEmpty, RunBudget{10}),
            RunOutcome(Invalid{InvalidReason::InexactConsumption}));
  EXPECT_EQ(run(BitString::parse("111"), Mode::Prefix, kEmpty, kEmpty, RunBudget{10}),
            RunOutcome(Invalid{InvalidReason::NeedsMoreBits}));
}

TEST(Run, PrefixCopierReadsDescriptionBits) {
  // FLIP [ RIGHT READD OUT LEFT READD ] END, data interleaved with control bits.
  BitString d = assemble("FLIP [ RIGHT READD");
  d.push_back(1);
  d.append(assemble("OUT LEFT READD"));
  d.push_back(0);
  d.append(assemble("] END"));
  auto h = expect_halted(run(d, Mode::Prefix, kEmpty, kEmpty, RunBudget{100}));
  EXPECT_EQ(h.output.to_string(), "1");
  EXPECT_EQ(h.consumed, d.size());
}

TEST(Run, InvalidReasons) {
  EXPECT_EQ(run(BitString::parse("010"), Mode::Plain, kEmpty, kEmpty, RunBudget{10}),
            RunOutcome(Invalid{InvalidReason::UnterminatedCode}));
  EXPECT_EQ(run(BitString::parse("01011"), Mode::Plain, kEmpty, kEmpty, RunBudget{10}),
            RunOutcome(Invalid{InvalidReason::UnterminatedCode}));
  EXPECT_EQ(run(assemble("] END"), Mode::Plain, kEmpty, kEmpty, RunBudget{10}),
            RunOutcome(Invalid{InvalidReason::UnmatchedBracket}));
  EXPECT_EQ(run(assemble("[ END ]"), Mode::Plain, kEmpty, kEmpty, RunBudget{10}),
            RunOutcome(Invalid{InvalidReason::UnmatchedBracket}));
  EXPECT_EQ(run(assemble("] END"), Mode::Prefix, kEmpty, kEmpty, RunBudget{10}),
            RunOutcome(Invalid{InvalidReason::UnmatchedBracket}));
  EXPECT_EQ(run(assemble("END") + BitString{0}, Mode::Coin, kEmpty, kEmpty, RunBudget{10}),
            RunOutcome(Invalid{InvalidReason::TrailingBits}));
}

TEST(Run, BudgetIsCheckedBeforeEachInstruction) {
  BitString d = assemble("FLIP OUT END");
  EXPECT_EQ(run(d, Mode::Plain, kEmpty, kEmpty, RunBudget{2}), RunOutcome(BudgetExceeded{}));
  EXPECT_EQ(expect_halted(run(d, Mode::Plain, kEmpty, kEmpty, RunBudget{3})).steps, 3u);
  BitString loop = assemble("FLIP [ ] END");
  EXPECT_EQ(run(loop, Mode::Plain, kEmpty, kEmpty, RunBudget{1000}), RunOutcome(BudgetExceeded{}));
}

TEST(Run, ConditionCopierAndExhaustion) {
  BitString d = assemble("FLIP [ RIGHT READC OUT LEFT ] END");
  EXPECT_EQ(d.size(), 26u);
  BitString y = BitString::parse("0110");
  auto h = expect_halted(run(d, Mode::Plain, y, kEmpty, RunBudget{5 * y.size() + 4}));
  EXPECT_EQ(h.output, y);
  // READC on an empty condition halts immediately.
  h = expect_halted(run(assemble("OUT READC OUT END"), Mode::Plain, kEmpty, kEmpty, RunBudget{10}));
  EXPECT_EQ(h.output.to_string(), "0");
  EXPECT_EQ(h.steps, 2u);
}

TEST(Run, CoinModeReadsCoins) {
  BitString code = assemble("READD OUT READD OUT END");
  auto h = expect_halted(run(code, Mode::Coin, kEmpty, BitString::parse("10"), RunBudget{10}));
  EXPECT_EQ(h.output.to_string(), "10");
  EXPECT_EQ(h.consumed, code.size());
  h = expect_halted(run(code, Mode::Coin, kEmpty, BitString::parse("1"), RunBudget{10}));
  EXPECT_EQ(h.output.to_string(), "1");
  int calls = 0;
  h = expect_halted(run_coin(code, kEmpty, [&] { return (calls++ % 2) == 0; }, RunBudget{10}));
  EXPECT_EQ(h.output.to_string(), "10");
}

TEST(Run, Deterministic) {
  test::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    BitString d = rng.bits(rng.below(40));
    for (Mode m : {Mode::Plain, Mode::Prefix}) {
      EXPECT_EQ(run(d, m, BitString{1}, kEmpty, RunBudget{64}), run(d, m, BitString{1}, kEmpty, RunBudget{64}));
    }
  }
}

TEST(Enumerate, SmallExamples) {
  auto plain = enumerated(Mode::Plain, kEmpty, 4, 10);
  ASSERT_EQ(plain.size(), 1u);
  EXPECT_EQ(plain[0].description.to_string(), "1111");
  EXPECT_TRUE(plain[0].output.empty());
  EXPECT_TRUE(enumerated(Mode::Plain, kEmpty, 3, 1000).empty());
  // With an empty condition READC halts at once, so "1110" is valid too.
  auto prefix = enumerated(Mode::Prefix, kEmpty, 4, 10);
  ASSERT_EQ(prefix.size(), 2u);
  EXPECT_EQ(prefix[0].description.to_string(), "1110");
  EXPECT_EQ(prefix[1].description.to_string(), "1111");
  prefix = enumerated(Mode::Prefix, BitString{0}, 4, 10);
  ASSERT_EQ(prefix.size(), 1u);
  EXPECT_EQ(prefix[0].description.to_string(), "1111");
}

TEST(Enumerate, PlainMatchesBruteForce) {
  for (const BitString& cond : {BitString{}, BitString::parse("10")}) {
    for (std::uint64_t t : {3u, 16u, 64u}) {
      auto expect = brute_force(Mode::Plain, cond, 14, t);
      auto got = enumerated(Mode::Plain, cond, 14, t);
      ASSERT_EQ(got, expect) << "cond=" << cond.to_string() << " T=" << t;
    }
  }
}

TEST(Enumerate, PrefixMatchesBruteForce) {
  for (const BitString& cond : {BitString{}, BitString::parse("1")}) {
    for (std::uint64_t t : {4u, 64u}) {
      auto expect = brute_force(Mode::Prefix, cond, 16, t);
      auto got = enumerated(Mode::Prefix, cond, 16, t);
      ASSERT_EQ(got, expect) << "cond=" << cond.to_string() << " T=" << t;
    }
  }
}

TEST(Enumerate, PrefixDomainIsPrefixFree) {
  auto records = enumerated(Mode::Prefix, kEmpty, 16, 256);
  std::set<BitString> domain;
  for (const auto& r : records) domain.insert(r.description);
  for (const auto& d : domain) {
    for (std::size_t k = 0; k < d.size(); ++k) EXPECT_FALSE(domain.count(d.prefix(k))) << d.to_string();
  }
}

TEST(Enumerate, CylindersAreDisjointAndExpandInOrder) {
  auto cyl = enumerate_cylinders(Mode::Plain, kEmpty, 13, RunBudget{32});
  for (std::size_t i = 0; i < cyl.size(); ++i) {
    for (std::size_t j = 0; j < cyl.size(); ++j) {
      if (i == j || !cyl[i].open_tail) continue;
      EXPECT_FALSE(cyl[j].prefix.starts_with(cyl[i].prefix)) << cyl[i].prefix.to_string();
    }
  }
  std::vector<HaltingRecord> recs;
  expand_cylinders(cyl, 13, [&](const HaltingRecord& r) { recs.push_back(r); });
  for (std::size_t i = 1; i < recs.size(); ++i) {
    EXPECT_TRUE(canonical_less(recs[i - 1].description, recs[i].description));
  }
}

TEST(Enumerate, StepsWithinBudget) {
  for (const auto& r : enumerated(Mode::Plain, kEmpty, 13, 20)) EXPECT_LE(r.steps, 20u);
}

TEST(Shortest, MatchesBruteForceMinimaPlain) {
  for (const BitString& cond : {BitString{}, BitString::parse("01")}) {
    for (std::uint64_t t : {8u, 64u}) {
      auto best = shortest_by_output(brute_force(Mode::Plain, cond, 14, t));
      for (const auto& [output, desc] : best) {
        auto w = shortest_description(Mode::Plain, output, cond, 14, RunBudget{t});
        ASSERT_TRUE(w.has_value()) << output.to_string();
        EXPECT_EQ(w->description, desc) << output.to_string();
      }
      // Outputs absent from the brute-force table have no description.
      for (const char* miss : {"0000000", "1010101"}) {
        BitString x = BitString::parse(miss);
        if (!best.count(x)) {
          EXPECT_FALSE(shortest_description(Mode::Plain, x, cond, 14, RunBudget{t}));
        }
      }
    }
  }
}

TEST(Shortest, MatchesBruteForceMinimaPrefix) {
  auto best = shortest_by_output(brute_force(Mode::Prefix, kEmpty, 16, 64));
  for (const auto& [output, desc] : best) {
    auto w = shortest_description(Mode::Prefix, output, kEmpty, 16, RunBudget{64});
    ASSERT_TRUE(w.has_value()) << output.to_string();
    EXPECT_EQ(w->description, desc) << output.to_string();
  }
}

TEST(Shortest, KnownSmallValues) {
  auto w = shortest_description(Mode::Plain, BitString{}, kEmpty, 8, RunBudget{64});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->description.to_string(), "1111");
  w = shortest_description(Mode::Plain, BitString{0}, kEmpty, 8, RunBudget{64});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->description.to_string(), "0111111");
  w = shortest_description(Mode::Plain, BitString{1}, kEmpty, 12, RunBudget{64});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->description, assemble("FLIP OUT END"));
  // Prefix mode: FLIP OUT END has length 10, but FLIP OUT READC (halting on
  // the empty condition) ties and comes first lexicographically.
  w = shortest_description(Mode::Prefix, BitString{1}, kEmpty, 16, RunBudget{64});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->description, assemble("FLIP OUT READC"));
  w = shortest_description(Mode::Prefix, BitString{1}, BitString{0}, 16, RunBudget{64});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->description, assemble("FLIP OUT END"));
}

TEST(Shortest, WitnessReproduces) {
  test::Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    BitString x = rng.bits(rng.below(4));
    for (Mode m : {Mode::Plain, Mode::Prefix}) {
      auto w = shortest_description(m, x, kEmpty, 18, RunBudget{128});
      if (!w) continue;
      auto h = expect_halted(run(w->description, m, kEmpty, kEmpty, RunBudget{128}));
      EXPECT_EQ(h.output, x);
      EXPECT_EQ(h.steps, w->steps);
    }
  }
}

TEST(Shortest, CoinModeRejected) {
  EXPECT_THROW(shortest_description(Mode::Coin, kEmpty, kEmpty, 8, RunBudget{8}), std::invalid_argument);
  EXPECT_THROW(enumerate_cylinders(Mode::Coin, kEmpty, 8, RunBudget{8}), std::invalid_argument);
}
