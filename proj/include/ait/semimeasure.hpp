#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ait/bitstring.hpp"
#include "ait/complexity.hpp"
#include "ait/dyadic.hpp"
#include "ait/toyvm.hpp"

namespace ait::prob {

struct ProbBounds {
  DyadicRational lower;
  DyadicRational upper;
  std::uint64_t depth = 0;
};

struct SemimeasureTable {
  std::map<BitString, DyadicRational> entries;
  std::optional<kc::Budgets> budgets;  // enumeration tables
  std::optional<std::uint64_t> depth;  // coin-machine tables
  std::string machine_version{vm::kMachineVersion};

  DyadicRational total() const;
};

// Coin-tree exploration of a Coin-mode program (code segment only) with a
// budget of `depth` steps; READD costs a step, so at most `depth` coins are
// drawn. Branches that run out of steps are undecided: they count toward
// upper but not lower. Throws vm::InvalidProgram for malformed code.
ProbBounds halting_bounds(const BitString& code, std::uint64_t depth);

// Exact probability of halting with each output within `depth` steps.
SemimeasureTable output_distribution(const BitString& code, std::uint64_t depth);

// Non-decreasing rationals q_0 <= q_1 <= ... in [0, 1]. The generator may
// return nullopt for a term it cannot produce yet (a stalled source).
class LscSequence {
 public:
  using Generator = std::function<std::optional<mpq_class>(std::size_t)>;

  explicit LscSequence(Generator terms, std::optional<mpq_class> limit = std::nullopt);

  static LscSequence constant(const mpq_class& p);
  // Finite list; the last term repeats forever and is the limit.
  static LscSequence from_terms(std::vector<mpq_class> terms);

  // Throws std::domain_error for a term outside [0, 1].
  std::optional<mpq_class> term(std::size_t i) const;
  const std::optional<mpq_class>& limit() const noexcept { return limit_; }

 private:
  Generator terms_;
  std::optional<mpq_class> limit_;
};

struct LscRun {
  bool halts = false;
  std::size_t index = 0;  // coins read at the halt
};

// Reads coins b_0 b_1 ... and halts at the first i <= max_index with
// 0.b_0...b_{i-1} + 2^-i < q_i, i.e. once the coin real is certainly below p.
LscRun lsc_machine_run(const LscSequence& p, const vm::CoinGenerator& coins, std::size_t max_index);

// Exact mass of coin prefixes of length <= depth on which lsc_machine_run
// halts. A prefix whose real is at least the known limit can never halt and
// is excluded from upper.
ProbBounds lsc_halting_bounds(const LscSequence& p, std::size_t depth);

// Sum of 2^-|d| over valid Prefix-mode descriptions d with output x.
DyadicRational apriori_lower(const BitString& x, kc::Budgets b);
SemimeasureTable apriori_table(kc::Budgets b);
SemimeasureTable apriori_table(const std::vector<vm::HaltingCylinder>& prefix_cylinders, kc::Budgets b);

struct CodingGapEntry {
  BitString output;
  std::uint64_t k_prefix = 0;
  DyadicRational apriori;
  double gap = 0.0;  // k_prefix + log2 apriori, >= 0
  bool holds = false;  // exact check of 2^-k_prefix <= apriori
};

struct CodingGapReport {
  std::vector<CodingGapEntry> entries;
  std::map<std::int64_t, std::size_t> histogram;  // floor(gap) -> count
  bool all_hold = true;
  double max_gap = 0.0;
};

CodingGapReport coding_gap_report(kc::Budgets b);
CodingGapReport coding_gap_report(const std::vector<vm::HaltingCylinder>& prefix_cylinders);

}  // namespace ait::prob
