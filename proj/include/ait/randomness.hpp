#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "ait/bitstring.hpp"
#include "ait/complexity.hpp"
#include "ait/cover.hpp"
#include "ait/dyadic.hpp"
#include "ait/semimeasure.hpp"

namespace ait::rnd {

struct EvenPositions {};
struct AfterZeros {};
// Selects x_n when x_0..x_{n-1} ends with w; the empty pattern selects all.
struct AfterPattern {
  BitString pattern;
};
// Runs code in Plain mode with the prefix as condition and selects when the
// first output bit is 1. Exceeding the budget, failing, or printing nothing
// means "do not select", which keeps the rule total.
struct ProgramRule {
  BitString code;
  std::uint64_t step_budget = 256;
};

using SelectionRule = std::variant<EvenPositions, AfterZeros, AfterPattern, ProgramRule>;

// S(prefix): whether the bit following prefix is selected.
bool selects_next(const SelectionRule& rule, const BitString& prefix);

BitString select(const SelectionRule& rule, const BitString& bits);

// Bounds on the measure of {w : select(rule, w) starts with x}, by exhaustive
// search over prefixes of length depth. A prefix still undecided at depth
// that needs r more matching selected bits adds 2^-r of its mass to upper:
// each selected bit is a fair coin whatever the rule decided.
prob::ProbBounds preimage_measure(const SelectionRule& rule, const BitString& x, std::size_t depth);

// H(p) in bits, H(0) = H(1) = 0. Throws std::domain_error outside [0, 1].
double shannon_entropy(double p);

inline constexpr double kEntropyConstant = 16.0;

struct EntropyBoundReport {
  std::uint64_t n = 0;
  std::uint64_t ones = 0;
  double entropy = 0.0;  // H(ones / n)
  double bound = 0.0;    // n H + 2 log2 n
  std::uint64_t estimate = 0;  // kt_codelength
  double slack = 0.0;    // bound + constant - estimate
  bool holds = false;
};

// Throws std::invalid_argument for an empty string.
EntropyBoundReport entropy_bound_report(const BitString& x);

enum class DimensionEstimator { Kt, ExactBounded };

inline constexpr std::size_t kTailStart = 1024;
inline constexpr std::size_t kExactDimensionLimit = 32;

struct DimensionEstimate {
  std::vector<std::pair<std::size_t, double>> per_n;  // (n, estimate / n)
  std::optional<double> running_min_tail;             // min rate over n >= n0
  DimensionEstimator estimator = DimensionEstimator::Kt;
  std::size_t tail_start = kTailStart;
};

using BitSource = std::function<bool()>;

// lengths must be strictly increasing. ExactBounded uses k_approx with the
// given budgets and is limited to prefixes shorter than 32 bits.
DimensionEstimate dimension_estimate(const BitSource& stream, const std::vector<std::size_t>& lengths,
                                     DimensionEstimator estimator = DimensionEstimator::Kt,
                                     kc::Budgets budgets = {24, 256}, std::size_t tail_start = kTailStart);

// Whether the alpha-size of cover is below epsilon (exact when alpha = 1).
bool cover_check(const IntervalCover& cover, const DyadicRational& epsilon, const mpq_class& alpha);

}  // namespace ait::rnd
