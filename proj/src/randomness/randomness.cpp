#include "ait/randomness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ait/toyvm.hpp"

namespace ait::rnd {

bool selects_next(const SelectionRule& rule, const BitString& prefix) {
  if (std::holds_alternative<EvenPositions>(rule)) return prefix.size() % 2 == 0;
  if (std::holds_alternative<AfterZeros>(rule)) return !prefix.empty() && !prefix[prefix.size() - 1];
  if (const auto* p = std::get_if<AfterPattern>(&rule)) {
    const auto& w = p->pattern;
    if (w.size() > prefix.size()) return false;
    return prefix.substr(prefix.size() - w.size()) == w;
  }
  const auto& prog = std::get<ProgramRule>(rule);
  auto outcome = vm::run(prog.code, vm::Mode::Plain, prefix, {}, vm::RunBudget{prog.step_budget});
  const auto* h = std::get_if<vm::Halted>(&outcome);
  return h != nullptr && !h->output.empty() && h->output[0];
}

BitString select(const SelectionRule& rule, const BitString& bits) {
  BitString out;
  BitString prefix;
  prefix.reserve(bits.size());
  for (std::size_t n = 0; n < bits.size(); ++n) {
    if (selects_next(rule, prefix)) out.push_back(bits[n]);
    prefix.push_back(bits[n]);
  }
  return out;
}

namespace {

struct PreimageSearch {
  const SelectionRule& rule;
  const BitString& x;
  std::size_t depth;
  DyadicRational lower;
  DyadicRational undecided;

  // matched: number of selected bits so far, all equal to x's prefix.
  void visit(BitString& prefix, std::size_t matched) {
    if (matched == x.size()) {
      lower += DyadicRational::pow2_neg(prefix.size());
      return;
    }
    if (prefix.size() == depth) {
      undecided += DyadicRational::pow2_neg(prefix.size() + (x.size() - matched));
      return;
    }
    const bool selected = selects_next(rule, prefix);
    for (bool b : {false, true}) {
      if (selected && b != x[matched]) continue;
      prefix.push_back(b);
      visit(prefix, matched + (selected ? 1 : 0));
      prefix.pop_back();
    }
  }
};

}  // namespace

prob::ProbBounds preimage_measure(const SelectionRule& rule, const BitString& x, std::size_t depth) {
  if (depth < x.size()) throw std::invalid_argument("preimage depth must be at least |x|");
  PreimageSearch s{rule, x, depth, {}, {}};
  BitString prefix;
  s.visit(prefix, 0);
  return {s.lower, s.lower + s.undecided, depth};
}

double shannon_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("probability outside [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

EntropyBoundReport entropy_bound_report(const BitString& x) {
  if (x.empty()) throw std::invalid_argument("entropy bound needs a nonempty string");
  EntropyBoundReport r;
  r.n = x.size();
  r.ones = x.count_ones();
  const double n = static_cast<double>(r.n);
  r.entropy = shannon_entropy(static_cast<double>(r.ones) / n);
  r.bound = n * r.entropy + 2.0 * std::log2(n);
  r.estimate = kc::kt_codelength_counts(r.n - r.ones, r.ones);
  r.slack = r.bound + kEntropyConstant - static_cast<double>(r.estimate);
  r.holds = r.slack >= 0.0;
  return r;
}

DimensionEstimate dimension_estimate(const BitSource& stream, const std::vector<std::size_t>& lengths,
                                     DimensionEstimator estimator, kc::Budgets budgets, std::size_t tail_start) {
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] == 0 || (i > 0 && lengths[i] <= lengths[i - 1])) {
      throw std::invalid_argument("lengths must be positive and strictly increasing");
    }
  }
  if (estimator == DimensionEstimator::ExactBounded && !lengths.empty() &&
      lengths.back() >= kExactDimensionLimit) {
    throw std::invalid_argument("exact dimension estimates are limited to prefixes shorter than 32 bits");
  }
  DimensionEstimate out;
  out.estimator = estimator;
  out.tail_start = tail_start;
  BitString prefix;
  std::uint64_t ones = 0;
  for (std::size_t n : lengths) {
    while (prefix.size() < n) {
      bool b = stream();
      ones += b ? 1 : 0;
      prefix.push_back(b);
    }
    const double estimate = estimator == DimensionEstimator::Kt
                                ? static_cast<double>(kc::kt_codelength_counts(n - ones, ones))
                                : static_cast<double>(kc::k_approx(prefix, budgets.max_steps, budgets.max_len));
    const double rate = estimate / static_cast<double>(n);
    out.per_n.emplace_back(n, rate);
    if (n >= tail_start) out.running_min_tail = std::min(out.running_min_tail.value_or(rate), rate);
  }
  return out;
}

bool cover_check(const IntervalCover& cover, const DyadicRational& epsilon, const mpq_class& alpha) {
  AlphaSize size = alpha_size(cover, alpha);
  if (size.exact) return *size.exact < epsilon;
  return size.value < epsilon.to_double();
}

}  // namespace ait::rnd
