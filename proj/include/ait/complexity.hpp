#pragma once

// Resource-bounded description complexity over TBF-1, plus a compressor
// bound (Krichevsky-Trofimov) for inputs too long to search.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ait/bitstring.hpp"
#include "ait/toyvm.hpp"

namespace ait::kc {

struct Budgets {
  std::size_t max_len = 0;      // L, description bits
  std::uint64_t max_steps = 1;  // T
};

enum class EstimateKind { ExactBounded, CompressorUpper };

std::string_view kind_name(EstimateKind kind) noexcept;

struct ComplexityEstimate {
  std::optional<std::uint64_t> value;  // nullopt means NotFound
  EstimateKind kind = EstimateKind::ExactBounded;
  std::optional<Budgets> budgets;
  std::optional<BitString> witness;
  std::string machine_version{vm::kMachineVersion};

  bool found() const noexcept { return value.has_value(); }
};

// Length of the (length, lex)-first description of length <= L that prints
// x within T steps.
ComplexityEstimate c_plain(const BitString& x, Budgets b, const BitString& condition = {});
ComplexityEstimate c_cond(const BitString& x, const BitString& y, Budgets b);
ComplexityEstimate k_prefix(const BitString& x, Budgets b);
// c_plain of pair_encode(x, y).
ComplexityEstimate c_pair(const BitString& x, const BitString& y, Budgets b);

// Literal-copier constant: FLIP [ RIGHT READD OUT LEFT ] END is 25 bits.
inline constexpr std::uint64_t kLiteralConstant = 25;

// min(c_plain(x, {L, t}), |x| + 25); total and non-increasing in t and L.
std::uint64_t k_approx(const BitString& x, std::uint64_t t, std::size_t max_len);

inline constexpr std::uint64_t kKtHeader = 8;

// ceil(-log2 of the KT sequential probability) + 8, exact.
std::uint64_t kt_codelength(const BitString& x);
// The KT product depends only on the counts.
std::uint64_t kt_codelength_counts(std::uint64_t zeros, std::uint64_t ones);
ComplexityEstimate kt_estimate(const BitString& x);

struct KtEstimator {};
using Estimator = std::variant<Budgets, KtEstimator>;

// |x| - estimate(x). With budgets the estimate is k_approx, which is total.
std::int64_t deficiency(const BitString& x, const Estimator& estimator);

// Shortest description per output among the given cylinders (which must be
// in canonical order, as enumerate_cylinders returns them).
std::map<BitString, vm::Witness> shortest_table(const std::vector<vm::HaltingCylinder>& cylinders);

// Same, enumerating first.
std::map<BitString, vm::Witness> shortest_table(vm::Mode mode, const BitString& condition, Budgets b);

ComplexityEstimate exact_estimate(const std::optional<vm::Witness>& w, Budgets b);

}  // namespace ait::kc
