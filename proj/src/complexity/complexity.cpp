#include "ait/complexity.hpp"

#include <algorithm>

#include <gmpxx.h>

#include "ait/codec.hpp"

namespace ait::kc {

std::string_view kind_name(EstimateKind kind) noexcept {
  return kind == EstimateKind::ExactBounded ? "ExactBounded" : "CompressorUpper";
}

ComplexityEstimate exact_estimate(const std::optional<vm::Witness>& w, Budgets b) {
  ComplexityEstimate e;
  e.kind = EstimateKind::ExactBounded;
  e.budgets = b;
  if (w) {
    e.value = w->description.size();
    e.witness = w->description;
  }
  return e;
}

ComplexityEstimate c_plain(const BitString& x, Budgets b, const BitString& condition) {
  return exact_estimate(vm::shortest_description(vm::Mode::Plain, x, condition, b.max_len, {b.max_steps}), b);
}

ComplexityEstimate c_cond(const BitString& x, const BitString& y, Budgets b) { return c_plain(x, b, y); }

ComplexityEstimate k_prefix(const BitString& x, Budgets b) {
  return exact_estimate(vm::shortest_description(vm::Mode::Prefix, x, {}, b.max_len, {b.max_steps}), b);
}

ComplexityEstimate c_pair(const BitString& x, const BitString& y, Budgets b) {
  return c_plain(pair_encode(x, y), b);
}

std::uint64_t k_approx(const BitString& x, std::uint64_t t, std::size_t max_len) {
  const std::uint64_t literal = x.size() + kLiteralConstant;
  if (t == 0) return literal;
  const std::size_t len = std::min<std::uint64_t>(max_len, literal - 1);
  auto e = c_plain(x, Budgets{len, t});
  return e.value ? std::min(*e.value, literal) : literal;
}

std::uint64_t kt_codelength_counts(std::uint64_t zeros, std::uint64_t ones) {
  // P = (2z-1)!! (2o-1)!! / (2^n n!), so -log2 P = log2(A / B).
  const std::uint64_t n = zeros + ones;
  mpz_class a, b, bz, bo;
  mpz_fac_ui(a.get_mpz_t(), n);
  a <<= n;
  mpz_2fac_ui(bz.get_mpz_t(), zeros == 0 ? 0 : 2 * zeros - 1);
  mpz_2fac_ui(bo.get_mpz_t(), ones == 0 ? 0 : 2 * ones - 1);
  b = bz * bo;
  const auto abits = mpz_sizeinbase(a.get_mpz_t(), 2);
  const auto bbits = mpz_sizeinbase(b.get_mpz_t(), 2);
  std::uint64_t k = abits > bbits + 1 ? abits - bbits - 1 : 0;
  mpz_class scaled = b << k;
  while (scaled < a) {
    scaled <<= 1;
    ++k;
  }
  return k + kKtHeader;
}

std::uint64_t kt_codelength(const BitString& x) {
  const std::uint64_t ones = x.count_ones();
  return kt_codelength_counts(x.size() - ones, ones);
}

ComplexityEstimate kt_estimate(const BitString& x) {
  ComplexityEstimate e;
  e.kind = EstimateKind::CompressorUpper;
  e.value = kt_codelength(x);
  return e;
}

std::int64_t deficiency(const BitString& x, const Estimator& estimator) {
  std::uint64_t estimate = 0;
  if (const auto* b = std::get_if<Budgets>(&estimator)) {
    estimate = k_approx(x, b->max_steps, b->max_len);
  } else {
    estimate = kt_codelength(x);
  }
  return static_cast<std::int64_t>(x.size()) - static_cast<std::int64_t>(estimate);
}

std::map<BitString, vm::Witness> shortest_table(const std::vector<vm::HaltingCylinder>& cylinders) {
  std::map<BitString, vm::Witness> table;
  for (const auto& c : cylinders) table.try_emplace(c.output, vm::Witness{c.prefix, c.steps});
  return table;
}

std::map<BitString, vm::Witness> shortest_table(vm::Mode mode, const BitString& condition, Budgets b) {
  return shortest_table(vm::enumerate_cylinders(mode, condition, b.max_len, {b.max_steps}));
}

}  // namespace ait::kc
