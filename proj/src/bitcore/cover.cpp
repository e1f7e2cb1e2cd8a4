#include "ait/cover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ait {

DyadicRational IntervalCover::measure() const {
  DyadicRational total;
  for (const auto& u : members) total += DyadicRational::pow2_neg(u.size());
  return total;
}

AlphaSize alpha_size(const IntervalCover& cover, const mpq_class& alpha) {
  if (alpha <= 0) throw std::domain_error("alpha must be positive");
  AlphaSize result;
  if (alpha == 1) {
    result.exact = cover.measure();
    result.value = result.exact->to_double();
    return result;
  }
  const double a = alpha.get_d();
  // Summing smallest terms first keeps the rounding error bounded per term.
  std::vector<double> terms;
  terms.reserve(cover.members.size());
  for (const auto& u : cover.members) terms.push_back(std::exp2(-a * static_cast<double>(u.size())));
  std::sort(terms.begin(), terms.end());
  for (double t : terms) result.value += t;
  return result;
}

}  // namespace ait
