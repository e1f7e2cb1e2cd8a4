#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "ait/bitstring.hpp"
#include "ait/dyadic.hpp"

namespace ait {

// Family of cylinder intervals; member u stands for the set of infinite
// sequences extending u. Duplicates are counted with multiplicity.
struct IntervalCover {
  std::vector<BitString> members;

  // Sum of 2^-|u| over members, exact.
  DyadicRational measure() const;
};

struct AlphaSize {
  double value = 0.0;
  // Present exactly when alpha == 1.
  std::optional<DyadicRational> exact;
};

// Sum of 2^(-alpha |u|). For alpha != 1 the value is computed in double
// precision; the relative error is below 2^-40 per member.
// Throws std::domain_error unless alpha > 0.
AlphaSize alpha_size(const IntervalCover& cover, const mpq_class& alpha);

}  // namespace ait
