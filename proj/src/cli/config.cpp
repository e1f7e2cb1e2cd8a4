#include "ait/cli.hpp"
#include "ait/complexity.hpp"
#include "ait/experiments.hpp"
#include "ait/randomness.hpp"

namespace ait::cli {

static_assert(kc::kKtHeader == 8);
static_assert(kc::kLiteralConstant == 25);
static_assert(rnd::kTailStart == 1024);
static_assert(rnd::kEntropyConstant == 16.0);
static_assert(exp::kHeapsortConstant == 6.0);

nlohmann::json Config::constants() const {
  return {
      {"pair_constant", pair_constant},
      {"heapsort_constant", heapsort_constant},
      {"kt_header", kt_header},
      {"entropy_constant", entropy_constant},
      {"tail_start", tail_start},
      {"literal_constant", literal_constant},
      {"default_budgets", {{"max_len", budgets.max_len}, {"max_steps", budgets.max_steps}}},
      {"seed", seed},
  };
}

}  // namespace ait::cli
