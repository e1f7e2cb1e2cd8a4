#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "ait/experiments.hpp"

namespace ait::exp {

namespace {

std::size_t floor_log2(std::size_t v) { return static_cast<std::size_t>(std::bit_width(v)) - 1; }

// 1-based heap in a[1..size]; returns the final position of the sifted value.
std::size_t sift_down(std::vector<std::uint32_t>& a, std::size_t pos, std::size_t size, std::uint64_t& comparisons) {
  const std::uint32_t value = a[pos];
  for (;;) {
    std::size_t child = 2 * pos;
    if (child > size) break;
    if (child + 1 <= size) {
      ++comparisons;
      if (a[child + 1] > a[child]) ++child;
    }
    ++comparisons;
    if (a[child] <= value) break;
    a[pos] = a[child];
    pos = child;
  }
  a[pos] = value;
  return pos;
}

}  // namespace

HeapsortResult heapsort_instrumented(std::vector<std::uint32_t> perm) {
  const std::size_t n = perm.size();
  std::vector<std::uint32_t> a(n + 1);
  std::copy(perm.begin(), perm.end(), a.begin() + 1);
  HeapsortResult r;
  for (std::size_t i = n / 2; i >= 1; --i) sift_down(a, i, n, r.phase1_comparisons);
  std::uint64_t phase2 = 0;
  for (std::size_t end = n; end >= 2; --end) {
    std::swap(a[1], a[end]);
    const std::size_t size = end - 1;
    const std::size_t pos = sift_down(a, 1, size, phase2);
    const std::size_t leaf_level = floor_log2(size);
    const std::size_t level = floor_log2(pos);
    r.sum_d += leaf_level > level ? leaf_level - level : 0;
  }
  r.sorted.assign(a.begin() + 1, a.end());
  return r;
}

ExperimentReport heapsort_experiment(std::size_t n, std::uint64_t trials, std::uint64_t seed) {
  ExperimentReport r{"heapsort", {{"n", std::to_string(n)}}, seed, "SplitMix64", trials, {}, false};
  double worst = 0, total = 0;
  bool ok = trials > 0 && n > 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = SplitMix64::stream(seed, t);
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 1u);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    auto res = heapsort_instrumented(perm);
    std::sort(perm.begin(), perm.end());
    ok = ok && res.sorted == perm;
    const double ratio = static_cast<double>(res.sum_d) / static_cast<double>(n);
    worst = std::max(worst, ratio);
    total += ratio;
  }
  r.params["constant"] = std::to_string(kHeapsortConstant);
  r.metrics["max_sum_d_over_n"] = worst;
  r.metrics["mean_sum_d_over_n"] = trials ? total / static_cast<double>(trials) : 0.0;
  r.pass = ok && worst <= kHeapsortConstant;
  return r;
}

}  // namespace ait::exp
