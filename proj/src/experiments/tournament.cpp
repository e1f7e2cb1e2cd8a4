#include <algorithm>
#include <bit>
#include <string>

#include "ait/experiments.hpp"

namespace ait::exp {

namespace {

std::size_t ceil_log2(std::size_t v) { return v <= 1 ? 0 : std::bit_width(v - 1); }

}  // namespace

Tournament::Tournament(std::size_t n, BitString orientation) : n_(n), orientation_(std::move(orientation)) {
  if (orientation_.size() != n * (n - (n > 0 ? 1 : 0)) / 2) {
    throw std::invalid_argument("orientation needs one bit per pair");
  }
}

Tournament Tournament::random(std::size_t n, SplitMix64& rng) {
  return Tournament(n, rng.bits(n == 0 ? 0 : n * (n - 1) / 2));
}

Tournament Tournament::transitive(std::size_t n) {
  return Tournament(n, BitString::repeat(true, n == 0 ? 0 : n * (n - 1) / 2));
}

std::size_t Tournament::pair_index(std::size_t i, std::size_t j) const {
  // Pairs (i, j), i < j, listed row by row.
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

bool Tournament::beats(std::size_t i, std::size_t j) const {
  if (i == j || i >= n_ || j >= n_) throw std::out_of_range("bad tournament vertex pair");
  return i < j ? orientation_[pair_index(i, j)] : !orientation_[pair_index(j, i)];
}

namespace {

std::vector<std::size_t> witness_on(const Tournament& t, const std::vector<std::size_t>& vertices) {
  if (vertices.empty()) return {};
  const std::size_t v = vertices.front();
  std::vector<std::size_t> out, in;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    (t.beats(v, vertices[i]) ? out : in).push_back(vertices[i]);
  }
  if (out.size() >= in.size()) {
    auto chain = witness_on(t, out);
    chain.insert(chain.begin(), v);
    return chain;
  }
  auto chain = witness_on(t, in);
  chain.push_back(v);
  return chain;
}

}  // namespace

std::vector<std::size_t> transitive_witness(const Tournament& t) {
  std::vector<std::size_t> all(t.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return witness_on(t, all);
}

bool is_transitive_chain(const Tournament& t, const std::vector<std::size_t>& chain) {
  for (std::size_t a = 0; a < chain.size(); ++a) {
    for (std::size_t b = a + 1; b < chain.size(); ++b) {
      if (chain[a] == chain[b] || !t.beats(chain[a], chain[b])) return false;
    }
  }
  return true;
}

std::size_t max_transitive_size(const Tournament& t) {
  const std::size_t n = t.size();
  if (n > kExactTournamentLimit) throw std::invalid_argument("exact search is limited to n <= 16");
  std::vector<std::uint32_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && t.beats(i, j)) out[i] |= std::uint32_t{1} << j;
    }
  }
  // A transitive tournament has a unique source: best(S) = max over v in S
  // of 1 + best(S & out(v)), and S & out(v) < S numerically.
  std::vector<std::uint8_t> best(std::size_t{1} << n, 0);
  for (std::uint32_t s = 1; s < best.size(); ++s) {
    std::uint8_t b = 0;
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(rest));
      b = std::max<std::uint8_t>(b, static_cast<std::uint8_t>(1 + best[s & out[v]]));
    }
    best[s] = b;
  }
  return best.back();
}

ExperimentReport tournament_experiment(std::size_t n, std::uint64_t trials, std::uint64_t seed) {
  if (n == 0 || n > kExactTournamentLimit) throw std::invalid_argument("tournament experiment needs 1 <= n <= 16");
  ExperimentReport r{"tournament", {{"n", std::to_string(n)}}, seed, "SplitMix64", trials, {}, false};
  const std::size_t lo = ceil_log2(n + 1);
  const std::size_t hi = 2 * ceil_log2(n) + 2;
  std::size_t min_max = n, max_max = 0, min_witness = n;
  bool ok = trials > 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    auto rng = SplitMix64::stream(seed, i);
    Tournament t = Tournament::random(n, rng);
    const std::size_t m = max_transitive_size(t);
    const auto w = transitive_witness(t);
    min_max = std::min(min_max, m);
    max_max = std::max(max_max, m);
    min_witness = std::min(min_witness, w.size());
    ok = ok && m >= lo && m <= hi && w.size() >= lo && is_transitive_chain(t, w);
  }
  r.params["band_low"] = std::to_string(lo);
  r.params["band_high"] = std::to_string(hi);
  r.metrics["min_max_transitive"] = static_cast<double>(min_max);
  r.metrics["max_max_transitive"] = static_cast<double>(max_max);
  r.metrics["min_witness"] = static_cast<double>(min_witness);
  r.pass = ok;
  return r;
}

}  // namespace ait::exp
