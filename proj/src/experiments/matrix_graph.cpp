#include <algorithm>
#include <queue>
#include <string>

#include "ait/experiments.hpp"

namespace ait::exp {

BitMatrix::BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * words_, 0) {}

BitMatrix BitMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  BitMatrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw std::invalid_argument("matrix must be square");
    for (std::size_t c = 0; c < rows.size(); ++c) m.set(r, c, rows[r][c] != 0);
  }
  return m;
}

BitMatrix BitMatrix::random(std::size_t n, SplitMix64& rng) {
  BitMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m.set(r, c, rng.bit());
  }
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) noexcept {
  auto& w = rows_[r * words_ + c / 64];
  const std::uint64_t mask = std::uint64_t{1} << (c % 64);
  w = v ? (w | mask) : (w & ~mask);
}

std::size_t gf2_rank(BitMatrix m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.n_ && rank < m.n_; ++col) {
    std::size_t pivot = rank;
    while (pivot < m.n_ && !m.get(pivot, col)) ++pivot;
    if (pivot == m.n_) continue;
    auto row = [&](std::size_t r) { return m.rows_.begin() + static_cast<std::ptrdiff_t>(r * m.words_); };
    if (pivot != rank) std::swap_ranges(row(pivot), row(pivot) + m.words_, row(rank));
    for (std::size_t r = 0; r < m.n_; ++r) {
      if (r != rank && m.get(r, col)) {
        for (std::size_t w = 0; w < m.words_; ++w) row(r)[w] ^= row(rank)[w];
      }
    }
    ++rank;
  }
  return rank;
}

ExperimentReport rank_experiment(std::size_t n, std::uint64_t trials, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("rank experiment needs n >= 2");
  ExperimentReport r{"rank", {{"n", std::to_string(n)}}, seed, "SplitMix64", trials, {}, false};
  std::size_t min_rank = n;
  std::size_t max_rank = 0;
  double sum = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = SplitMix64::stream(seed, t);
    const std::size_t rank = gf2_rank(BitMatrix::random(n, rng));
    min_rank = std::min(min_rank, rank);
    max_rank = std::max(max_rank, rank);
    sum += static_cast<double>(rank);
  }
  r.metrics["min_rank"] = static_cast<double>(min_rank);
  r.metrics["max_rank"] = static_cast<double>(max_rank);
  r.metrics["mean_rank"] = trials ? sum / static_cast<double>(trials) : 0.0;
  r.pass = trials > 0 && 2 * min_rank > n;
  return r;
}

bool graph_connected(std::size_t n, const BitString& edges) {
  if (edges.size() != n * (n - 1) / 2) throw std::invalid_argument("edge bit count must be n(n-1)/2");
  if (n <= 1) return true;
  std::vector<std::vector<std::size_t>> adj(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if (edges[k]) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    for (auto u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        q.push(u);
      }
    }
  }
  return reached == n;
}

ExperimentReport connectivity_experiment(std::size_t n, std::uint64_t trials, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("connectivity experiment needs n >= 2");
  ExperimentReport r{"graph", {{"n", std::to_string(n)}}, seed, "SplitMix64", trials, {}, false};
  std::uint64_t connected = 0;
  double edges_total = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = SplitMix64::stream(seed, t);
    BitString edges = rng.bits(n * (n - 1) / 2);
    edges_total += static_cast<double>(edges.count_ones());
    connected += graph_connected(n, edges) ? 1 : 0;
  }
  r.metrics["connected"] = static_cast<double>(connected);
  r.metrics["disconnected"] = static_cast<double>(trials - connected);
  r.metrics["mean_edges"] = trials ? edges_total / static_cast<double>(trials) : 0.0;
  r.pass = trials > 0 && connected == trials;
  return r;
}

}  // namespace ait::exp
