#pragma once

// Incompressibility-method experiments on pseudo-random inputs, and the two
// machine simulators they need.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ait/bitstring.hpp"
#include "ait/rng.hpp"

namespace ait::exp {

struct ExperimentReport {
  std::string name;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::string prng = "SplitMix64";
  std::uint64_t trials = 0;
  std::map<std::string, double> metrics;
  bool pass = false;
};

// ---- matrices and graphs -------------------------------------------------

// Square matrix over GF(2), rows packed into 64-bit words.
class BitMatrix {
 public:
  explicit BitMatrix(std::size_t n);
  static BitMatrix from_rows(const std::vector<std::vector<int>>& rows);
  static BitMatrix random(std::size_t n, SplitMix64& rng);

  std::size_t size() const noexcept { return n_; }
  bool get(std::size_t r, std::size_t c) const noexcept { return (rows_[r * words_ + c / 64] >> (c % 64)) & 1; }
  void set(std::size_t r, std::size_t c, bool v) noexcept;

  friend std::size_t gf2_rank(BitMatrix m);

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
};

std::size_t gf2_rank(BitMatrix m);

// Pass iff every trial's rank exceeds n/2.
ExperimentReport rank_experiment(std::size_t n, std::uint64_t trials, std::uint64_t seed);

// Edge bits for pairs (i, j), i < j, in lexicographic pair order.
bool graph_connected(std::size_t n, const BitString& edges);

// Pass iff every random graph on n vertices is connected.
ExperimentReport connectivity_experiment(std::size_t n, std::uint64_t trials, std::uint64_t seed);

// ---- tournaments -----------------------------------------------------------

class Tournament {
 public:
  // orientation: one bit per pair i < j in lexicographic order, 1 = i beats j.
  Tournament(std::size_t n, BitString orientation);
  static Tournament random(std::size_t n, SplitMix64& rng);
  static Tournament transitive(std::size_t n);  // i beats j whenever i < j

  std::size_t size() const noexcept { return n_; }
  bool beats(std::size_t i, std::size_t j) const;

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const;

  std::size_t n_;
  BitString orientation_;
};

// Transitive chain v_0 -> v_1 -> ... (each beats all later ones) of length at
// least ceil(log2(n + 1)), built by picking a vertex and recursing on the
// larger of its out- and in-neighbourhoods.
std::vector<std::size_t> transitive_witness(const Tournament& t);

bool is_transitive_chain(const Tournament& t, const std::vector<std::size_t>& chain);

inline constexpr std::size_t kExactTournamentLimit = 16;

// Size of the largest transitive sub-tournament; n <= 16.
std::size_t max_transitive_size(const Tournament& t);

// Pass iff every maximum lies in [ceil(log2(n+1)), 2 ceil(log2 n) + 2].
ExperimentReport tournament_experiment(std::size_t n, std::uint64_t trials, std::uint64_t seed);

// ---- heapsort ----------------------------------------------------------------

struct HeapsortResult {
  std::vector<std::uint32_t> sorted;
  std::uint64_t sum_d = 0;  // phase 2: levels above the leaf level of each sift-down's stop
  std::uint64_t phase1_comparisons = 0;
};

HeapsortResult heapsort_instrumented(std::vector<std::uint32_t> perm);

inline constexpr double kHeapsortConstant = 6.0;

// Pass iff every trial sorts correctly and sum_d / N <= 6.
ExperimentReport heapsort_experiment(std::size_t n, std::uint64_t trials, std::uint64_t seed);

// ---- one-tape Turing machine -------------------------------------------------

enum class Sym : std::uint8_t { Blank, Zero, One, A, B, M };
inline constexpr std::size_t kSymbols = 6;

enum class Move : std::int8_t { Left = -1, Stay = 0, Right = 1 };

struct TmRule {
  Sym write;
  Move move;
  std::uint32_t next;
};

struct OneTapeTM {
  std::uint32_t states = 0;
  std::uint32_t start = 0;
  std::uint32_t halt = 0;
  std::vector<std::optional<TmRule>> table;  // states * kSymbols

  const std::optional<TmRule>& rule(std::uint32_t state, Sym s) const {
    return table[state * kSymbols + static_cast<std::size_t>(s)];
  }
};

class MachineStepCap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TmRun {
  BitString output;  // tape contents from cell 0 up to the first blank, read as bits
  std::uint64_t steps = 0;
  // crossings[i] counts head moves across boundary u = first_boundary + i,
  // the one between cells u-1 and u, in either direction.
  std::int64_t first_boundary = 0;
  std::vector<std::uint64_t> crossings;
  std::vector<std::uint64_t> right_crossings;  // left-to-right only

  std::uint64_t crossings_at(std::int64_t u, bool rightward_only = false) const;
  std::uint64_t total_crossings() const;
};

// Input starts at cell 0 with the head there. Throws MachineStepCap, or
// std::runtime_error when no rule applies or the tape holds a non-bit.
TmRun run_tm(const OneTapeTM& tm, const BitString& input, std::uint64_t step_cap);

// Mark a symbol, carry it past the end marker M to the first blank, return,
// repeat; finally shift the copy left over M and unmark. Produces xx from x.
const OneTapeTM& duplicator();

// Runs the duplicator on 0^n x for random x of length n, for each n.
// Pass iff every output is the input doubled, crossings sum to at most t,
// and t(n')/t(n) is in [3, 5] whenever n' = 2n for consecutive n values.
ExperimentReport tm_duplication_experiment(const std::vector<std::size_t>& n_values, std::uint64_t seed);

// ---- multihead automata -------------------------------------------------------

// Symbols read by a head: '0', '1', '#', and blank past the input end.
enum class HeadSym : std::uint8_t { Zero, One, Hash, Blank };

struct HeadRule {
  std::uint32_t next;
  std::uint32_t advance;  // bitmask of heads to move right
};

// One-way k-head finite automaton. A missing rule sends the machine to a
// rejecting sink; sinks just move every head off the input.
struct MultiheadAutomaton {
  std::uint32_t heads = 1;
  std::uint32_t states = 0;
  std::uint32_t start = 0;
  std::vector<bool> accepting;
  std::vector<std::optional<HeadRule>> table;  // states * 4^heads

  std::size_t code(const std::vector<HeadSym>& syms) const;
};

bool simulate_multihead(const MultiheadAutomaton& a, const std::string& input);

// Accepts exactly the strings x#x with x over {0,1}.
const MultiheadAutomaton& two_head_copy_recognizer();
// Accepts exactly x#y#z#z#y#x with x, y, z over {0,1}.
const MultiheadAutomaton& three_head_recognizer();

bool copy_pattern_oracle(const std::string& s);
bool mirror_pattern_oracle(const std::string& s);

// Random positive and perturbed cases for both recognizers; pass iff every
// verdict matches the pattern oracle.
ExperimentReport multihead_experiment(std::size_t n, std::uint64_t trials, std::uint64_t seed);

}  // namespace ait::exp
