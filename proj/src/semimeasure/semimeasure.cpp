#include "ait/semimeasure.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace ait::prob {

DyadicRational SemimeasureTable::total() const {
  DyadicRational sum;
  for (const auto& [x, m] : entries) sum += m;
  return sum;
}

namespace {

// Outcome of a coin subtree, relative to the output at its root.
struct Subtree {
  std::map<BitString, DyadicRational> halted;  // output suffix -> mass
  DyadicRational undecided;
};

class CoinExplorer {
 public:
  CoinExplorer(const BitString& code, std::uint64_t depth) : program_(vm::parse_coin_program(code)), depth_(depth) {}

  Subtree explore() { return explore(vm::StaticMachine(program_, condition_, depth_)); }

 private:
  Subtree explore(vm::StaticMachine m) {
    const std::size_t base = m.output().size();
    std::string key = m.config_key();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Subtree result;
    switch (m.advance()) {
      case vm::StaticMachine::Status::Halted:
        result.halted.emplace(m.output().substr(base), DyadicRational::one());
        break;
      case vm::StaticMachine::Status::BudgetExceeded: result.undecided = DyadicRational::one(); break;
      case vm::StaticMachine::Status::NeedData: {
        const BitString head = m.output().substr(base);
        for (bool coin : {false, true}) {
          vm::StaticMachine branch = m;
          branch.supply(coin);
          Subtree sub = explore(std::move(branch));
          for (auto& [suffix, mass] : sub.halted) result.halted[head + suffix] += mass.scaled_down(1);
          result.undecided += sub.undecided.scaled_down(1);
        }
        break;
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  vm::Program program_;
  BitString condition_;
  std::uint64_t depth_;
  std::unordered_map<std::string, Subtree> memo_;
};

}  // namespace

ProbBounds halting_bounds(const BitString& code, std::uint64_t depth) {
  Subtree t = CoinExplorer(code, depth).explore();
  ProbBounds b;
  for (const auto& [x, m] : t.halted) b.lower += m;
  b.upper = b.lower + t.undecided;
  b.depth = depth;
  return b;
}

SemimeasureTable output_distribution(const BitString& code, std::uint64_t depth) {
  SemimeasureTable table;
  table.entries = CoinExplorer(code, depth).explore().halted;
  table.depth = depth;
  return table;
}

// ---- lower semicomputable reals ----------------------------------------

LscSequence::LscSequence(Generator terms, std::optional<mpq_class> limit)
    : terms_(std::move(terms)), limit_(std::move(limit)) {}

LscSequence LscSequence::constant(const mpq_class& p) {
  return LscSequence([p](std::size_t) -> std::optional<mpq_class> { return p; }, p);
}

LscSequence LscSequence::from_terms(std::vector<mpq_class> terms) {
  if (terms.empty()) throw std::invalid_argument("LscSequence needs at least one term");
  mpq_class last = terms.back();
  return LscSequence(
      [terms = std::move(terms)](std::size_t i) -> std::optional<mpq_class> {
        return terms[std::min(i, terms.size() - 1)];
      },
      last);
}

std::optional<mpq_class> LscSequence::term(std::size_t i) const {
  auto q = terms_(i);
  if (q && (*q < 0 || *q > 1)) throw std::domain_error("LscSequence term outside [0, 1]");
  return q;
}

namespace {

// 0.b_0...b_{i-1} as a rational, plus 2^-i.
mpq_class beta_upper(const mpz_class& prefix_value, std::size_t i) {
  mpz_class denom = 1;
  denom <<= i;
  mpq_class r(prefix_value + 1, denom);
  r.canonicalize();
  return r;
}

}  // namespace

LscRun lsc_machine_run(const LscSequence& p, const vm::CoinGenerator& coins, std::size_t max_index) {
  mpz_class value = 0;
  for (std::size_t i = 0;; ++i) {
    auto q = p.term(i);
    if (q && beta_upper(value, i) < *q) return {true, i};
    if (i == max_index) return {false, i};
    value = value * 2 + (coins() ? 1 : 0);
  }
}

namespace {

void lsc_tree(const LscSequence& p, const mpz_class& value, std::size_t i, std::size_t depth, ProbBounds& out,
              DyadicRational& undecided) {
  auto q = p.term(i);
  if (q && beta_upper(value, i) < *q) {
    out.lower += DyadicRational::pow2_neg(i);
    return;
  }
  if (p.limit()) {
    mpz_class denom = 1;
    denom <<= i;
    mpq_class lower_end(value, denom);
    lower_end.canonicalize();
    if (lower_end >= *p.limit()) return;  // every q_j <= limit <= the coin real
  }
  if (i == depth) {
    undecided += DyadicRational::pow2_neg(i);
    return;
  }
  lsc_tree(p, value * 2, i + 1, depth, out, undecided);
  lsc_tree(p, value * 2 + 1, i + 1, depth, out, undecided);
}

}  // namespace

ProbBounds lsc_halting_bounds(const LscSequence& p, std::size_t depth) {
  ProbBounds out;
  DyadicRational undecided;
  lsc_tree(p, 0, 0, depth, out, undecided);
  out.upper = out.lower + undecided;
  out.depth = depth;
  return out;
}

// ---- a priori probability ----------------------------------------------

SemimeasureTable apriori_table(const std::vector<vm::HaltingCylinder>& prefix_cylinders, kc::Budgets b) {
  SemimeasureTable table;
  table.budgets = b;
  for (const auto& c : prefix_cylinders) {
    if (c.prefix.size() > b.max_len) continue;
    table.entries[c.output] += DyadicRational::pow2_neg(c.prefix.size());
  }
  return table;
}

SemimeasureTable apriori_table(kc::Budgets b) {
  return apriori_table(vm::enumerate_cylinders(vm::Mode::Prefix, {}, b.max_len, {b.max_steps}), b);
}

DyadicRational apriori_lower(const BitString& x, kc::Budgets b) {
  auto table = apriori_table(b);
  auto it = table.entries.find(x);
  return it == table.entries.end() ? DyadicRational{} : it->second;
}

CodingGapReport coding_gap_report(const std::vector<vm::HaltingCylinder>& prefix_cylinders) {
  CodingGapReport report;
  std::map<BitString, DyadicRational> mass;
  for (const auto& c : prefix_cylinders) mass[c.output] += DyadicRational::pow2_neg(c.prefix.size());
  auto shortest = kc::shortest_table(prefix_cylinders);
  for (const auto& [x, w] : shortest) {
    CodingGapEntry e;
    e.output = x;
    e.k_prefix = w.description.size();
    e.apriori = mass.at(x);
    e.holds = DyadicRational::pow2_neg(e.k_prefix) <= e.apriori;
    e.gap = std::max(0.0, static_cast<double>(e.k_prefix) - e.apriori.neg_log2());
    report.all_hold = report.all_hold && e.holds;
    report.max_gap = std::max(report.max_gap, e.gap);
    ++report.histogram[static_cast<std::int64_t>(std::floor(e.gap))];
    report.entries.push_back(std::move(e));
  }
  return report;
}

CodingGapReport coding_gap_report(kc::Budgets b) {
  return coding_gap_report(vm::enumerate_cylinders(vm::Mode::Prefix, {}, b.max_len, {b.max_steps}));
}

}  // namespace ait::prob
