// Demand-driven search over descriptions.
//
// Plain mode: instructions are chosen only when execution reaches the end of
// the code written so far, so code the machine never visits is never
// enumerated. A skipped OPEN block is enumerated without execution; a READD
// or an early halt forces the code to be completed first, since data bits
// start after END.
//
// Prefix mode: a plain DFS over description bits driving PrefixMachine.
//
// In target mode both searches keep the best length found and prune states
// whose configuration was already reached with no more bits and no more steps.

#include <algorithm>
#include <map>
#include <unordered_map>

#include "ait/toyvm.hpp"

namespace ait::vm {

namespace {

using Pareto = std::vector<std::pair<std::size_t, std::uint64_t>>;

// True when (bits, steps) is dominated by an entry; otherwise records it.
bool dominated(Pareto& front, std::size_t bits, std::uint64_t steps) {
  for (const auto& [b, s] : front) {
    if (b <= bits && s <= steps) return true;
  }
  std::erase_if(front, [&](const auto& e) { return bits <= e.first && steps <= e.second; });
  front.emplace_back(bits, steps);
  return false;
}

bool is_noop_pair(Op prev, Op next) {
  return (prev == Op::Left && next == Op::Right) || (prev == Op::Right && next == Op::Left) ||
         (prev == Op::Flip && next == Op::Flip) || (prev == Op::Open && next == Op::Close);
}

class PlainSearch {
 public:
  PlainSearch(const BitString& condition, std::size_t max_len, std::uint64_t max_steps, const BitString* target)
      : cond_(condition), max_len_(max_len), max_steps_(max_steps), target_(target) {}

  void search() { run(State{}); }

  std::vector<HaltingCylinder> cylinders;
  std::optional<Witness> best;

 private:
  struct State {
    std::vector<Op> code;
    std::vector<std::int32_t> match;
    std::vector<std::uint32_t> open;
    BitString bits;  // code bits, followed by data bits once complete
    std::size_t code_bits = 0;
    bool complete = false;
    std::size_t pc = 0;
    Tape tape;
    BitString output;
    std::uint64_t steps = 0;
    std::size_t cond_pos = 0;
  };

  std::size_t limit() const {
    if (!best) return max_len_;
    return std::min(max_len_, best->description.size() - 1);
  }

  static std::size_t completion_cost(std::size_t open) { return 3 * open + 4; }

  bool fits(const State& s, Op op) const {
    std::size_t open = s.open.size() + (op == Op::Open) - (op == Op::Close);
    std::size_t need = s.code_bits + op_length(op) + (op == Op::End ? 0 : completion_cost(open));
    return need <= limit();
  }

  bool allowed(const State& s, Op op) const {
    if (op == Op::Close && s.open.empty()) return false;
    if (op == Op::End && !s.open.empty()) return false;
    if (target_ != nullptr && !s.code.empty() && is_noop_pair(s.code.back(), op)) return false;
    return fits(s, op);
  }

  static void append(State& s, Op op) {
    auto index = static_cast<std::uint32_t>(s.code.size());
    s.code.push_back(op);
    s.match.push_back(-1);
    if (op == Op::Open) {
      s.open.push_back(index);
    } else if (op == Op::Close) {
      auto partner = s.open.back();
      s.open.pop_back();
      s.match[index] = static_cast<std::int32_t>(partner);
      s.match[partner] = static_cast<std::int32_t>(index);
    } else if (op == Op::End) {
      s.complete = true;
    }
    s.bits.append(op_bits(op));
    s.code_bits += op_length(op);
  }

  static void complete_minimally(State& s) {
    while (!s.open.empty()) append(s, Op::Close);
    append(s, Op::End);
  }

  void run(State s) {
    for (;;) {
      if (s.pc == s.code.size()) {
        extend(std::move(s));
        return;
      }
      if (s.steps >= max_steps_) return;
      ++s.steps;
      switch (s.code[s.pc]) {
        case Op::Left: s.tape.left(); ++s.pc; break;
        case Op::Right: s.tape.right(); ++s.pc; break;
        case Op::Flip: s.tape.flip(); ++s.pc; break;
        case Op::Out:
          s.output.push_back(s.tape.read());
          if (target_ != nullptr && !target_->starts_with(s.output)) return;
          ++s.pc;
          break;
        case Op::Open:
          if (s.tape.read()) {
            ++s.pc;
          } else if (s.match[s.pc] >= 0) {
            s.pc = static_cast<std::size_t>(s.match[s.pc]) + 1;
          } else {
            // An OPEN with no partner yet is always the newest instruction.
            std::size_t depth = s.open.size();
            skip(std::move(s), depth);
            return;
          }
          break;
        case Op::Close: s.pc = s.tape.read() ? static_cast<std::size_t>(s.match[s.pc]) + 1 : s.pc + 1; break;
        case Op::ReadC:
          if (s.cond_pos >= cond_.size()) {
            halt(std::move(s), true);
            return;
          }
          s.tape.write(cond_[s.cond_pos++]);
          ++s.pc;
          break;
        case Op::ReadD:
          if (s.complete) {
            read_data(std::move(s));
          } else if (target_ != nullptr) {
            // The completion does not affect execution, only length.
            complete_minimally(s);
            if (s.code_bits <= limit()) read_data(std::move(s));
          } else {
            complete_all(std::move(s), [this](State c) { read_data(std::move(c)); });
          }
          return;
        case Op::End: halt(std::move(s), true); return;
      }
    }
  }

  void extend(State s) {
    if (target_ != nullptr && s.open.empty()) {
      std::string key;
      key.append(reinterpret_cast<const char*>(&s.cond_pos), sizeof s.cond_pos);
      auto out_len = s.output.size();
      key.append(reinterpret_cast<const char*>(&out_len), sizeof out_len);
      s.tape.append_key(key);
      if (dominated(memo_[key], s.code_bits, s.steps)) return;
    }
    for (Op op : kAllOps) {
      if (!allowed(s, op)) continue;
      State t = s;
      append(t, op);
      run(std::move(t));
    }
  }

  void skip(State s, std::size_t depth) {
    for (Op op : kAllOps) {
      if (op == Op::End || !allowed(s, op)) continue;
      State t = s;
      append(t, op);
      if (op == Op::Close && t.open.size() + 1 == depth) {
        t.pc = t.code.size();
        run(std::move(t));
      } else {
        skip(std::move(t), depth);
      }
    }
  }

  template <class K>
  void complete_all(State s, const K& k) {
    if (s.complete) {
      k(std::move(s));
      return;
    }
    for (Op op : kAllOps) {
      if (!allowed(s, op)) continue;
      State t = s;
      append(t, op);
      complete_all(std::move(t), k);
    }
  }

  // pc is at a READD whose step has been counted; code is complete.
  void read_data(State s) {
    emit(s, false);  // data exhausted exactly here
    if (s.bits.size() + 1 > limit()) return;
    for (bool b : {false, true}) {
      State t = s;
      t.bits.push_back(b);
      t.tape.write(b);
      ++t.pc;
      run(std::move(t));
    }
  }

  void halt(State s, bool open_tail) {
    if (s.complete) {
      emit(s, open_tail);
    } else if (target_ != nullptr) {
      if (s.output != *target_ || s.code_bits + completion_cost(s.open.size()) > limit()) return;
      complete_minimally(s);
      emit(s, open_tail);
    } else {
      complete_all(std::move(s), [this, open_tail](const State& c) { emit(c, open_tail); });
    }
  }

  void emit(const State& s, bool open_tail) {
    if (target_ == nullptr) {
      cylinders.push_back({s.bits, s.output, s.steps, open_tail});
      return;
    }
    if (s.output != *target_ || s.bits.size() > limit()) return;
    if (!best || s.bits.size() < best->description.size()) best = Witness{s.bits, s.steps};
  }

  const BitString& cond_;
  std::size_t max_len_;
  std::uint64_t max_steps_;
  const BitString* target_;
  std::unordered_map<std::string, Pareto> memo_;
};

class PrefixSearch {
 public:
  PrefixSearch(const BitString& condition, std::size_t max_len, std::uint64_t max_steps, const BitString* target)
      : cond_(condition), max_len_(max_len), max_steps_(max_steps), target_(target) {}

  void search() {
    PrefixMachine m(cond_, max_steps_);
    m.set_target(target_);
    BitString path;
    dfs(std::move(m), path);
  }

  std::vector<HaltingCylinder> cylinders;
  std::optional<Witness> best;

 private:
  std::size_t limit() const {
    if (!best) return max_len_;
    return std::min(max_len_, best->description.size() - 1);
  }

  void dfs(PrefixMachine m, BitString& path) {
    switch (m.advance()) {
      case PrefixMachine::Status::NeedBit: break;
      case PrefixMachine::Status::Halted:
        if (target_ == nullptr) {
          cylinders.push_back({path, m.output(), m.steps(), false});
        } else if (m.output() == *target_ && path.size() <= limit()) {
          best = Witness{path, m.steps()};
        }
        return;
      default: return;
    }
    if (m.consumed() + 1 > limit()) return;
    if (target_ != nullptr && m.at_clean_boundary()) {
      if (dominated(memo_[m.config_key()], m.consumed(), m.steps())) return;
    }
    PrefixMachine one = m;
    path.push_back(false);
    m.supply(false);
    dfs(std::move(m), path);
    path.pop_back();
    path.push_back(true);
    one.supply(true);
    dfs(std::move(one), path);
    path.pop_back();
  }

  const BitString& cond_;
  std::size_t max_len_;
  std::uint64_t max_steps_;
  const BitString* target_;
  std::unordered_map<std::string, Pareto> memo_;
};

}  // namespace

std::vector<HaltingCylinder> enumerate_cylinders(Mode mode, const BitString& condition, std::size_t max_len,
                                                 RunBudget budget) {
  std::vector<HaltingCylinder> out;
  if (mode == Mode::Plain) {
    PlainSearch s(condition, max_len, budget.max_steps, nullptr);
    s.search();
    out = std::move(s.cylinders);
  } else if (mode == Mode::Prefix) {
    PrefixSearch s(condition, max_len, budget.max_steps, nullptr);
    s.search();
    out = std::move(s.cylinders);
  } else {
    throw std::invalid_argument("enumeration is defined for plain and prefix modes only");
  }
  std::sort(out.begin(), out.end(),
            [](const HaltingCylinder& a, const HaltingCylinder& b) { return canonical_less(a.prefix, b.prefix); });
  return out;
}

void expand_cylinders(const std::vector<HaltingCylinder>& cylinders, std::size_t max_len,
                      const std::function<void(const HaltingRecord&)>& sink) {
  std::vector<HaltingRecord> layer;
  for (std::size_t n = 0; n <= max_len; ++n) {
    layer.clear();
    for (const auto& c : cylinders) {
      const std::size_t p = c.prefix.size();
      if (p > n || (!c.open_tail && p != n)) continue;
      const std::size_t free = n - p;
      if (free >= 63) throw std::length_error("cylinder expansion too large");
      for (std::uint64_t tail = 0; tail < (std::uint64_t{1} << free); ++tail) {
        HaltingRecord r{c.prefix, c.output, c.steps};
        for (std::size_t i = free; i-- > 0;) r.description.push_back((tail >> i) & 1);
        layer.push_back(std::move(r));
      }
    }
    std::sort(layer.begin(), layer.end(),
              [](const HaltingRecord& a, const HaltingRecord& b) { return a.description < b.description; });
    for (const auto& r : layer) sink(r);
  }
}

void enumerate_halting(Mode mode, const BitString& condition, std::size_t max_len, RunBudget budget,
                       const std::function<void(const HaltingRecord&)>& sink) {
  expand_cylinders(enumerate_cylinders(mode, condition, max_len, budget), max_len, sink);
}

std::optional<Witness> shortest_description(Mode mode, const BitString& target, const BitString& condition,
                                            std::size_t max_len, RunBudget budget) {
  if (mode == Mode::Plain) {
    PlainSearch s(condition, max_len, budget.max_steps, &target);
    s.search();
    return s.best;
  }
  if (mode == Mode::Prefix) {
    PrefixSearch s(condition, max_len, budget.max_steps, &target);
    s.search();
    return s.best;
  }
  throw std::invalid_argument("shortest descriptions are defined for plain and prefix modes only");
}

}  // namespace ait::vm
