#include <string>

#include "ait/experiments.hpp"

namespace ait::exp {

std::uint64_t TmRun::crossings_at(std::int64_t u, bool rightward_only) const {
  const auto& v = rightward_only ? right_crossings : crossings;
  const std::int64_t i = u - first_boundary;
  return i < 0 || i >= static_cast<std::int64_t>(v.size()) ? 0 : v[static_cast<std::size_t>(i)];
}

std::uint64_t TmRun::total_crossings() const {
  std::uint64_t sum = 0;
  for (auto c : crossings) sum += c;
  return sum;
}

TmRun run_tm(const OneTapeTM& tm, const BitString& input, std::uint64_t step_cap) {
  // Cell c lives at tape[c + origin].
  std::vector<Sym> tape(input.size() + 2, Sym::Blank);
  std::int64_t origin = 1;
  for (std::size_t i = 0; i < input.size(); ++i) tape[i + 1] = input[i] ? Sym::One : Sym::Zero;
  std::int64_t head = 0;
  std::uint32_t state = tm.start;
  TmRun run;
  // Boundary u is stored at index u + origin, like cell u.
  std::vector<std::uint64_t> both(tape.size() + 1, 0), right(tape.size() + 1, 0);
  while (state != tm.halt) {
    if (run.steps >= step_cap) throw MachineStepCap("duplicator exceeded " + std::to_string(step_cap) + " steps");
    auto& cell = tape[static_cast<std::size_t>(head + origin)];
    const auto& rule = tm.rule(state, cell);
    if (!rule) throw std::runtime_error("turing machine has no rule in state " + std::to_string(state));
    cell = rule->write;
    ++run.steps;
    state = rule->next;
    if (rule->move == Move::Right) {
      ++head;
      ++both[static_cast<std::size_t>(head + origin)];
      ++right[static_cast<std::size_t>(head + origin)];
      if (head + origin + 1 >= static_cast<std::int64_t>(tape.size())) {
        tape.resize(tape.size() * 2, Sym::Blank);
        both.resize(tape.size() + 1, 0);
        right.resize(tape.size() + 1, 0);
      }
    } else if (rule->move == Move::Left) {
      ++both[static_cast<std::size_t>(head + origin)];
      --head;
      if (head + origin < 0) {
        const std::size_t grow = tape.size();
        tape.insert(tape.begin(), grow, Sym::Blank);
        both.insert(both.begin(), grow, 0);
        right.insert(right.begin(), grow, 0);
        origin += static_cast<std::int64_t>(grow);
      }
    }
  }
  for (auto c = static_cast<std::size_t>(origin); c < tape.size() && tape[c] != Sym::Blank; ++c) {
    if (tape[c] != Sym::Zero && tape[c] != Sym::One) throw std::runtime_error("tape holds a marker after halting");
    run.output.push_back(tape[c] == Sym::One);
  }
  run.first_boundary = -origin;
  run.crossings = std::move(both);
  run.right_crossings = std::move(right);
  return run;
}

const OneTapeTM& duplicator() {
  static const OneTapeTM tm = [] {
    enum : std::uint32_t { Start, Back, Pick, Carry0, Carry1, ToEnd, ShiftBlank, Shift0, Shift1, Restore, Halt, Count };
    OneTapeTM m;
    m.states = Count;
    m.start = Start;
    m.halt = Halt;
    m.table.resize(Count * kSymbols);
    auto on = [&](std::uint32_t q, Sym s, Sym w, Move mv, std::uint32_t next) {
      m.table[q * kSymbols + static_cast<std::size_t>(s)] = TmRule{w, mv, next};
    };
    using S = Sym;
    // Append the end marker.
    on(Start, S::Zero, S::Zero, Move::Right, Start);
    on(Start, S::One, S::One, Move::Right, Start);
    on(Start, S::Blank, S::M, Move::Left, Back);
    // Return to the first unmarked input symbol.
    for (S s : {S::Zero, S::One, S::M}) on(Back, s, s, Move::Left, Back);
    on(Back, S::A, S::A, Move::Right, Pick);
    on(Back, S::B, S::B, Move::Right, Pick);
    on(Back, S::Blank, S::Blank, Move::Right, Pick);
    // Mark it and carry a copy to the first blank past M.
    on(Pick, S::Zero, S::A, Move::Right, Carry0);
    on(Pick, S::One, S::B, Move::Right, Carry1);
    on(Pick, S::M, S::M, Move::Right, ToEnd);
    for (S s : {S::Zero, S::One, S::M}) {
      on(Carry0, s, s, Move::Right, Carry0);
      on(Carry1, s, s, Move::Right, Carry1);
    }
    on(Carry0, S::Blank, S::Zero, Move::Left, Back);
    on(Carry1, S::Blank, S::One, Move::Left, Back);
    // Everything is copied: shift the copy one cell left over M.
    on(ToEnd, S::Zero, S::Zero, Move::Right, ToEnd);
    on(ToEnd, S::One, S::One, Move::Right, ToEnd);
    on(ToEnd, S::Blank, S::Blank, Move::Left, ShiftBlank);
    const std::pair<std::uint32_t, S> carries[] = {{ShiftBlank, S::Blank}, {Shift0, S::Zero}, {Shift1, S::One}};
    for (auto [q, carried] : carries) {
      on(q, S::Zero, carried, Move::Left, Shift0);
      on(q, S::One, carried, Move::Left, Shift1);
      on(q, S::M, carried, Move::Left, Restore);
    }
    // Unmark the original.
    on(Restore, S::A, S::Zero, Move::Left, Restore);
    on(Restore, S::B, S::One, Move::Left, Restore);
    on(Restore, S::Blank, S::Blank, Move::Stay, Halt);
    return m;
  }();
  return tm;
}

ExperimentReport tm_duplication_experiment(const std::vector<std::size_t>& n_values, std::uint64_t seed) {
  ExperimentReport r{"tm-dup", {}, seed, "SplitMix64", n_values.size(), {}, true};
  std::string ns;
  for (auto n : n_values) ns += (ns.empty() ? "" : ",") + std::to_string(n);
  r.params["n_values"] = ns;
  std::vector<std::uint64_t> steps;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    const std::size_t n = n_values[i];
    auto rng = SplitMix64::stream(seed, i);
    BitString input = BitString::repeat(false, n) + rng.bits(n);
    const std::uint64_t cap = 64 * (input.size() + 2) * (input.size() + 2);
    const std::string tag = "n" + std::to_string(n) + "_";
    try {
      TmRun run = run_tm(duplicator(), input, cap);
      const bool correct = run.output == input + input;
      const bool conserved = run.total_crossings() <= run.steps;
      // The trace region between cells 2n and 3n of the output.
      std::uint64_t min_trace = run.steps;
      for (std::size_t u = 2 * n; u <= 3 * n; ++u) {
        min_trace = std::min(min_trace, run.crossings_at(static_cast<std::int64_t>(u), true));
      }
      r.metrics[tag + "steps"] = static_cast<double>(run.steps);
      r.metrics[tag + "crossings"] = static_cast<double>(run.total_crossings());
      r.metrics[tag + "min_trace_2n_3n"] = static_cast<double>(min_trace);
      r.metrics[tag + "correct"] = correct ? 1 : 0;
      r.pass = r.pass && correct && conserved;
      steps.push_back(run.steps);
    } catch (const MachineStepCap& e) {
      r.metrics[tag + "step_cap"] = static_cast<double>(cap);
      r.params[tag + "error"] = e.what();
      r.pass = false;
      return r;
    }
  }
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] != 2 * n_values[i - 1]) continue;
    const double ratio = static_cast<double>(steps[i]) / static_cast<double>(steps[i - 1]);
    r.metrics["ratio_" + std::to_string(n_values[i]) + "_" + std::to_string(n_values[i - 1])] = ratio;
    r.pass = r.pass && ratio >= 3.0 && ratio <= 5.0;
  }
  return r;
}

}  // namespace ait::exp
