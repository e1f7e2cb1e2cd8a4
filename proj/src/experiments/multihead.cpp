#include <string>

#include "ait/experiments.hpp"

namespace ait::exp {

std::size_t MultiheadAutomaton::code(const std::vector<HeadSym>& syms) const {
  std::size_t c = 0;
  for (std::size_t i = syms.size(); i-- > 0;) c = c * 4 + static_cast<std::size_t>(syms[i]);
  return c;
}

namespace {

HeadSym head_sym(char ch) {
  switch (ch) {
    case '0': return HeadSym::Zero;
    case '1': return HeadSym::One;
    case '#': return HeadSym::Hash;
    default: throw std::invalid_argument(std::string("multihead input symbol '") + ch + "'");
  }
}

}  // namespace

bool simulate_multihead(const MultiheadAutomaton& a, const std::string& input) {
  std::vector<HeadSym> tape;
  tape.reserve(input.size());
  for (char ch : input) tape.push_back(head_sym(ch));
  std::vector<std::size_t> pos(a.heads, 0);
  std::vector<HeadSym> syms(a.heads);
  const std::size_t codes = std::size_t{1} << (2 * a.heads);
  std::uint32_t state = a.start;
  for (;;) {
    bool all_blank = true;
    for (std::uint32_t h = 0; h < a.heads; ++h) {
      syms[h] = pos[h] < tape.size() ? tape[pos[h]] : HeadSym::Blank;
      all_blank = all_blank && syms[h] == HeadSym::Blank;
    }
    if (all_blank) return a.accepting[state];
    const auto& rule = a.table[state * codes + a.code(syms)];
    if (!rule) return false;  // rejecting sink: the verdict can no longer change
    bool moved = false;
    for (std::uint32_t h = 0; h < a.heads; ++h) {
      if ((rule->advance >> h) & 1 && syms[h] != HeadSym::Blank) {
        ++pos[h];
        moved = true;
      }
    }
    if (!moved) throw std::logic_error("multihead rule advances no head on the input");
    state = rule->next;
  }
}

namespace {

using Set = std::vector<HeadSym>;
const Set kBit{HeadSym::Zero, HeadSym::One};
const Set kHash{HeadSym::Hash};
const Set kBlank{HeadSym::Blank};
const Set kAny{HeadSym::Zero, HeadSym::One, HeadSym::Hash, HeadSym::Blank};

class Builder {
 public:
  Builder(std::uint32_t heads, std::uint32_t states) {
    a_.heads = heads;
    a_.states = states;
    a_.accepting.assign(states, false);
    a_.table.resize(states * (std::size_t{1} << (2 * heads)));
  }

  // Adds a rule for every tuple in the product of the per-head sets.
  void on(std::uint32_t state, const std::vector<Set>& sets, std::uint32_t next, std::uint32_t advance) {
    std::vector<HeadSym> syms(a_.heads);
    expand(state, sets, 0, syms, next, advance);
  }

  void accepting_sink(std::uint32_t state) {
    a_.accepting[state] = true;
    std::vector<Set> any(a_.heads, kAny);
    std::vector<HeadSym> syms(a_.heads);
    expand_sink(state, any, 0, syms);
  }

  MultiheadAutomaton build() { return std::move(a_); }

 private:
  void expand(std::uint32_t state, const std::vector<Set>& sets, std::size_t h, std::vector<HeadSym>& syms,
              std::uint32_t next, std::uint32_t advance) {
    if (h == sets.size()) {
      a_.table[state * (std::size_t{1} << (2 * a_.heads)) + a_.code(syms)] = HeadRule{next, advance};
      return;
    }
    for (HeadSym s : sets[h]) {
      syms[h] = s;
      expand(state, sets, h + 1, syms, next, advance);
    }
  }

  void expand_sink(std::uint32_t state, const std::vector<Set>& sets, std::size_t h, std::vector<HeadSym>& syms) {
    if (h == sets.size()) {
      std::uint32_t mask = 0;
      for (std::size_t i = 0; i < syms.size(); ++i) mask |= (syms[i] != HeadSym::Blank ? 1u : 0u) << i;
      if (mask != 0) a_.table[state * (std::size_t{1} << (2 * a_.heads)) + a_.code(syms)] = HeadRule{state, mask};
      return;
    }
    for (HeadSym s : sets[h]) {
      syms[h] = s;
      expand_sink(state, sets, h + 1, syms);
    }
  }

  MultiheadAutomaton a_;
};

}  // namespace

const MultiheadAutomaton& two_head_copy_recognizer() {
  static const MultiheadAutomaton a = [] {
    enum : std::uint32_t { Seek, Compare, Accept, Count };
    Builder b(2, Count);
    b.on(Seek, {kAny, kBit}, Seek, 0b10);
    b.on(Seek, {kAny, kHash}, Compare, 0b10);
    for (HeadSym s : kBit) b.on(Compare, {{s}, {s}}, Compare, 0b11);
    b.on(Compare, {kHash, kBlank}, Accept, 0b01);
    b.accepting_sink(Accept);
    return b.build();
  }();
  return a;
}

const MultiheadAutomaton& three_head_recognizer() {
  static const MultiheadAutomaton a = [] {
    // Blocks 1..6 separated by five '#'. Head 2 goes to block 2, head 3 to
    // block 5; compare 2~5, then 1~6; head 1 then walks to block 4 and is
    // compared with head 2, now on block 3.
    enum : std::uint32_t { SeekH2, SeekH3, Cmp25 = SeekH3 + 4, Cmp16, SeekH1, Cmp34 = SeekH1 + 2, Accept, Count };
    Builder b(3, Count);
    b.on(SeekH2, {kAny, kBit, kAny}, SeekH2, 0b010);
    b.on(SeekH2, {kAny, kHash, kAny}, SeekH3, 0b010);
    for (std::uint32_t j = 0; j < 4; ++j) {
      b.on(SeekH3 + j, {kAny, kAny, kBit}, SeekH3 + j, 0b100);
      b.on(SeekH3 + j, {kAny, kAny, kHash}, j == 3 ? Cmp25 : SeekH3 + j + 1, 0b100);
    }
    for (HeadSym s : kBit) b.on(Cmp25, {kAny, {s}, {s}}, Cmp25, 0b110);
    b.on(Cmp25, {kAny, kHash, kHash}, Cmp16, 0b110);
    for (HeadSym s : kBit) b.on(Cmp16, {{s}, kAny, {s}}, Cmp16, 0b101);
    b.on(Cmp16, {kHash, kAny, kBlank}, SeekH1, 0b001);
    for (std::uint32_t j = 0; j < 2; ++j) {
      b.on(SeekH1 + j, {kBit, kAny, kAny}, SeekH1 + j, 0b001);
      b.on(SeekH1 + j, {kHash, kAny, kAny}, j == 1 ? Cmp34 : SeekH1 + j + 1, 0b001);
    }
    for (HeadSym s : kBit) b.on(Cmp34, {{s}, {s}, kAny}, Cmp34, 0b011);
    b.on(Cmp34, {kHash, kHash, kAny}, Accept, 0b011);
    b.accepting_sink(Accept);
    return b.build();
  }();
  return a;
}

namespace {

std::vector<std::string> split_hash(const std::string& s) {
  std::vector<std::string> parts(1);
  for (char c : s) {
    if (c == '#') {
      parts.emplace_back();
    } else if (c == '0' || c == '1') {
      parts.back().push_back(c);
    } else {
      return {};
    }
  }
  return parts;
}

}  // namespace

bool copy_pattern_oracle(const std::string& s) {
  auto p = split_hash(s);
  return p.size() == 2 && p[0] == p[1];
}

bool mirror_pattern_oracle(const std::string& s) {
  auto p = split_hash(s);
  return p.size() == 6 && p[0] == p[5] && p[1] == p[4] && p[2] == p[3];
}

namespace {

std::string random_word(SplitMix64& rng, std::size_t max_len) {
  std::string w;
  const std::size_t len = rng.below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) w.push_back(rng.bit() ? '1' : '0');
  return w;
}

// Flip a bit, turn a symbol into another, drop one, or insert one.
void perturb(std::string& s, SplitMix64& rng) {
  const char alphabet[] = {'0', '1', '#'};
  switch (rng.below(s.empty() ? 1 : 4)) {
    case 0: s.insert(s.begin() + static_cast<std::ptrdiff_t>(rng.below(s.size() + 1)), alphabet[rng.below(3)]); break;
    case 1: {
      auto i = rng.below(s.size());
      s[i] = s[i] == '0' ? '1' : s[i] == '1' ? '0' : alphabet[rng.below(2)];
      break;
    }
    case 2: s[rng.below(s.size())] = alphabet[rng.below(3)]; break;
    default: s.erase(s.begin() + static_cast<std::ptrdiff_t>(rng.below(s.size()))); break;
  }
}

}  // namespace

ExperimentReport multihead_experiment(std::size_t n, std::uint64_t trials, std::uint64_t seed) {
  ExperimentReport r{"multihead", {{"n", std::to_string(n)}}, seed, "SplitMix64", trials, {}, false};
  std::uint64_t agree2 = 0, agree3 = 0, accepted2 = 0, accepted3 = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = SplitMix64::stream(seed, t);
    const std::string x = random_word(rng, n), y = random_word(rng, n), z = random_word(rng, n);
    std::string two = x + "#" + x;
    std::string three = x + "#" + y + "#" + z + "#" + z + "#" + y + "#" + x;
    if (rng.bit()) perturb(two, rng);
    if (rng.bit()) perturb(three, rng);
    const bool v2 = simulate_multihead(two_head_copy_recognizer(), two);
    const bool v3 = simulate_multihead(three_head_recognizer(), three);
    agree2 += v2 == copy_pattern_oracle(two) ? 1 : 0;
    agree3 += v3 == mirror_pattern_oracle(three) ? 1 : 0;
    accepted2 += v2 ? 1 : 0;
    accepted3 += v3 ? 1 : 0;
  }
  r.metrics["two_head_agree"] = static_cast<double>(agree2);
  r.metrics["three_head_agree"] = static_cast<double>(agree3);
  r.metrics["two_head_accepted"] = static_cast<double>(accepted2);
  r.metrics["three_head_accepted"] = static_cast<double>(accepted3);
  r.pass = trials > 0 && agree2 == trials && agree3 == trials;
  return r;
}

}  // namespace ait::exp
