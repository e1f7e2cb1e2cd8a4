#include <algorithm>
#include <cctype>
#include <cstring>

#include "ait/toyvm.hpp"

namespace ait::vm {

void Tape::append_key(std::string& key) const {
  auto first = std::find(cells_.begin(), cells_.end(), std::uint8_t{1});
  if (first == cells_.end()) {
    key.push_back('E');
    return;
  }
  auto last = std::find(cells_.rbegin(), cells_.rend(), std::uint8_t{1}).base();
  auto offset = static_cast<std::int64_t>(head_) - (first - cells_.begin());
  char buf[sizeof offset];
  std::memcpy(buf, &offset, sizeof offset);
  key.append(buf, sizeof buf);
  key.append(first, last);
  key.push_back('|');
}

std::size_t op_length(Op op) noexcept { return op == Op::ReadC || op == Op::End ? 4 : 3; }

BitString op_bits(Op op) {
  switch (op) {
    case Op::Left: return {0, 0, 0};
    case Op::Right: return {0, 0, 1};
    case Op::Flip: return {0, 1, 0};
    case Op::Out: return {0, 1, 1};
    case Op::Open: return {1, 0, 0};
    case Op::Close: return {1, 0, 1};
    case Op::ReadD: return {1, 1, 0};
    case Op::ReadC: return {1, 1, 1, 0};
    case Op::End: return {1, 1, 1, 1};
  }
  return {};
}

std::string_view op_name(Op op) noexcept {
  switch (op) {
    case Op::Left: return "LEFT";
    case Op::Right: return "RIGHT";
    case Op::Flip: return "FLIP";
    case Op::Out: return "OUT";
    case Op::Open: return "OPEN";
    case Op::Close: return "CLOSE";
    case Op::ReadD: return "READD";
    case Op::ReadC: return "READC";
    case Op::End: return "END";
  }
  return "?";
}

BitString assemble(std::string_view source) {
  BitString out;
  std::size_t i = 0;
  while (i < source.size()) {
    while (i < source.size() && std::isspace(static_cast<unsigned char>(source[i]))) ++i;
    std::size_t j = i;
    while (j < source.size() && !std::isspace(static_cast<unsigned char>(source[j]))) ++j;
    if (i == j) break;
    std::string word(source.substr(i, j - i));
    std::transform(word.begin(), word.end(), word.begin(), [](unsigned char c) { return std::toupper(c); });
    if (word == "[") word = "OPEN";
    if (word == "]") word = "CLOSE";
    bool found = false;
    for (Op op : kAllOps) {
      if (op_name(op) == word) {
        out.append(op_bits(op));
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("unknown mnemonic '" + word + "'");
    i = j;
  }
  return out;
}

std::string_view mode_name(Mode mode) noexcept {
  switch (mode) {
    case Mode::Plain: return "plain";
    case Mode::Prefix: return "prefix";
    case Mode::Coin: return "coin";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view name) noexcept {
  if (name == "plain") return Mode::Plain;
  if (name == "prefix") return Mode::Prefix;
  if (name == "coin") return Mode::Coin;
  return std::nullopt;
}

std::string_view reason_name(InvalidReason reason) noexcept {
  switch (reason) {
    case InvalidReason::UnterminatedCode: return "UnterminatedCode";
    case InvalidReason::UnmatchedBracket: return "UnmatchedBracket";
    case InvalidReason::InexactConsumption: return "InexactConsumption";
    case InvalidReason::NeedsMoreBits: return "NeedsMoreBits";
    case InvalidReason::TrailingBits: return "TrailingBits";
  }
  return "?";
}

InvalidProgram::InvalidProgram(InvalidReason reason)
    : std::runtime_error("invalid program: " + std::string(reason_name(reason))), reason_(reason) {}

std::variant<Program, InvalidReason> parse_program(const BitString& description) {
  Program prog;
  std::vector<std::uint32_t> open;
  std::size_t pos = 0;
  for (;;) {
    if (pos + 3 > description.size()) return InvalidReason::UnterminatedCode;
    int v = (description[pos] << 2) | (description[pos + 1] << 1) | static_cast<int>(description[pos + 2]);
    pos += 3;
    Op op;
    if (v < 7) {
      op = static_cast<Op>(v);
    } else {
      if (pos + 1 > description.size()) return InvalidReason::UnterminatedCode;
      op = description[pos] ? Op::End : Op::ReadC;
      pos += 1;
    }
    auto index = static_cast<std::uint32_t>(prog.ops.size());
    prog.ops.push_back(op);
    prog.match.push_back(0);
    if (op == Op::Open) {
      open.push_back(index);
    } else if (op == Op::Close) {
      if (open.empty()) return InvalidReason::UnmatchedBracket;
      prog.match[index] = open.back();
      prog.match[open.back()] = index;
      open.pop_back();
    } else if (op == Op::End) {
      break;
    }
  }
  if (!open.empty()) return InvalidReason::UnmatchedBracket;
  prog.code_bits = pos;
  return prog;
}

Program parse_coin_program(const BitString& code) {
  auto parsed = parse_program(code);
  if (auto* reason = std::get_if<InvalidReason>(&parsed)) throw InvalidProgram(*reason);
  auto& prog = std::get<Program>(parsed);
  if (prog.code_bits != code.size()) throw InvalidProgram(InvalidReason::TrailingBits);
  return std::move(prog);
}

// ---- StaticMachine -----------------------------------------------------

StaticMachine::StaticMachine(const Program& program, const BitString& condition, std::uint64_t max_steps)
    : program_(&program), condition_(&condition), max_steps_(max_steps) {}

StaticMachine::Status StaticMachine::advance() {
  if (halted_) return Status::Halted;
  if (awaiting_) return Status::NeedData;
  const auto& ops = program_->ops;
  for (;;) {
    if (steps_ >= max_steps_) return Status::BudgetExceeded;
    ++steps_;
    switch (ops[pc_]) {
      case Op::Left: tape_.left(); ++pc_; break;
      case Op::Right: tape_.right(); ++pc_; break;
      case Op::Flip: tape_.flip(); ++pc_; break;
      case Op::Out: output_.push_back(tape_.read()); ++pc_; break;
      case Op::Open: pc_ = tape_.read() ? pc_ + 1 : program_->match[pc_] + 1; break;
      case Op::Close: pc_ = tape_.read() ? program_->match[pc_] + 1 : pc_ + 1; break;
      case Op::ReadC:
        if (cond_pos_ >= condition_->size()) {
          halted_ = true;
          return Status::Halted;
        }
        tape_.write((*condition_)[cond_pos_++]);
        ++pc_;
        break;
      case Op::ReadD: awaiting_ = true; return Status::NeedData;
      case Op::End: halted_ = true; return Status::Halted;
    }
  }
}

void StaticMachine::supply(std::optional<bool> bit) {
  if (!awaiting_) throw std::logic_error("StaticMachine::supply without a pending read");
  awaiting_ = false;
  if (!bit) {
    halted_ = true;
    return;
  }
  tape_.write(*bit);
  ++data_read_;
  ++pc_;
}

std::string StaticMachine::config_key() const {
  std::string key;
  key.append(reinterpret_cast<const char*>(&pc_), sizeof pc_);
  key.append(reinterpret_cast<const char*>(&steps_), sizeof steps_);
  key.append(reinterpret_cast<const char*>(&cond_pos_), sizeof cond_pos_);
  key.push_back(awaiting_ ? 'A' : 'R');
  tape_.append_key(key);
  return key;
}

// ---- PrefixMachine -----------------------------------------------------

PrefixMachine::PrefixMachine(const BitString& condition, std::uint64_t max_steps)
    : condition_(&condition), max_steps_(max_steps) {}

void PrefixMachine::append_op(Op op) {
  auto index = buffer_.size();
  buffer_.push_back(op);
  match_.push_back(-1);
  if (op == Op::Open) {
    open_.push_back(index);
  } else if (op == Op::Close) {
    if (open_.empty()) {
      invalid_ = InvalidReason::UnmatchedBracket;
      terminal_ = Status::Invalid;
      return;
    }
    auto partner = open_.back();
    open_.pop_back();
    match_[index] = static_cast<std::int64_t>(partner);
    match_[partner] = static_cast<std::int64_t>(index);
    if (skipping_ && *skipping_ == partner) {
      skipping_.reset();
      pc_ = index + 1;
    }
  }
}

std::optional<PrefixMachine::Status> PrefixMachine::execute(Op op) {
  if (steps_ >= max_steps_) return Status::BudgetExceeded;
  ++steps_;
  switch (op) {
    case Op::Left: tape_.left(); ++pc_; break;
    case Op::Right: tape_.right(); ++pc_; break;
    case Op::Flip: tape_.flip(); ++pc_; break;
    case Op::Out:
      output_.push_back(tape_.read());
      if (target_ != nullptr &&
          (output_.size() > target_->size() || (*target_)[output_.size() - 1] != output_[output_.size() - 1])) {
        return Status::Rejected;
      }
      ++pc_;
      break;
    case Op::Open:
      if (tape_.read()) {
        ++pc_;
      } else if (match_[pc_] >= 0) {
        pc_ = static_cast<std::size_t>(match_[pc_]) + 1;
      } else {
        skipping_ = pc_;
      }
      break;
    case Op::Close:
      pc_ = tape_.read() ? static_cast<std::size_t>(match_[pc_]) + 1 : pc_ + 1;
      break;
    case Op::ReadC:
      if (cond_pos_ >= condition_->size()) {
        halted_ = true;
        return Status::Halted;
      }
      tape_.write((*condition_)[cond_pos_++]);
      ++pc_;
      break;
    case Op::ReadD: awaiting_data_ = true; return Status::NeedBit;
    case Op::End: halted_ = true; return Status::Halted;
  }
  return std::nullopt;
}

PrefixMachine::Status PrefixMachine::advance() {
  if (terminal_) return *terminal_;
  if (halted_) return Status::Halted;
  for (;;) {
    if (awaiting_data_ || skipping_ || pc_ == buffer_.size()) return Status::NeedBit;
    auto st = execute(buffer_[pc_]);
    if (!st) continue;
    if (*st == Status::BudgetExceeded || *st == Status::Rejected) terminal_ = st;
    return *st;
  }
}

void PrefixMachine::supply(bool bit) {
  if (terminal_ || halted_) throw std::logic_error("PrefixMachine::supply after stop");
  ++consumed_;
  if (awaiting_data_) {
    awaiting_data_ = false;
    tape_.write(bit);
    ++pc_;
    return;
  }
  partial_ = static_cast<std::uint8_t>((partial_ << 1) | (bit ? 1 : 0));
  ++partial_len_;
  std::optional<Op> op;
  if (partial_len_ == 3 && partial_ < 7) {
    op = static_cast<Op>(partial_);
  } else if (partial_len_ == 4) {
    op = (partial_ & 1) ? Op::End : Op::ReadC;
  }
  if (op) {
    partial_ = 0;
    partial_len_ = 0;
    append_op(*op);
  }
}

bool PrefixMachine::at_clean_boundary() const noexcept {
  return !terminal_ && !halted_ && !awaiting_data_ && !skipping_ && partial_len_ == 0 && open_.empty() &&
         pc_ == buffer_.size();
}

std::string PrefixMachine::config_key() const {
  std::string key;
  key.append(reinterpret_cast<const char*>(&cond_pos_), sizeof cond_pos_);
  auto out_len = output_.size();
  key.append(reinterpret_cast<const char*>(&out_len), sizeof out_len);
  tape_.append_key(key);
  return key;
}

// ---- run ---------------------------------------------------------------

namespace {

template <class NextBit>
RunOutcome run_program(const Program& prog, const BitString& condition, RunBudget budget, bool count_data,
                       NextBit&& next_bit) {
  StaticMachine m(prog, condition, budget.max_steps);
  for (;;) {
    switch (m.advance()) {
      case StaticMachine::Status::NeedData: m.supply(next_bit()); break;
      case StaticMachine::Status::Halted:
        return Halted{m.output(), m.steps(), prog.code_bits + (count_data ? m.data_read() : 0)};
      case StaticMachine::Status::BudgetExceeded: return BudgetExceeded{};
    }
  }
}

RunOutcome run_prefix(const BitString& description, const BitString& condition, RunBudget budget) {
  PrefixMachine m(condition, budget.max_steps);
  for (;;) {
    switch (m.advance()) {
      case PrefixMachine::Status::NeedBit:
        if (m.consumed() == description.size()) return Invalid{InvalidReason::NeedsMoreBits};
        m.supply(description[m.consumed()]);
        break;
      case PrefixMachine::Status::Halted:
        if (m.consumed() != description.size()) return Invalid{InvalidReason::InexactConsumption};
        return Halted{m.output(), m.steps(), m.consumed()};
      case PrefixMachine::Status::BudgetExceeded: return BudgetExceeded{};
      case PrefixMachine::Status::Invalid: return Invalid{m.invalid_reason()};
      case PrefixMachine::Status::Rejected: break;  // no target is set
    }
  }
}

}  // namespace

RunOutcome run(const BitString& description, Mode mode, const BitString& condition, const BitString& coins,
               RunBudget budget) {
  if (mode == Mode::Prefix) return run_prefix(description, condition, budget);

  auto parsed = parse_program(description);
  if (auto* reason = std::get_if<InvalidReason>(&parsed)) return Invalid{*reason};
  const auto& prog = std::get<Program>(parsed);
  const bool coin = mode == Mode::Coin;
  if (coin && prog.code_bits != description.size()) return Invalid{InvalidReason::TrailingBits};
  const BitString& stream = coin ? coins : description;
  std::size_t cursor = coin ? 0 : prog.code_bits;
  return run_program(prog, condition, budget, !coin, [&]() -> std::optional<bool> {
    if (cursor >= stream.size()) return std::nullopt;
    return stream[cursor++];
  });
}

RunOutcome run_coin(const BitString& code, const BitString& condition, const CoinGenerator& coins,
                    RunBudget budget) {
  auto parsed = parse_program(code);
  if (auto* reason = std::get_if<InvalidReason>(&parsed)) return Invalid{*reason};
  const auto& prog = std::get<Program>(parsed);
  if (prog.code_bits != code.size()) return Invalid{InvalidReason::TrailingBits};
  return run_program(prog, condition, budget, false, [&]() -> std::optional<bool> { return coins(); });
}

}  // namespace ait::vm
