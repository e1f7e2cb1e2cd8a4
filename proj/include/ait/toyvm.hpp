#pragma once

// TBF-1: the fixed reference machine.
//
// Instructions are a prefix code read left to right:
//   000 LEFT   001 RIGHT  010 FLIP  011 OUT   100 OPEN  101 CLOSE
//   110 READD  1110 READC  1111 END
// OPEN jumps past its matching CLOSE when the current cell is 0; CLOSE jumps
// back just after its matching OPEN when the cell is 1. READD loads the next
// data bit (description bit in Prefix mode, coin in Coin mode), READC the
// next condition bit. A read from an exhausted data or condition stream
// halts normally. Every executed instruction costs one step.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ait/bitstring.hpp"
#include "ait/tape.hpp"

namespace ait::vm {

inline constexpr std::string_view kMachineVersion = "TBF-1";

enum class Op : std::uint8_t { Left, Right, Flip, Out, Open, Close, ReadD, ReadC, End };

inline constexpr Op kAllOps[] = {Op::Left, Op::Right, Op::Flip, Op::Out,  Op::Open,
                                 Op::Close, Op::ReadD, Op::ReadC, Op::End};

std::size_t op_length(Op op) noexcept;
BitString op_bits(Op op);
std::string_view op_name(Op op) noexcept;

// Encodes whitespace-separated mnemonics (LEFT RIGHT FLIP OUT OPEN CLOSE
// READD READC END, with "[" and "]" accepted for OPEN and CLOSE).
BitString assemble(std::string_view source);

enum class Mode { Plain, Prefix, Coin };

std::string_view mode_name(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view name) noexcept;

struct RunBudget {
  std::uint64_t max_steps = 1;
};

enum class InvalidReason {
  UnterminatedCode,
  UnmatchedBracket,
  InexactConsumption,
  NeedsMoreBits,
  TrailingBits,
};

std::string_view reason_name(InvalidReason reason) noexcept;

struct Halted {
  BitString output;
  std::uint64_t steps = 0;
  std::uint64_t consumed = 0;

  friend bool operator==(const Halted&, const Halted&) = default;
};

struct BudgetExceeded {
  friend bool operator==(const BudgetExceeded&, const BudgetExceeded&) = default;
};

struct Invalid {
  InvalidReason reason;

  friend bool operator==(const Invalid&, const Invalid&) = default;
};

using RunOutcome = std::variant<Halted, BudgetExceeded, Invalid>;

using CoinGenerator = std::function<bool()>;

// Runs a description. coins is read only in Coin mode, where a finite coin
// string that runs out halts the machine like an exhausted data segment.
RunOutcome run(const BitString& description, Mode mode, const BitString& condition,
               const BitString& coins, RunBudget budget);

// Coin mode with an unbounded coin source.
RunOutcome run_coin(const BitString& code, const BitString& condition, const CoinGenerator& coins,
                    RunBudget budget);

// Code segment of a Plain/Coin description: instructions up to and including
// the first END, with brackets matched statically.
struct Program {
  std::vector<Op> ops;
  std::vector<std::uint32_t> match;  // partner index for OPEN/CLOSE
  std::size_t code_bits = 0;
};

std::variant<Program, InvalidReason> parse_program(const BitString& description);

class InvalidProgram : public std::runtime_error {
 public:
  explicit InvalidProgram(InvalidReason reason);
  InvalidReason reason() const noexcept { return reason_; }

 private:
  InvalidReason reason_;
};

// Parses a Coin-mode description (code segment only, nothing after END).
Program parse_coin_program(const BitString& code);

// Resumable executor for a parsed Program. Stops whenever a READD needs a
// bit so callers can feed data, coins, or branch on both values. The program
// and condition must outlive the machine.
class StaticMachine {
 public:
  enum class Status { NeedData, Halted, BudgetExceeded };

  StaticMachine(const Program& program, const BitString& condition, std::uint64_t max_steps);

  Status advance();
  // Answers a NeedData stop; nullopt means the stream is exhausted, which
  // halts the machine.
  void supply(std::optional<bool> bit);

  const BitString& output() const noexcept { return output_; }
  std::uint64_t steps() const noexcept { return steps_; }
  std::uint64_t data_read() const noexcept { return data_read_; }
  bool halted() const noexcept { return halted_; }

  // Everything that determines future behaviour except the output so far.
  std::string config_key() const;

 private:
  const Program* program_;
  const BitString* condition_;
  std::uint64_t max_steps_;
  std::size_t pc_ = 0;
  Tape tape_;
  BitString output_;
  std::uint64_t steps_ = 0;
  std::size_t cond_pos_ = 0;
  std::uint64_t data_read_ = 0;
  bool halted_ = false;
  bool awaiting_ = false;
};

// Prefix-mode machine: instructions are decoded from the description on
// demand, so the machine pulls bits one at a time. The condition must
// outlive the machine.
class PrefixMachine {
 public:
  enum class Status { NeedBit, Halted, BudgetExceeded, Invalid, Rejected };

  PrefixMachine(const BitString& condition, std::uint64_t max_steps);

  // Optional output filter: once the output stops being a prefix of target
  // the machine stops with Rejected. target must outlive the machine.
  void set_target(const BitString* target) noexcept { target_ = target; }

  Status advance();
  void supply(bool bit);

  InvalidReason invalid_reason() const noexcept { return invalid_; }
  const BitString& output() const noexcept { return output_; }
  std::uint64_t steps() const noexcept { return steps_; }
  std::uint64_t consumed() const noexcept { return consumed_; }

  // True when no earlier instruction can ever run again: no unmatched
  // OPEN, nothing being skipped or half-decoded, pc at the buffer end.
  bool at_clean_boundary() const noexcept;
  // Tape and condition position; meaningful at a clean boundary.
  std::string config_key() const;

 private:
  void append_op(Op op);
  // nullopt: keep running.
  std::optional<Status> execute(Op op);

  const BitString* condition_;
  const BitString* target_ = nullptr;
  std::uint64_t max_steps_;

  std::vector<Op> buffer_;
  std::vector<std::int64_t> match_;
  std::vector<std::size_t> open_;
  std::uint8_t partial_ = 0;
  std::uint8_t partial_len_ = 0;
  std::optional<std::size_t> skipping_;  // OPEN index whose block is being skipped

  std::size_t pc_ = 0;
  Tape tape_;
  BitString output_;
  std::uint64_t steps_ = 0;
  std::uint64_t consumed_ = 0;
  std::size_t cond_pos_ = 0;
  bool awaiting_data_ = false;
  bool halted_ = false;
  std::optional<Status> terminal_;
  InvalidReason invalid_ = InvalidReason::UnmatchedBracket;
};

// ---- Enumeration -------------------------------------------------------

struct HaltingRecord {
  BitString description;
  BitString output;
  std::uint64_t steps = 0;

  friend bool operator==(const HaltingRecord&, const HaltingRecord&) = default;
};

// One execution path. The prefix itself halts; when open_tail is set, so
// does every extension of it (the machine stopped without reading further).
struct HaltingCylinder {
  BitString prefix;
  BitString output;
  std::uint64_t steps = 0;
  bool open_tail = false;

  friend bool operator==(const HaltingCylinder&, const HaltingCylinder&) = default;
};

// All halting descriptions of length <= max_len as disjoint cylinders,
// sorted by prefix in (length, lex) order. Plain or Prefix mode.
std::vector<HaltingCylinder> enumerate_cylinders(Mode mode, const BitString& condition, std::size_t max_len,
                                                 RunBudget budget);

// Expands cylinders into individual descriptions of length <= max_len,
// emitted in (length, lex) order.
void expand_cylinders(const std::vector<HaltingCylinder>& cylinders, std::size_t max_len,
                      const std::function<void(const HaltingRecord&)>& sink);

// Every description of length <= max_len that halts within budget, once
// each, in (length, lex) order.
void enumerate_halting(Mode mode, const BitString& condition, std::size_t max_len, RunBudget budget,
                       const std::function<void(const HaltingRecord&)>& sink);

struct Witness {
  BitString description;
  std::uint64_t steps = 0;
};

// (length, lex)-first shortest description producing target, or nullopt.
std::optional<Witness> shortest_description(Mode mode, const BitString& target, const BitString& condition,
                                            std::size_t max_len, RunBudget budget);

}  // namespace ait::vm
