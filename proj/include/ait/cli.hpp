#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ait/bitstring.hpp"
#include "ait/complexity.hpp"
#include "ait/toyvm.hpp"
#include "json.hpp"

namespace ait::cli {

struct Config {
  kc::Budgets budgets{16, 256};
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> cache_dir;

  double pair_constant = 40.0;
  double heapsort_constant = 6.0;
  std::uint64_t kt_header = 8;
  double entropy_constant = 16.0;
  std::size_t tail_start = 1024;
  std::uint64_t literal_constant = 25;

  nlohmann::json constants() const;
};

struct CacheKey {
  std::string machine_version{vm::kMachineVersion};
  vm::Mode mode = vm::Mode::Plain;
  BitString condition;
  std::size_t max_len = 0;
  std::uint64_t max_steps = 1;

  // Header text; the file name is its SHA-256.
  std::string header() const;
  std::string file_name() const;
};

// Enumerations above this length are computed directly and never stored.
inline constexpr std::size_t kCacheMaxLen = 20;

std::string sha256_hex(const std::string& data);

// One file per key holding the key header, the halting cylinders in
// canonical order, and a checksum line. Without a directory every call
// computes.
class EnumerationCache {
 public:
  enum class Source { Disabled, Computed, Loaded };

  EnumerationCache(std::optional<std::filesystem::path> dir, std::ostream& warn);

  std::vector<vm::HaltingCylinder> get_or_compute(const CacheKey& key);

  bool enabled() const noexcept { return dir_.has_value(); }
  Source last_source() const noexcept { return last_; }
  std::optional<std::filesystem::path> path_for(const CacheKey& key) const;

  static std::string serialize(const CacheKey& key, const std::vector<vm::HaltingCylinder>& cylinders);
  // nullopt when the text is damaged or belongs to another key.
  static std::optional<std::vector<vm::HaltingCylinder>> deserialize(const CacheKey& key, const std::string& text);

 private:
  std::optional<std::filesystem::path> dir_;
  std::ostream* warn_;
  Source last_ = Source::Disabled;
};

// Runs one command line (without the program name). JSON lines go to out,
// diagnostics to err. Returns 0, 1 for domain errors, 2 for usage errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ait::cli
