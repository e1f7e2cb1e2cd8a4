#include <atomic>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>
#include <unistd.h>

#include "ait/cli.hpp"

namespace ait::cli {

namespace {

std::string bits_token(const BitString& b) { return b.empty() ? "-" : b.to_string(); }

std::optional<BitString> parse_token(const std::string& t) {
  if (t == "-") return BitString{};
  return BitString::try_parse(t);
}

std::atomic<std::uint64_t> temp_counter{0};

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
  return os.str();
}

std::string CacheKey::header() const {
  std::ostringstream os;
  os << "ait-enumeration 1\n"
     << "machine_version " << machine_version << "\n"
     << "mode " << vm::mode_name(mode) << "\n"
     << "condition " << bits_token(condition) << "\n"
     << "max_len " << max_len << "\n"
     << "max_steps " << max_steps << "\n";
  return os.str();
}

std::string CacheKey::file_name() const { return sha256_hex(header()) + ".cache"; }

EnumerationCache::EnumerationCache(std::optional<std::filesystem::path> dir, std::ostream& warn)
    : dir_(std::move(dir)), warn_(&warn) {}

std::optional<std::filesystem::path> EnumerationCache::path_for(const CacheKey& key) const {
  if (!dir_) return std::nullopt;
  return *dir_ / key.file_name();
}

std::string EnumerationCache::serialize(const CacheKey& key, const std::vector<vm::HaltingCylinder>& cylinders) {
  std::ostringstream os;
  os << key.header() << "count " << cylinders.size() << "\n";
  for (const auto& c : cylinders) {
    os << bits_token(c.prefix) << ' ' << bits_token(c.output) << ' ' << c.steps << ' ' << (c.open_tail ? 1 : 0)
       << "\n";
  }
  std::string body = os.str();
  return body + "checksum " + sha256_hex(body) + "\n";
}

std::optional<std::vector<vm::HaltingCylinder>> EnumerationCache::deserialize(const CacheKey& key,
                                                                              const std::string& text) {
  const std::string header = key.header();
  if (text.compare(0, header.size(), header) != 0) return std::nullopt;
  auto mark = text.rfind("checksum ");
  if (mark == std::string::npos || mark < header.size()) return std::nullopt;
  if (text.substr(mark) != "checksum " + sha256_hex(text.substr(0, mark)) + "\n") return std::nullopt;

  std::istringstream in(text.substr(header.size(), mark - header.size()));
  std::string word;
  std::size_t count = 0;
  if (!(in >> word >> count) || word != "count") return std::nullopt;
  std::vector<vm::HaltingCylinder> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string prefix, output;
    std::uint64_t steps = 0;
    int tail = 0;
    if (!(in >> prefix >> output >> steps >> tail) || (tail != 0 && tail != 1)) return std::nullopt;
    auto p = parse_token(prefix);
    auto o = parse_token(output);
    if (!p || !o) return std::nullopt;
    out.push_back({std::move(*p), std::move(*o), steps, tail == 1});
  }
  if (in >> word) return std::nullopt;
  return out;
}

std::vector<vm::HaltingCylinder> EnumerationCache::get_or_compute(const CacheKey& key) {
  auto compute = [&] { return vm::enumerate_cylinders(key.mode, key.condition, key.max_len, {key.max_steps}); };
  if (!dir_ || key.max_len > kCacheMaxLen) {
    last_ = Source::Disabled;
    return compute();
  }
  const auto path = *path_for(key);
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    if (auto loaded = deserialize(key, buf.str())) {
      last_ = Source::Loaded;
      return *loaded;
    }
    *warn_ << "warning: cache entry " << path.string() << " is corrupt; recomputing\n";
  }
  auto cylinders = compute();
  last_ = Source::Computed;

  std::filesystem::create_directories(*dir_, ec);
  std::ostringstream tmp_name;
  tmp_name << path.filename().string() << ".tmp." << ::getpid() << '.' << temp_counter++;
  const auto tmp = *dir_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << serialize(key, cylinders);
    if (!out) {
      *warn_ << "warning: cannot write cache entry " << path.string() << "\n";
      std::filesystem::remove(tmp, ec);
      return cylinders;
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    *warn_ << "warning: cannot store cache entry " << path.string() << ": " << ec.message() << "\n";
    std::filesystem::remove(tmp, ec);
  }
  return cylinders;
}

}  // namespace ait::cli
