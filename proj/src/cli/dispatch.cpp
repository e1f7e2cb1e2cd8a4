#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ait/cli.hpp"
#include "ait/codec.hpp"
#include "ait/experiments.hpp"
#include "ait/kraft.hpp"
#include "ait/randomness.hpp"
#include "ait/rng.hpp"
#include "ait/semimeasure.hpp"

namespace ait::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Domain error already reported as JSON; carries only the exit code.
struct Reported {};

json dyadic_json(const DyadicRational& d) {
  json num;
  if (mpz_fits_ulong_p(d.numerator().get_mpz_t())) {
    num = static_cast<std::uint64_t>(mpz_get_ui(d.numerator().get_mpz_t()));
  } else {
    num = d.numerator().get_str();
  }
  return {{"num", num}, {"exp", d.exponent()}};
}

json budgets_json(const kc::Budgets& b) { return {{"max_len", b.max_len}, {"max_steps", b.max_steps}}; }

json bounds_json(const prob::ProbBounds& b) {
  return {{"lower", dyadic_json(b.lower)}, {"upper", dyadic_json(b.upper)}, {"depth", b.depth}};
}

BitString bits_arg(const std::string& text, const char* flag) {
  if (text == "-") return {};
  auto b = BitString::try_parse(text);
  if (!b) throw UsageError(std::string(flag) + ": not a bit string: " + text);
  return *b;
}

// Bit text, or a path to a file holding bit text (whitespace ignored) or
// raw bytes.
BitString bits_or_file(const std::string& text, const char* flag) {
  if (auto b = BitString::try_parse(text)) return *b;
  std::ifstream in(text, std::ios::binary);
  if (!in) throw UsageError(std::string(flag) + ": neither a bit string nor a readable file: " + text);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string raw = buf.str();
  std::string compact;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  if (auto b = BitString::try_parse(compact)) return *b;
  return BitString::from_bytes(raw);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void flatten(const json& j, const std::string& prefix, std::vector<std::string>& parts) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, parts);
  } else {
    parts.push_back(prefix + "=" + scalar_text(j));
  }
}

struct Context {
  Config config;
  std::string format = "json";
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
  std::unique_ptr<EnumerationCache> cache;

  void emit(json j) const {
    if (format == "text") {
      std::vector<std::string> parts;
      flatten(j, "", parts);
      for (std::size_t i = 0; i < parts.size(); ++i) *out << (i ? " " : "") << parts[i];
      *out << "\n";
    } else {
      *out << j.dump() << "\n";
    }
  }

  json report(const std::string& command) const {
    return {{"command", command}, {"machine_version", vm::kMachineVersion}, {"config", config.constants()}};
  }

  // Enumeration-backed table when caching applies, otherwise nullopt.
  std::optional<std::vector<vm::HaltingCylinder>> cylinders(vm::Mode mode, const BitString& cond,
                                                            kc::Budgets b) const {
    if (!cache->enabled() || b.max_len > kCacheMaxLen) return std::nullopt;
    return cache->get_or_compute({std::string(vm::kMachineVersion), mode, cond, b.max_len, b.max_steps});
  }
};

json estimate_json(const kc::ComplexityEstimate& e) {
  json j;
  j["value"] = e.value ? json(*e.value) : json(nullptr);
  j["found"] = e.found();
  j["kind"] = kind_name(e.kind);
  j["budgets"] = e.budgets ? budgets_json(*e.budgets) : json(nullptr);
  j["witness"] = e.witness ? json(e.witness->to_string()) : json(nullptr);
  j["machine_version"] = e.machine_version;
  return j;
}

rnd::SelectionRule parse_rule(const std::string& text, std::uint64_t prog_budget) {
  if (text == "even") return rnd::EvenPositions{};
  if (text == "after-zeros") return rnd::AfterZeros{};
  if (text.rfind("pattern:", 0) == 0) return rnd::AfterPattern{bits_arg(text.substr(8), "--rule")};
  if (text.rfind("prog:", 0) == 0) return rnd::ProgramRule{bits_arg(text.substr(5), "--rule"), prog_budget};
  throw UsageError("--rule: expected even, after-zeros, pattern:<bits> or prog:<bits>, got " + text);
}

mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0) throw UsageError("--terms: not a rational: " + text);
  if (q.get_den() == 0) throw UsageError("--terms: zero denominator: " + text);
  q.canonicalize();
  return q;
}

std::size_t parse_size(const std::string& text, const char* flag) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text[0] == '-') throw UsageError(std::string(flag) + ": not a count: " + text);
  return static_cast<std::size_t>(v);
}

json experiment_json(const exp::ExperimentReport& r) {
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  return {{"name", r.name}, {"params", r.params}, {"seed", r.seed}, {"prng", r.prng},
          {"trials", r.trials}, {"metrics", metrics}, {"pass", r.pass}};
}

void merge(json& into, const json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.out = &out;
  ctx.err = &err;

  CLI::App app{"Algorithmic information toolkit over the TBF-1 reference machine", "ait"};
  app.fallthrough();
  app.require_subcommand(1);
  std::optional<std::string> cache_dir;
  std::optional<std::uint64_t> seed;
  app.add_option("--format", ctx.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--cache-dir", cache_dir, "Enumeration cache directory")->envname("AIT_CACHE_DIR");
  app.add_option("--seed", seed, "Seed for pseudo-random inputs")->envname("AIT_SEED");

  std::map<const CLI::App*, std::function<void()>> actions;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    return parent->add_subcommand(name, desc);
  };

  // ---- vm -------------------------------------------------------------------
  auto* vm_cmd = app.add_subcommand("vm", "Run or enumerate TBF-1 descriptions");
  vm_cmd->require_subcommand(1);

  std::string vm_mode, vm_desc, vm_cond = "-", vm_coins = "-";
  std::uint64_t vm_steps = 0;
  auto* vm_run = leaf(vm_cmd, "run", "Run one description");
  vm_run->add_option("--mode", vm_mode)->required()->check(CLI::IsMember({"plain", "prefix", "coin"}));
  vm_run->add_option("--desc", vm_desc)->required();
  vm_run->add_option("--cond", vm_cond);
  vm_run->add_option("--coins", vm_coins);
  vm_run->add_option("--max-steps", vm_steps)->required();
  actions[vm_run] = [&] {
    const auto mode = *vm::parse_mode(vm_mode);
    auto outcome = vm::run(bits_arg(vm_desc, "--desc"), mode, bits_arg(vm_cond, "--cond"),
                           bits_arg(vm_coins, "--coins"), {vm_steps});
    json j = ctx.report("vm run");
    j["mode"] = vm_mode;
    j["max_steps"] = vm_steps;
    if (auto* h = std::get_if<vm::Halted>(&outcome)) {
      merge(j, {{"outcome", "halted"}, {"output", h->output.to_string()}, {"steps", h->steps},
                {"consumed", h->consumed}});
    } else if (std::holds_alternative<vm::BudgetExceeded>(outcome)) {
      j["outcome"] = "budget_exceeded";
    } else {
      merge(j, {{"outcome", "invalid"}, {"reason", vm::reason_name(std::get<vm::Invalid>(outcome).reason)}});
    }
    ctx.emit(j);
  };

  std::string enum_mode, enum_cond = "-";
  kc::Budgets enum_b;
  auto* vm_enum = leaf(vm_cmd, "enum", "List every halting description within budgets");
  vm_enum->add_option("--mode", enum_mode)->required()->check(CLI::IsMember({"plain", "prefix"}));
  vm_enum->add_option("--cond", enum_cond);
  vm_enum->add_option("--max-len", enum_b.max_len)->required();
  vm_enum->add_option("--max-steps", enum_b.max_steps)->required();
  actions[vm_enum] = [&] {
    const auto mode = *vm::parse_mode(enum_mode);
    const auto cond = bits_arg(enum_cond, "--cond");
    auto cyl = ctx.cylinders(mode, cond, enum_b);
    if (!cyl) cyl = vm::enumerate_cylinders(mode, cond, enum_b.max_len, {enum_b.max_steps});
    std::vector<vm::HaltingRecord> records;
    vm::expand_cylinders(*cyl, enum_b.max_len, [&](const vm::HaltingRecord& r) { records.push_back(r); });
    json j = ctx.report("vm enum");
    merge(j, {{"mode", enum_mode}, {"condition", cond.to_string()}, {"budgets", budgets_json(enum_b)},
              {"count", records.size()}});
    ctx.emit(j);
    for (const auto& r : records) {
      ctx.emit({{"description", r.description.to_string()}, {"output", r.output.to_string()}, {"steps", r.steps}});
    }
  };

  std::string asm_source;
  auto* vm_asm = leaf(vm_cmd, "asm", "Encode mnemonics");
  vm_asm->add_option("--source", asm_source)->required();
  actions[vm_asm] = [&] {
    auto bits = vm::assemble(asm_source);
    json j = ctx.report("vm asm");
    merge(j, {{"bits", bits.to_string()}, {"length", bits.size()}});
    ctx.emit(j);
  };

  // ---- kc -------------------------------------------------------------------
  auto* kc_cmd = app.add_subcommand("kc", "Description complexity");
  kc_cmd->require_subcommand(1);
  std::string kc_x, kc_y = "-";
  kc::Budgets kc_b;
  auto add_exact = [&](const std::string& name, const std::string& desc, bool needs_y) {
    auto* c = leaf(kc_cmd, name, desc);
    c->add_option("--x", kc_x)->required();
    auto* y = c->add_option("--y", kc_y);
    if (needs_y) y->required();
    c->add_option("--max-len", kc_b.max_len)->required();
    c->add_option("--max-steps", kc_b.max_steps)->required();
    return c;
  };
  auto exact_query = [&](vm::Mode mode, const BitString& target, const BitString& cond) {
    if (auto cyl = ctx.cylinders(mode, cond, kc_b)) {
      auto table = kc::shortest_table(*cyl);
      auto it = table.find(target);
      return kc::exact_estimate(it == table.end() ? std::nullopt : std::optional(it->second), kc_b);
    }
    return mode == vm::Mode::Plain ? kc::c_plain(target, kc_b, cond) : kc::k_prefix(target, kc_b);
  };
  auto kc_emit = [&](const std::string& cmd, const kc::ComplexityEstimate& e) {
    json j = ctx.report(cmd);
    merge(j, estimate_json(e));
    j["x"] = bits_arg(kc_x, "--x").to_string();
    ctx.emit(j);
  };
  actions[add_exact("exact", "Plain complexity C(x)", false)] = [&] {
    kc_emit("kc exact", exact_query(vm::Mode::Plain, bits_arg(kc_x, "--x"), {}));
  };
  actions[add_exact("cond", "Conditional complexity C(x|y)", true)] = [&] {
    kc_emit("kc cond", exact_query(vm::Mode::Plain, bits_arg(kc_x, "--x"), bits_arg(kc_y, "--y")));
  };
  actions[add_exact("prefix", "Prefix complexity K(x)", false)] = [&] {
    kc_emit("kc prefix", exact_query(vm::Mode::Prefix, bits_arg(kc_x, "--x"), {}));
  };
  actions[add_exact("pair", "Complexity of the pair encoding of x and y", true)] = [&] {
    auto d = pair_encode(bits_arg(kc_x, "--x"), bits_arg(kc_y, "--y"));
    kc_emit("kc pair", exact_query(vm::Mode::Plain, d, {}));
  };

  std::uint64_t approx_t = 0;
  std::optional<std::size_t> approx_len;
  auto* kc_approx = leaf(kc_cmd, "approx", "Monotone upper approximation");
  kc_approx->add_option("--x", kc_x)->required();
  kc_approx->add_option("--steps", approx_t)->required();
  kc_approx->add_option("--max-len", approx_len);
  actions[kc_approx] = [&] {
    const auto x = bits_arg(kc_x, "--x");
    const std::size_t len = approx_len.value_or(x.size() + kc::kLiteralConstant);
    json j = ctx.report("kc approx");
    merge(j, {{"x", x.to_string()}, {"value", kc::k_approx(x, approx_t, len)}, {"steps", approx_t},
              {"max_len", len}});
    ctx.emit(j);
  };

  auto* kc_kt = leaf(kc_cmd, "kt", "Krichevsky-Trofimov code length");
  kc_kt->add_option("--x", kc_x)->required();
  actions[kc_kt] = [&] {
    const auto x = bits_or_file(kc_x, "--x");
    json j = ctx.report("kc kt");
    merge(j, estimate_json(kc::kt_estimate(x)));
    merge(j, {{"n", x.size()}, {"ones", x.count_ones()}});
    ctx.emit(j);
  };

  // ---- kraft ----------------------------------------------------------------
  auto* kraft_cmd = app.add_subcommand("kraft", "Prefix-free code allocation");
  kraft_cmd->require_subcommand(1);
  std::vector<std::uint32_t> requests;
  auto* kraft_alloc = leaf(kraft_cmd, "alloc", "Allocate codewords of the requested lengths online");
  kraft_alloc->add_option("--requests", requests)->required()->delimiter(',');
  actions[kraft_alloc] = [&] {
    auto result = kraft::kraft_code(requests);
    json words = json::array();
    for (const auto& w : result.codewords) words.push_back(w.to_string());
    json j = ctx.report("kraft alloc");
    j["requests"] = requests;
    j["codewords"] = words;
    if (result.overflow) {
      merge(j, {{"error", "overflow"}, {"index", *result.overflow}});
      ctx.emit(j);
      throw Reported{};
    }
    ctx.emit(j);
  };

  // ---- prob -----------------------------------------------------------------
  auto* prob_cmd = app.add_subcommand("prob", "Coin machines and semimeasures");
  prob_cmd->require_subcommand(1);
  std::string prob_code;
  std::uint64_t prob_depth = 0;
  auto* prob_halt = leaf(prob_cmd, "halt", "Halting probability bounds of a coin program");
  prob_halt->add_option("--code", prob_code)->required();
  prob_halt->add_option("--depth", prob_depth)->required();
  actions[prob_halt] = [&] {
    json j = ctx.report("prob halt");
    j["code"] = bits_arg(prob_code, "--code").to_string();
    merge(j, bounds_json(prob::halting_bounds(bits_arg(prob_code, "--code"), prob_depth)));
    ctx.emit(j);
  };
  auto* prob_dist = leaf(prob_cmd, "dist", "Output distribution of a coin program");
  prob_dist->add_option("--code", prob_code)->required();
  prob_dist->add_option("--depth", prob_depth)->required();
  actions[prob_dist] = [&] {
    auto table = prob::output_distribution(bits_arg(prob_code, "--code"), prob_depth);
    json entries = json::array();
    for (const auto& [x, p] : table.entries) entries.push_back({{"output", x.to_string()}, {"p", dyadic_json(p)}});
    json j = ctx.report("prob dist");
    merge(j, {{"code", bits_arg(prob_code, "--code").to_string()}, {"depth", prob_depth}, {"entries", entries},
              {"total", dyadic_json(table.total())}});
    ctx.emit(j);
  };

  std::string lsc_terms;
  std::size_t lsc_depth = 0;
  auto* prob_lsc = leaf(prob_cmd, "lsc", "Halting bounds of the coin machine for a non-decreasing sequence");
  prob_lsc->add_option("--terms", lsc_terms)->required();
  prob_lsc->add_option("--depth", lsc_depth)->required();
  actions[prob_lsc] = [&] {
    std::vector<mpq_class> terms;
    json shown = json::array();
    for (const auto& t : split(lsc_terms, ',')) {
      terms.push_back(parse_rational(t));
      shown.push_back(terms.back().get_str());
    }
    if (terms.empty()) throw UsageError("--terms: at least one term is required");
    auto seq = prob::LscSequence::from_terms(terms);
    json j = ctx.report("prob lsc");
    merge(j, {{"terms", shown}, {"limit", seq.limit()->get_str()}});
    merge(j, bounds_json(prob::lsc_halting_bounds(seq, lsc_depth)));
    ctx.emit(j);
  };

  std::string apriori_x;
  kc::Budgets prob_b;
  auto* prob_apriori = leaf(prob_cmd, "apriori", "Lower bound on the a priori probability of x");
  prob_apriori->add_option("--x", apriori_x)->required();
  prob_apriori->add_option("--max-len", prob_b.max_len)->required();
  prob_apriori->add_option("--max-steps", prob_b.max_steps)->required();
  actions[prob_apriori] = [&] {
    const auto x = bits_arg(apriori_x, "--x");
    DyadicRational value;
    if (auto cyl = ctx.cylinders(vm::Mode::Prefix, {}, prob_b)) {
      auto table = prob::apriori_table(*cyl, prob_b);
      if (auto it = table.entries.find(x); it != table.entries.end()) value = it->second;
    } else {
      value = prob::apriori_lower(x, prob_b);
    }
    json j = ctx.report("prob apriori");
    merge(j, {{"x", x.to_string()}, {"value", dyadic_json(value)}, {"budgets", budgets_json(prob_b)}});
    j["neg_log2"] = value.is_zero() ? json(nullptr) : json(value.neg_log2());
    ctx.emit(j);
  };

  auto* prob_gap = leaf(prob_cmd, "gap", "Coding gap histogram over every enumerated output");
  prob_gap->add_option("--max-len", prob_b.max_len)->required();
  prob_gap->add_option("--max-steps", prob_b.max_steps)->required();
  actions[prob_gap] = [&] {
    auto cyl = ctx.cylinders(vm::Mode::Prefix, {}, prob_b);
    if (!cyl) cyl = vm::enumerate_cylinders(vm::Mode::Prefix, {}, prob_b.max_len, {prob_b.max_steps});
    auto report = prob::coding_gap_report(*cyl);
    json hist = json::object();
    for (const auto& [g, n] : report.histogram) hist[std::to_string(g)] = n;
    json j = ctx.report("prob gap");
    merge(j, {{"budgets", budgets_json(prob_b)}, {"outputs", report.entries.size()}, {"histogram", hist},
              {"all_hold", report.all_hold}, {"max_gap", report.max_gap}});
    ctx.emit(j);
    if (!report.all_hold) throw Reported{};
  };

  // ---- rand -----------------------------------------------------------------
  auto* rand_cmd = app.add_subcommand("rand", "Selection rules, entropy and dimension");
  rand_cmd->require_subcommand(1);
  std::string rule_text, rand_input;
  std::uint64_t prog_budget = 256;
  auto* rand_select = leaf(rand_cmd, "select", "Apply a selection rule");
  rand_select->add_option("--rule", rule_text)->required();
  rand_select->add_option("--input", rand_input)->required();
  rand_select->add_option("--prog-steps", prog_budget);
  actions[rand_select] = [&] {
    auto rule = parse_rule(rule_text, prog_budget);
    const auto input = bits_or_file(rand_input, "--input");
    const auto selected = rnd::select(rule, input);
    json j = ctx.report("rand select");
    merge(j, {{"rule", rule_text}, {"input_length", input.size()}, {"selected", selected.to_string()},
              {"selected_length", selected.size()}});
    ctx.emit(j);
  };

  std::string pre_x;
  std::size_t pre_depth = 0;
  auto* rand_pre = leaf(rand_cmd, "preimage", "Measure of sequences whose selection starts with x");
  rand_pre->add_option("--rule", rule_text)->required();
  rand_pre->add_option("--x", pre_x)->required();
  rand_pre->add_option("--depth", pre_depth)->required();
  rand_pre->add_option("--prog-steps", prog_budget);
  actions[rand_pre] = [&] {
    auto rule = parse_rule(rule_text, prog_budget);
    const auto x = bits_arg(pre_x, "--x");
    auto bounds = rnd::preimage_measure(rule, x, pre_depth);
    const auto cap = DyadicRational::pow2_neg(x.size());
    json j = ctx.report("rand preimage");
    merge(j, {{"rule", rule_text}, {"x", x.to_string()}, {"bound", dyadic_json(cap)},
              {"within_bound", bounds.upper <= cap}});
    merge(j, bounds_json(bounds));
    ctx.emit(j);
  };

  std::string dim_source, dim_lengths, dim_estimator = "kt";
  auto* rand_dim = leaf(rand_cmd, "dim", "Complexity rate of stream prefixes");
  rand_dim->add_option("--source", dim_source)->required();
  rand_dim->add_option("--lengths", dim_lengths)->required();
  rand_dim->add_option("--estimator", dim_estimator)->check(CLI::IsMember({"kt", "exact"}));
  actions[rand_dim] = [&] {
    std::vector<std::size_t> lengths;
    for (const auto& t : split(dim_lengths, ',')) lengths.push_back(parse_size(t, "--lengths"));
    rnd::BitSource source;
    if (dim_source.rfind("bernoulli:", 0) == 0) {
      auto parts = split(dim_source.substr(10), ':');
      if (parts.size() != 2) throw UsageError("--source: expected bernoulli:<p>:<seed>");
      double p = 0;
      try {
        p = std::stod(parts[0]);
      } catch (const std::exception&) {
        throw UsageError("--source: bad probability " + parts[0]);
      }
      if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--source: probability outside [0, 1]");
      auto rng = std::make_shared<SplitMix64>(SplitMix64::stream(parse_size(parts[1], "--source"), 0));
      source = [rng, p] { return rng->bernoulli(p); };
    } else if (dim_source.rfind("file:", 0) == 0) {
      auto bits = std::make_shared<BitString>(bits_or_file(dim_source.substr(5), "--source"));
      auto pos = std::make_shared<std::size_t>(0);
      source = [bits, pos] {
        if (*pos >= bits->size()) throw std::domain_error("source file holds fewer bits than requested");
        return (*bits)[(*pos)++];
      };
    } else {
      throw UsageError("--source: expected bernoulli:<p>:<seed> or file:<path>");
    }
    const auto est = dim_estimator == "kt" ? rnd::DimensionEstimator::Kt : rnd::DimensionEstimator::ExactBounded;
    auto d = rnd::dimension_estimate(source, lengths, est, ctx.config.budgets, ctx.config.tail_start);
    json per_n = json::array();
    for (const auto& [n, rate] : d.per_n) per_n.push_back({{"n", n}, {"rate", rate}});
    json j = ctx.report("rand dim");
    merge(j, {{"source", dim_source}, {"estimator", dim_estimator}, {"tail_start", d.tail_start}, {"per_n", per_n}});
    j["running_min_tail"] = d.running_min_tail ? json(*d.running_min_tail) : json(nullptr);
    ctx.emit(j);
  };

  auto* rand_entropy = leaf(rand_cmd, "entropy-bound", "Compare KT code length with the empirical entropy bound");
  rand_entropy->add_option("--input", rand_input)->required();
  actions[rand_entropy] = [&] {
    auto r = rnd::entropy_bound_report(bits_or_file(rand_input, "--input"));
    json j = ctx.report("rand entropy-bound");
    merge(j, {{"n", r.n}, {"ones", r.ones}, {"entropy", r.entropy}, {"bound", r.bound}, {"estimate", r.estimate},
              {"slack", r.slack}, {"holds", r.holds}});
    ctx.emit(j);
  };

  // ---- exp ------------------------------------------------------------------
  auto* exp_cmd = app.add_subcommand("exp", "Incompressibility experiments");
  exp_cmd->require_subcommand(1);
  std::string exp_n;
  std::optional<std::uint64_t> exp_trials;
  auto add_exp = [&](const std::string& name, const std::string& desc, const std::string& default_n,
                     std::uint64_t default_trials,
                     std::function<exp::ExperimentReport(const std::string&, std::uint64_t, std::uint64_t)> run) {
    auto* c = leaf(exp_cmd, name, desc);
    c->add_option("--n", exp_n);
    c->add_option("--trials", exp_trials);
    actions[c] = [&, name, default_n, default_trials, run] {
      auto report = run(exp_n.empty() ? default_n : exp_n, exp_trials.value_or(default_trials), ctx.config.seed);
      json j = ctx.report("exp " + name);
      merge(j, experiment_json(report));
      ctx.emit(j);
    };
  };
  add_exp("rank", "GF(2) rank of random matrices", "64", 200, [](const std::string& n, std::uint64_t t, std::uint64_t s) {
    return exp::rank_experiment(parse_size(n, "--n"), t, s);
  });
  add_exp("graph", "Connectivity of random graphs", "64", 200, [](const std::string& n, std::uint64_t t, std::uint64_t s) {
    return exp::connectivity_experiment(parse_size(n, "--n"), t, s);
  });
  add_exp("tournament", "Largest transitive subtournaments", "15", 200,
          [](const std::string& n, std::uint64_t t, std::uint64_t s) {
            return exp::tournament_experiment(parse_size(n, "--n"), t, s);
          });
  add_exp("heapsort", "Heapsort sift-down depths", "16384", 50,
          [](const std::string& n, std::uint64_t t, std::uint64_t s) {
            return exp::heapsort_experiment(parse_size(n, "--n"), t, s);
          });
  add_exp("tm-dup", "One-tape duplication steps and crossings", "64,128,256", 1,
          [](const std::string& n, std::uint64_t, std::uint64_t s) {
            std::vector<std::size_t> ns;
            for (const auto& t : split(n, ',')) ns.push_back(parse_size(t, "--n"));
            return exp::tm_duplication_experiment(ns, s);
          });
  add_exp("multihead", "Multihead recognizers against pattern oracles", "8", 1000,
          [](const std::string& n, std::uint64_t t, std::uint64_t s) {
            return exp::multihead_experiment(parse_size(n, "--n"), t, s);
          });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    const CLI::App* deepest = &app;
    while (!deepest->get_subcommands().empty()) deepest = deepest->get_subcommands().front();
    out << deepest->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    const CLI::App* deepest = &app;
    while (!deepest->get_subcommands().empty()) deepest = deepest->get_subcommands().front();
    err << "error: " << e.what() << "\n" << deepest->help();
    return 2;
  }

  const CLI::App* chosen = &app;
  while (!chosen->get_subcommands().empty()) chosen = chosen->get_subcommands().front();
  auto action = actions.find(chosen);
  if (action == actions.end()) {
    err << "error: incomplete command\n" << chosen->help();
    return 2;
  }

  if (seed) ctx.config.seed = *seed;
  if (cache_dir && !cache_dir->empty()) ctx.config.cache_dir = *cache_dir;
  ctx.cache = std::make_unique<EnumerationCache>(ctx.config.cache_dir, err);

  auto domain_error = [&](const std::string& type, const std::string& message) {
    json j = ctx.report(chosen->get_parent()->get_name() + " " + chosen->get_name());
    merge(j, {{"error", type}, {"message", message}});
    ctx.emit(j);
    return 1;
  };
  try {
    action->second();
  } catch (const Reported&) {
    return 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << chosen->help();
    return 2;
  } catch (const vm::InvalidProgram& e) {
    return domain_error("invalid_program", std::string(vm::reason_name(e.reason())));
  } catch (const kraft::Overflow& e) {
    return domain_error("overflow", e.what());
  } catch (const MalformedPair& e) {
    return domain_error("malformed_pair", e.what());
  } catch (const exp::MachineStepCap& e) {
    return domain_error("machine_step_cap", e.what());
  } catch (const std::domain_error& e) {
    return domain_error("domain_error", e.what());
  } catch (const std::invalid_argument& e) {
    return domain_error("invalid_argument", e.what());
  } catch (const std::length_error& e) {
    return domain_error("length_error", e.what());
  } catch (const std::out_of_range& e) {
    return domain_error("out_of_range", e.what());
  }
  return 0;
}

}  // namespace ait::cli
