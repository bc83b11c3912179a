#include "cli.hpp"

#include <bit>
#include <fstream>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dis/algorithms.hpp"
#include "dis/errors.hpp"
#include "dis/hilbert.hpp"
#include "dis/ledger.hpp"
#include "dis/rng.hpp"

namespace dis::cli {

namespace {

using json = nlohmann::json;

// Stream 0 of the seed builds oracles; trial i uses stream i + 1.
constexpr std::uint64_t kOracleStream = 0;

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return derive_seed(seed, static_cast<std::uint64_t>(trial) + 1);
}

template <typename T>
T require(const std::optional<T>& value, const char* flag) {
  if (!value) {
    throw UsageError(std::string("missing required flag ") + flag);
  }
  return *value;
}

unsigned parse_deutsch_mode(const std::string& bits) {
  if (bits.size() != 2 || (bits[0] != '0' && bits[0] != '1') || (bits[1] != '0' && bits[1] != '1')) {
    throw UsageError("Deutsch mode --k must be one of 00, 01, 10, 11");
  }
  return static_cast<unsigned>((bits[0] - '0') * 2 + (bits[1] - '0'));
}

std::uint64_t parse_decimal(const std::string& text, const char* flag) {
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw UsageError(std::string(flag) + " expects a non-negative integer, got '" + text + "'");
  }
  return value;
}

std::string mode_bits(unsigned k) {
  return std::string{static_cast<char>('0' + ((k >> 1) & 1)), static_cast<char>('0' + (k & 1))};
}

std::string canonical_family(const std::string& name) {
  static const std::map<std::string, std::string> aliases{
      {"xor", "two_to_one_xor"},     {"arith", "two_to_one_arith"}, {"deutsch", "deutsch_k"},
      {"kronecker", "kronecker_k"},  {"grover", "kronecker_k"}};
  const auto it = aliases.find(name);
  return it == aliases.end() ? name : it->second;
}

class Tally {
 public:
  void add(const std::string& key) {
    ++counts_[key];
    ++total_;
  }
  json frequencies() const {
    json out = json::object();
    for (const auto& [key, count] : counts_) {
      out[key] = static_cast<double>(count) / static_cast<double>(total_);
    }
    return out;
  }

 private:
  std::map<std::string, std::size_t> counts_;
  std::size_t total_ = 0;
};

json run_header(const RunConfig& config) {
  return {{"command", "run"},
          {"algorithm", config.algorithm},
          {"seed", config.seed},
          {"trials", config.trials},
          {"width_cap", width_cap()}};
}

json run_simon_trials(const RunConfig& config) {
  const auto oracle = oracle_from_config(config);
  if (oracle.family() != OracleFamily::two_to_one_xor &&
      oracle.family() != OracleFamily::two_to_one_arith) {
    throw UsageError("simon needs --family xor or arith");
  }
  const std::uint64_t r = *oracle.params().r;
  Tally f_tally, z_tally;
  std::size_t violations = 0;
  std::vector<std::uint64_t> constraints;
  json runs = json::array(), traces = json::array();
  for (std::size_t i = 0; i < config.trials; ++i) {
    const auto seed = trial_seed(config.seed, i);
    Rng rng(seed);
    const auto run = run_simon(oracle, rng, {.measure_v_at_t3 = !config.defer_v});
    f_tally.add(std::to_string(run.f_value));
    json entry{{"trial", i}, {"seed", seed}, {"f_value", run.f_value}, {"z", nullptr}};
    if (run.z) {
      z_tally.add(std::to_string(*run.z));
      entry["z"] = *run.z;
      constraints.push_back(*run.z);
      if (std::popcount(*run.z & r) % 2 != 0) {
        ++violations;
      }
    }
    runs.push_back(std::move(entry));
    if (i < config.max_traces) {
      traces.push_back(trace_to_json(run.trace));
    }
  }
  const auto recovered = recover_r_from_constraints(constraints, oracle.domain_width());
  auto doc = run_header(config);
  doc["params"] = {{"oracle", oracle_to_json(oracle)}, {"measure_v_at_t3", !config.defer_v}};
  doc["aggregate"] = {{"f_value", f_tally.frequencies()},
                      {"z", z_tally.frequencies()},
                      {"constraint_violations", violations},
                      {"recovered_r", recovered ? json(*recovered) : json(nullptr)}};
  doc["runs"] = std::move(runs);
  doc["traces"] = std::move(traces);
  return doc;
}

json run_shor_trials(const RunConfig& config) {
  const auto a = require(config.a, "--a");
  const auto L = require(config.L, "--L");
  ShorOptions options{.a_width = config.a_width, .measure_v_at_t3 = !config.defer_v};
  Tally z_tally, period_tally;
  std::size_t successes = 0;
  std::uint64_t true_period = 0;
  json params;
  json runs = json::array(), traces = json::array();
  for (std::size_t i = 0; i < config.trials; ++i) {
    const auto seed = trial_seed(config.seed, i);
    Rng rng(seed);
    const auto run = run_shor_period(a, L, rng, options);
    if (i == 0) {
      const auto& meta = run.trace.metadata;
      true_period = multiplicative_order(a, L);
      params = {{"a", a},
                {"L", L},
                {"a_width", std::stoul(meta.at("a_width"))},
                {"v_width", std::stoul(meta.at("v_width"))},
                {"sizing", meta.at("sizing")},
                {"true_period", true_period},
                {"measure_v_at_t3", !config.defer_v}};
    }
    const auto& result = run.result;
    z_tally.add(std::to_string(result.measured_z));
    period_tally.add(result.recovered_period ? std::to_string(*result.recovered_period) : "none");
    if (result.recovered_period == true_period) {
      ++successes;
    }
    json convergents = json::array();
    for (const auto& c : result.convergents) {
      convergents.push_back({c.numerator, c.denominator});
    }
    runs.push_back({{"trial", i},
                    {"seed", seed},
                    {"z", result.measured_z},
                    {"convergents", std::move(convergents)},
                    {"recovered_period",
                     result.recovered_period ? json(*result.recovered_period) : json(nullptr)}});
    if (i < config.max_traces) {
      traces.push_back(trace_to_json(run.trace));
    }
  }
  auto doc = run_header(config);
  doc["params"] = std::move(params);
  doc["aggregate"] = {
      {"z", z_tally.frequencies()},
      {"recovered_period", period_tally.frequencies()},
      {"success_rate", static_cast<double>(successes) / static_cast<double>(config.trials)}};
  doc["runs"] = std::move(runs);
  doc["traces"] = std::move(traces);
  return doc;
}

json run_deutsch_trials(const RunConfig& config) {
  const std::string variant_name = config.variant.empty() ? "original" : config.variant;
  DeutschVariant variant;
  if (variant_name == "original") {
    variant = DeutschVariant::original;
  } else if (variant_name == "extended") {
    variant = DeutschVariant::extended;
  } else if (variant_name == "mixture") {
    variant = DeutschVariant::mixture;
  } else {
    throw UsageError("deutsch --variant must be original, extended or mixture");
  }
  std::optional<unsigned> k;
  if (config.k) {
    k = parse_deutsch_mode(*config.k);
  }
  Tally answers, modes;
  std::size_t consistent = 0;
  json runs = json::array(), traces = json::array();
  for (std::size_t i = 0; i < config.trials; ++i) {
    const auto seed = trial_seed(config.seed, i);
    Rng rng(seed);
    const auto run = run_deutsch(variant, k, rng);
    const std::string answer = run.answer ? "balanced" : "unbalanced";
    answers.add(answer);
    modes.add(mode_bits(run.k));
    const bool balanced = run.k == 1 || run.k == 2;
    if ((run.answer == 1) == balanced) {
      ++consistent;
    }
    runs.push_back({{"trial", i},
                    {"seed", seed},
                    {"k", mode_bits(run.k)},
                    {"answer", answer},
                    {"oracle_queries", run.trace.oracle_queries}});
    if (i < config.max_traces) {
      traces.push_back(trace_to_json(run.trace));
    }
  }
  auto doc = run_header(config);
  doc["params"] = {{"variant", variant_name}, {"k", k ? json(mode_bits(*k)) : json(nullptr)}};
  doc["aggregate"] = {{"answer", answers.frequencies()},
                      {"k", modes.frequencies()},
                      {"consistent_runs", consistent}};
  doc["runs"] = std::move(runs);
  doc["traces"] = std::move(traces);
  return doc;
}

json run_grover_trials(const RunConfig& config) {
  const std::string variant_name = config.variant.empty() ? "standard" : config.variant;
  GroverVariant variant;
  if (variant_name == "standard") {
    variant = GroverVariant::standard;
  } else if (variant_name == "extended") {
    variant = GroverVariant::extended;
  } else {
    throw UsageError("grover2 --variant must be standard or extended");
  }
  std::optional<unsigned> k;
  if (config.k) {
    k = static_cast<unsigned>(parse_decimal(*config.k, "--k"));
  }
  Tally answers, modes;
  std::size_t agreeing = 0;
  json runs = json::array(), traces = json::array();
  for (std::size_t i = 0; i < config.trials; ++i) {
    const auto seed = trial_seed(config.seed, i);
    Rng rng(seed);
    const auto run = run_grover2(variant, k, rng);
    answers.add(std::to_string(run.answer));
    modes.add(std::to_string(run.k));
    if (run.answer == run.k) {
      ++agreeing;
    }
    runs.push_back({{"trial", i},
                    {"seed", seed},
                    {"k", run.k},
                    {"answer", run.answer},
                    {"oracle_queries", run.trace.oracle_queries},
                    {"function_gate_applications", run.trace.function_gate_applications}});
    if (i < config.max_traces) {
      traces.push_back(trace_to_json(run.trace));
    }
  }
  auto doc = run_header(config);
  doc["params"] = {{"variant", variant_name}, {"k", k ? json(*k) : json(nullptr)}};
  doc["aggregate"] = {{"answer", answers.frequencies()},
                      {"k", modes.frequencies()},
                      {"agreeing_runs", agreeing}};
  doc["runs"] = std::move(runs);
  doc["traces"] = std::move(traces);
  return doc;
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

FunctionOracle oracle_from_config(const RunConfig& config) {
  const std::string family = canonical_family(config.family.empty() ? "xor" : config.family);
  OracleFamily parsed;
  try {
    parsed = parse_family(family);
  } catch (const StructuralError&) {
    throw UsageError("unknown --family '" + config.family + "'");
  }
  switch (parsed) {
    case OracleFamily::two_to_one_xor:
    case OracleFamily::two_to_one_arith: {
      const auto n = require(config.n, "--n");
      const auto r = require(config.r, "--r");
      const auto kind = parsed == OracleFamily::two_to_one_xor ? TwoToOneFamily::xor_spaced
                                                               : TwoToOneFamily::arith_spaced;
      if (config.random_values) {
        Rng rng(derive_seed(config.seed, kOracleStream));
        return build_two_to_one(n, r, rng, kind);
      }
      const auto pairs = collision_pairs(n, r, kind);
      std::vector<std::uint64_t> values(pairs.size());
      for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = i;
      }
      return build_two_to_one(n, r, values, kind);
    }
    case OracleFamily::modexp: {
      const auto L = require(config.L, "--L");
      const unsigned width = config.n ? *config.n : shor_sizing(L).a_width;
      return build_modexp(require(config.a, "--a"), L, width);
    }
    case OracleFamily::deutsch_k:
      return deutsch_family()[parse_deutsch_mode(require(config.k, "--k"))];
    case OracleFamily::kronecker_k: {
      const auto n = require(config.n, "--n");
      const auto k = parse_decimal(require(config.k, "--k"), "--k");
      const auto family_members = kronecker_family(n);
      if (k >= family_members.size()) {
        throw RangeError("--k must be below 2^n");
      }
      return family_members[k];
    }
    case OracleFamily::table:
      break;
  }
  throw UsageError("family 'table' cannot be built from flags");
}

CommandOutput cmd_run(const RunConfig& config) {
  if (config.trials == 0) {
    throw UsageError("--trials must be at least 1");
  }
  json doc;
  if (config.algorithm == "simon") {
    doc = run_simon_trials(config);
  } else if (config.algorithm == "shor") {
    doc = run_shor_trials(config);
  } else if (config.algorithm == "deutsch") {
    doc = run_deutsch_trials(config);
  } else if (config.algorithm == "grover2") {
    doc = run_grover_trials(config);
  } else {
    throw UsageError("unknown --algo '" + config.algorithm + "'");
  }
  return {render(doc), kExitOk};
}

CommandOutput cmd_ledger(const RunConfig& config) {
  if (config.n_min < 2 || config.n_max < config.n_min) {
    throw UsageError("ledger needs 2 <= --n-min <= --n-max");
  }
  if (config.trials == 0) {
    throw UsageError("--trials must be at least 1");
  }
  const auto rows = speedup_ledger({.simon_n_min = config.n_min,
                                    .simon_n_max = config.n_max,
                                    .trials = config.trials,
                                    .seed = config.seed});
  if (config.format == "csv") {
    return {ledger_to_csv(rows), kExitOk};
  }
  json doc{{"command", "ledger"},
           {"seed", config.seed},
           {"trials", config.trials},
           {"rows", ledger_to_json(rows)}};
  return {render(doc), kExitOk};
}

CommandOutput cmd_dump_oracle(const RunConfig& config) {
  json doc = oracle_to_json(oracle_from_config(config));
  return {render(doc), kExitOk};
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Dense state-vector simulation of oracle algorithms and their measurements", "dis"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Base seed; every trial derives its own");
    sub->add_option("--output,-o", config.output, "Write to this path instead of stdout");
  };
  auto add_oracle = [&](CLI::App* sub) {
    sub->add_option("--n", config.n, "Input register width");
    sub->add_option("--r", config.r, "Collision spacing");
    sub->add_option("--a", config.a, "Modular base");
    sub->add_option("--L", config.L, "Modulus");
    sub->add_option("--k", config.k, "Oracle mode (Deutsch: 00..11, Grover: 0..3)");
    sub->add_option("--family", config.family, "xor, arith, modexp, deutsch or kronecker");
    sub->add_flag("--random-values", config.random_values,
                  "Draw two-to-one values from the seed instead of 0, 1, 2, ... by pair");
  };

  auto* run = app.add_subcommand("run", "Run an algorithm for a number of seeded trials");
  run->add_option("--algo", config.algorithm, "simon, shor, deutsch or grover2")
      ->required()
      ->check(CLI::IsMember({"simon", "shor", "deutsch", "grover2"}));
  add_oracle(run);
  run->add_option("--variant", config.variant,
                  "deutsch: original|extended|mixture; grover2: standard|extended");
  run->add_option("--a-width", config.a_width, "Shor: explicit a-register width");
  run->add_flag("--defer-v", config.defer_v, "Read [v] after [a] instead of right after the oracle");
  run->add_option("--trials", config.trials, "Number of runs")->check(CLI::PositiveNumber);
  run->add_option("--max-traces", config.max_traces, "Full traces to include in the output");
  run->add_option("--format", config.format)->check(CLI::IsMember({"json"}));
  add_common(run);

  auto* verify = app.add_subcommand("verify", "Check the golden checkpoints and equivalences");
  add_common(verify);

  auto* ledger = app.add_subcommand("ledger", "Quantum vs classical query-count table");
  ledger->add_option("--n-min", config.n_min, "Smallest Simon width");
  ledger->add_option("--n-max", config.n_max, "Largest Simon width");
  ledger->add_option("--trials", config.trials, "Simon experiments per width")
      ->check(CLI::PositiveNumber);
  ledger->add_option("--format", config.format)->check(CLI::IsMember({"json", "csv"}));
  add_common(ledger);

  auto* dump = app.add_subcommand("dump-oracle", "Print an oracle's JSON description");
  add_oracle(dump);
  add_common(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (ledger->parsed()) {
    config.command = Command::ledger;
    if (ledger->count("--trials") == 0) {
      config.trials = 50;
    }
  } else if (verify->parsed()) {
    config.command = Command::verify;
  } else if (dump->parsed()) {
    config.command = Command::dump_oracle;
  }

  CommandOutput result;
  try {
    switch (config.command) {
      case Command::run:
        result = cmd_run(config);
        break;
      case Command::verify:
        result = cmd_verify(config);
        break;
      case Command::ledger:
        result = cmd_ledger(config);
        break;
      case Command::dump_oracle:
        result = cmd_dump_oracle(config);
        break;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConstructionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }

  if (config.output.empty()) {
    out << result.text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file || !(file << result.text)) {
      err << "error: cannot write " << config.output << "\n";
      return kExitUsage;
    }
  }
  return result.exit_code;
}

}  // namespace dis::cli
