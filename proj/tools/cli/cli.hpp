#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "dis/oracles.hpp"

namespace dis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;

enum class Command { run, verify, ledger, dump_oracle };

struct RunConfig {
  Command command = Command::run;
  std::string algorithm;
  std::optional<unsigned> n;
  std::optional<std::uint64_t> r;
  std::optional<std::uint64_t> a;
  std::optional<std::uint64_t> L;
  // Deutsch modes are two binary digits ("10"); Kronecker/Grover modes are decimal.
  std::optional<std::string> k;
  std::string family;
  std::string variant;
  // Draw two-to-one values from the seed instead of numbering the pairs 0, 1, ...
  bool random_values = false;
  // Read [v] after [a] instead of right after the oracle (Simon, Shor).
  bool defer_v = false;
  std::optional<unsigned> a_width;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::size_t max_traces = 10;
  unsigned n_min = 2;
  unsigned n_max = 8;
  std::string output;  // empty: stdout
  std::string format = "json";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandOutput {
  std::string text;
  int exit_code = kExitOk;
};

// Oracle described by family/n/r/a/L/k. Throws UsageError for missing flags.
FunctionOracle oracle_from_config(const RunConfig& config);

CommandOutput cmd_run(const RunConfig& config);
CommandOutput cmd_verify(const RunConfig& config);
CommandOutput cmd_ledger(const RunConfig& config);
CommandOutput cmd_dump_oracle(const RunConfig& config);

// Parses argv, dispatches, writes the result to `out` or --output, and
// returns the process exit code.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dis::cli
