#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dis {

struct LedgerRow {
  std::string algorithm;
  unsigned n = 0;
  double quantum_queries_per_run = 0.0;
  double runs = 0.0;
  double classical_queries_mean = 0.0;
  double classical_queries_max = 0.0;
  std::uint64_t seed = 0;
};

struct LedgerOptions {
  unsigned simon_n_min = 2;
  unsigned simon_n_max = 8;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
};

/// Query-count comparison. Quantum side: function-gate applications per
/// circuit run, times the mean number of runs needed (Simon: until r is
/// determined). Classical side: measured table lookups of the classical
/// strategy that answers with certainty.
std::vector<LedgerRow> speedup_ledger(const LedgerOptions& options);

inline constexpr const char* kLedgerCsvHeader =
    "algorithm,n,quantum_queries_per_run,runs,classical_queries_mean,classical_queries_max,seed";

std::string ledger_to_csv(const std::vector<LedgerRow>& rows);
nlohmann::json ledger_to_json(const std::vector<LedgerRow>& rows);

}  // namespace dis
