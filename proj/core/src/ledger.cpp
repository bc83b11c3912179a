#include "dis/ledger.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dis/algorithms.hpp"
#include "dis/oracles.hpp"
#include "dis/rng.hpp"

namespace dis {

namespace {

LedgerRow simon_row(unsigned n, const LedgerOptions& options) {
  LedgerRow row{"simon", n, 0.0, 0.0, 0.0, 0.0, options.seed};
  const std::uint64_t size = std::uint64_t{1} << n;
  std::size_t total_runs = 0;
  std::size_t total_queries = 0;
  std::size_t classical_total = 0;
  std::size_t classical_max = 0;
  const auto trials = std::max<std::size_t>(options.trials, 1);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(derive_seed(options.seed, n), t));
    const std::uint64_t r = 1 + rng.below(size - 1);
    const auto oracle = build_two_to_one(n, r, rng, TwoToOneFamily::xor_spaced);

    const auto quantum = solve_simon(oracle, rng, 100 * n + 100);
    if (quantum.recovered_r != r) {
      throw std::runtime_error("Simon run failed to recover r=" + std::to_string(r));
    }
    total_runs += quantum.runs_used;
    total_queries += quantum.oracle_queries;

    const auto classical = classical_collision_solve(oracle, CollisionStrategy::birthday, rng);
    if (!satisfies_collision_system(oracle, classical)) {
      throw std::runtime_error("classical collision solution violates f(x1) = f(x2), x1 != x2");
    }
    classical_total += classical.queries_used;
    classical_max = std::max(classical_max, classical.queries_used);
  }
  row.quantum_queries_per_run = static_cast<double>(total_queries) / static_cast<double>(total_runs);
  row.runs = static_cast<double>(total_runs) / static_cast<double>(trials);
  row.classical_queries_mean = static_cast<double>(classical_total) / static_cast<double>(trials);
  row.classical_queries_max = static_cast<double>(classical_max);
  return row;
}

LedgerRow deutsch_row(const LedgerOptions& options) {
  LedgerRow row{"deutsch", 1, 0.0, 1.0, 0.0, 0.0, options.seed};
  Rng rng(derive_seed(options.seed, 1000));
  const auto family = deutsch_family();
  std::size_t quantum = 0;
  std::size_t classical_total = 0;
  std::size_t classical_max = 0;
  for (unsigned k = 0; k < family.size(); ++k) {
    const auto run = run_deutsch(DeutschVariant::original, k, rng);
    quantum += run.trace.function_gate_applications;

    // Classically the functional needs both f(0) and f(1).
    QueryCounter counter(family[k]);
    const bool balanced = counter(0) != counter(1);
    if (balanced != family[k].is_balanced() || (run.answer == 1) != balanced) {
      throw std::runtime_error("Deutsch answer disagrees with the classical functional");
    }
    classical_total += counter.count();
    classical_max = std::max(classical_max, counter.count());
  }
  const auto modes = static_cast<double>(family.size());
  row.quantum_queries_per_run = static_cast<double>(quantum) / modes;
  row.classical_queries_mean = static_cast<double>(classical_total) / modes;
  row.classical_queries_max = static_cast<double>(classical_max);
  return row;
}

LedgerRow grover_row(const LedgerOptions& options) {
  LedgerRow row{"grover2", 2, 0.0, 1.0, 0.0, 0.0, options.seed};
  Rng rng(derive_seed(options.seed, 2000));
  const auto family = kronecker_family(2);
  std::size_t quantum = 0;
  std::size_t classical_total = 0;
  std::size_t classical_max = 0;
  for (unsigned k = 0; k < family.size(); ++k) {
    const auto run = run_grover2(GroverVariant::standard, k, rng);
    if (run.answer != k) {
      throw std::runtime_error("Grover run returned the wrong mode");
    }
    quantum += run.trace.function_gate_applications;

    // Query 0, 1, 2 in turn; if none is marked, the answer is 3 without a
    // fourth query.
    QueryCounter counter(family[k]);
    std::uint64_t found = family.size() - 1;
    for (std::uint64_t x = 0; x + 1 < family.size(); ++x) {
      if (counter(x) == 1) {
        found = x;
        break;
      }
    }
    if (found != k) {
      throw std::runtime_error("classical search returned the wrong mode");
    }
    classical_total += counter.count();
    classical_max = std::max(classical_max, counter.count());
  }
  const auto modes = static_cast<double>(family.size());
  row.quantum_queries_per_run = static_cast<double>(quantum) / modes;
  row.classical_queries_mean = static_cast<double>(classical_total) / modes;
  row.classical_queries_max = static_cast<double>(classical_max);
  return row;
}

}  // namespace

std::vector<LedgerRow> speedup_ledger(const LedgerOptions& options) {
  std::vector<LedgerRow> rows;
  rows.push_back(deutsch_row(options));
  rows.push_back(grover_row(options));
  for (unsigned n = std::max(1u, options.simon_n_min); n <= options.simon_n_max; ++n) {
    rows.push_back(simon_row(n, options));
  }
  return rows;
}

std::string ledger_to_csv(const std::vector<LedgerRow>& rows) {
  std::ostringstream out;
  out << kLedgerCsvHeader << '\n';
  for (const auto& row : rows) {
    out << row.algorithm << ',' << row.n << ',' << row.quantum_queries_per_run << ',' << row.runs
        << ',' << row.classical_queries_mean << ',' << row.classical_queries_max << ',' << row.seed
        << '\n';
  }
  return out.str();
}

nlohmann::json ledger_to_json(const std::vector<LedgerRow>& rows) {
  auto out = nlohmann::json::array();
  for (const auto& row : rows) {
    out.push_back({{"algorithm", row.algorithm},
                   {"n", row.n},
                   {"quantum_queries_per_run", row.quantum_queries_per_run},
                   {"runs", row.runs},
                   {"classical_queries_mean", row.classical_queries_mean},
                   {"classical_queries_max", row.classical_queries_max},
                   {"seed", row.seed}});
  }
  return out;
}

}  // namespace dis
