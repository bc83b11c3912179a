#include <algorithm>
#include <bit>

#include "dis/algorithms.hpp"
#include "dis/errors.hpp"

namespace dis {

namespace {

// Collision partner of 0 read as an XOR mask, if the whole table respects it.
std::optional<std::uint64_t> xor_period(const FunctionOracle& oracle) {
  if (oracle.params().r && oracle.has_xor_period(*oracle.params().r)) {
    return oracle.params().r;
  }
  const auto table = oracle.table();
  for (std::uint64_t x = 1; x < table.size(); ++x) {
    if (table[x] == table[0]) {
      return oracle.has_xor_period(x) ? std::optional<std::uint64_t>(x) : std::nullopt;
    }
  }
  return std::nullopt;
}

RegisterLayout simon_layout(const FunctionOracle& oracle) {
  return RegisterLayout({{"a", oracle.domain_width()}, {"v", oracle.codomain_width()}});
}

MeasurementRecord read(const StateVector& state, const char* reg,
                       const std::optional<std::uint64_t>& forced, Rng& rng) {
  return forced ? measure_forced(state, reg, *forced) : measure(state, reg, rng);
}

}  // namespace

Circuit simon_circuit(const FunctionOracle& oracle) {
  const auto layout = simon_layout(oracle);
  return Circuit{make_basis_state(layout, {{"a", 0}, {"v", 0}}),
                 "t0",
                 {{"t1", {GateSpec::hadamard("a")}},
                  {"t2", {GateSpec::function_add(oracle, "a", "v")}},
                  {"t4", {GateSpec::hadamard("a")}}},
                 {"a", "v"}};
}

SimonRun run_simon(const FunctionOracle& oracle, Rng& rng, const SimonOptions& options) {
  if (!oracle.is_two_to_one()) {
    throw PreconditionError("Simon's algorithm needs a 2-to-1 oracle");
  }
  const auto layout = simon_layout(oracle);
  TraceBuilder builder("simon", make_basis_state(layout, {{"a", 0}, {"v", 0}}));
  builder.note("family", std::string(family_name(oracle.family())));
  builder.note("n", std::to_string(oracle.domain_width()));
  if (oracle.params().r) {
    builder.note("r", std::to_string(*oracle.params().r));
  }
  builder.note("measure_v_at_t3", options.measure_v_at_t3 ? "true" : "false");

  builder.apply(GateSpec::hadamard("a"));
  builder.checkpoint("t1");
  builder.apply(GateSpec::function_add(oracle, "a", "v"));
  builder.checkpoint("t2");

  SimonRun run{AlgorithmTrace{}, 0, std::nullopt};
  if (options.measure_v_at_t3) {
    run.f_value = builder.record(read(builder.state(), "v", options.forced_f, rng)).outcome;
    builder.checkpoint("t3");
  }

  const auto period = xor_period(oracle);
  if (period) {
    builder.apply(GateSpec::hadamard("a"));
    builder.checkpoint("t4");
    run.z = builder.record(read(builder.state(), "a", options.forced_z, rng)).outcome;
    builder.checkpoint("t5");
  } else {
    builder.note("extraction", "skipped: table has no XOR period");
  }
  if (!options.measure_v_at_t3) {
    run.f_value = builder.record(read(builder.state(), "v", options.forced_f, rng)).outcome;
  }
  run.trace = std::move(builder).finish();
  return run;
}

std::size_t gf2_rank(std::span<const std::uint64_t> vectors) {
  std::vector<std::uint64_t> basis;
  for (auto v : vectors) {
    for (auto b : basis) {
      v = std::min(v, v ^ b);
    }
    if (v != 0) {
      basis.push_back(v);
      std::sort(basis.rbegin(), basis.rend());
    }
  }
  return basis.size();
}

std::optional<std::uint64_t> recover_r_from_constraints(std::span<const std::uint64_t> constraints,
                                                        unsigned n) {
  if (n == 0 || n > 63) {
    return std::nullopt;
  }
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;

  // Reduced row echelon form over GF(2); each row is keyed by its leading bit.
  std::vector<std::uint64_t> rows;
  for (auto z : constraints) {
    std::uint64_t v = z & mask;
    for (auto row : rows) {
      if (v & std::bit_floor(row)) {
        v ^= row;
      }
    }
    if (v == 0) {
      continue;
    }
    const std::uint64_t pivot = std::bit_floor(v);
    for (auto& row : rows) {
      if (row & pivot) {
        row ^= v;
      }
    }
    rows.push_back(v);
  }
  if (rows.size() + 1 != n) {
    return std::nullopt;
  }

  std::uint64_t pivots = 0;
  for (auto row : rows) {
    pivots |= std::bit_floor(row);
  }
  const std::uint64_t free_bit = std::bit_floor(mask & ~pivots);
  std::uint64_t r = free_bit;
  for (auto row : rows) {
    if (row & free_bit) {
      r |= std::bit_floor(row);
    }
  }
  return r;
}

SimonResult solve_simon(const FunctionOracle& oracle, Rng& rng, std::size_t max_runs) {
  SimonResult result;
  const unsigned n = oracle.domain_width();
  while (result.runs_used < max_runs) {
    const auto run = run_simon(oracle, rng);
    ++result.runs_used;
    result.oracle_queries += run.trace.oracle_queries;
    if (!run.z) {
      break;
    }
    result.constraints.push_back(*run.z);
    result.recovered_r = recover_r_from_constraints(result.constraints, n);
    if (result.recovered_r) {
      break;
    }
  }
  return result;
}

}  // namespace dis
