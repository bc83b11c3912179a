#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dis/gates.hpp"
#include "dis/oracles.hpp"
#include "dis/rng.hpp"
#include "dis/trace.hpp"

namespace dis {

// ---------------------------------------------------------------- Simon

struct SimonOptions {
  // Measure [v] between the oracle and the second Hadamard (checkpoint t3).
  // When false, [v] is read after [a] instead.
  bool measure_v_at_t3 = true;
  std::optional<std::uint64_t> forced_f = std::nullopt;
  std::optional<std::uint64_t> forced_z = std::nullopt;
};

struct SimonRun {
  AlgorithmTrace trace;
  std::uint64_t f_value = 0;
  // Present when the interference steps ran (the table has an XOR period).
  std::optional<std::uint64_t> z;
};

struct SimonResult {
  std::vector<std::uint64_t> constraints;
  std::optional<std::uint64_t> recovered_r;
  std::size_t runs_used = 0;
  std::size_t oracle_queries = 0;
};

// Registers a, v of the oracle's width; steps t1 (H a), t2 (f added into v),
// t4 (H a); [a] and [v] measured.
Circuit simon_circuit(const FunctionOracle& oracle);

/// One pass of steps a) to f). Throws PreconditionError unless the oracle is
/// 2-to-1. Steps e) and f) need f(x) = f(x XOR r); tables without that
/// structure stop after t3.
SimonRun run_simon(const FunctionOracle& oracle, Rng& rng, const SimonOptions& options = {});

/// Unique nonzero r with r.z = 0 (mod 2) for every constraint, when the
/// constraints span n - 1 dimensions; nullopt otherwise.
std::optional<std::uint64_t> recover_r_from_constraints(std::span<const std::uint64_t> constraints,
                                                        unsigned n);

// Rank over GF(2) of the constraint vectors.
std::size_t gf2_rank(std::span<const std::uint64_t> vectors);

// Repeats run_simon until r is determined or max_runs is reached.
SimonResult solve_simon(const FunctionOracle& oracle, Rng& rng, std::size_t max_runs = 1000);

// ---------------------------------------------------------------- Shor

struct Convergent {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  friend bool operator==(const Convergent&, const Convergent&) = default;
};

// Continued-fraction convergents of z / N, in order.
std::vector<Convergent> convergents(std::uint64_t z, std::uint64_t N);

/// Period candidate from a Fourier-register reading: each convergent
/// denominator q <= L is tested with a^q = 1 (mod L); if none passes and
/// z != 0, small multiples 2q..kq of the last such q (k = bit length of L)
/// are tried.
std::optional<std::uint64_t> period_from_measurement(std::uint64_t z, std::uint64_t N,
                                                     std::uint64_t a, std::uint64_t L);

struct ShorSizing {
  unsigned a_width = 0;
  unsigned v_width = 0;
  // "L^2" when 2^a_width >= L^2, "2L" for the fallback, "explicit" when set by caller.
  std::string rule;
};

ShorSizing shor_sizing(std::uint64_t L, unsigned cap = width_cap());

struct ShorOptions {
  std::optional<unsigned> a_width = std::nullopt;
  std::optional<std::uint64_t> forced_f = std::nullopt;
  std::optional<std::uint64_t> forced_z = std::nullopt;
  bool measure_v_at_t3 = true;
};

struct ShorResult {
  std::uint64_t measured_z = 0;
  std::vector<Convergent> convergents;
  std::optional<std::uint64_t> recovered_period;
};

struct ShorRun {
  AlgorithmTrace trace;
  ShorResult result;
};

Circuit shor_circuit(std::uint64_t a, std::uint64_t L, unsigned a_width);

// Period finding for f(x) = a^x mod L. Throws PreconditionError when
// gcd(a, L) != 1.
ShorRun run_shor_period(std::uint64_t a, std::uint64_t L, Rng& rng, const ShorOptions& options = {});

// ---------------------------------------------------------------- Deutsch

enum class DeutschVariant { original, extended, mixture };

struct DeutschRun {
  AlgorithmTrace trace;
  unsigned k = 0;
  // Content of [a] at the end: 1 iff f_k is balanced.
  unsigned answer = 0;
  std::array<double, 3> phases{};
};

// Extended circuit on m:2, a:1, v:1 with optional random phases on the mode
// register; steps t1 (H m, H a, phases), t2 (F(k, x)), t3 (H a).
Circuit deutsch_extended_circuit(const std::array<double, 3>& phases = {});

/// original: k given or drawn from rng. extended/mixture: k is the [m]
/// measurement outcome, which `k` forces when given. Throws RangeError for k > 3.
DeutschRun run_deutsch(DeutschVariant variant, std::optional<unsigned> k, Rng& rng);

// ---------------------------------------------------------------- Grover

enum class GroverVariant { standard, extended };

struct GroverRun {
  AlgorithmTrace trace;
  unsigned k = 0;
  unsigned answer = 0;
};

// Inversion about the mean on a 2-qubit register built from Hadamards and a
// reversible function gate computing 1 - [x == 0] into the ancilla v.
std::vector<GateSpec> grover_reflection_gates(const std::string& reg, const std::string& ancilla,
                                              unsigned width);

Circuit grover_extended_circuit();

/// n = 2 Grover search. standard: k given or drawn from rng; extended: k is
/// the [m] outcome (forced when given). Throws RangeError for k > 3.
GroverRun run_grover2(GroverVariant variant, std::optional<unsigned> k, Rng& rng);

}  // namespace dis
