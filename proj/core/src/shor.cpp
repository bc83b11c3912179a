#include <bit>
#include <numeric>

#include "dis/algorithms.hpp"
#include "dis/errors.hpp"

namespace dis {

std::vector<Convergent> convergents(std::uint64_t z, std::uint64_t N) {
  if (N == 0) {
    throw RangeError("convergents need N > 0");
  }
  std::vector<Convergent> out;
  // h_{-2}/k_{-2} = 0/1, h_{-1}/k_{-1} = 1/0.
  std::uint64_t h_prev2 = 0, h_prev1 = 1;
  std::uint64_t k_prev2 = 1, k_prev1 = 0;
  std::uint64_t num = z;
  std::uint64_t den = N;
  while (den != 0) {
    const std::uint64_t term = num / den;
    const std::uint64_t h = term * h_prev1 + h_prev2;
    const std::uint64_t k = term * k_prev1 + k_prev2;
    out.push_back({h, k});
    h_prev2 = h_prev1;
    h_prev1 = h;
    k_prev2 = k_prev1;
    k_prev1 = k;
    const std::uint64_t rem = num % den;
    num = den;
    den = rem;
  }
  return out;
}

std::optional<std::uint64_t> period_from_measurement(std::uint64_t z, std::uint64_t N,
                                                     std::uint64_t a, std::uint64_t L) {
  std::optional<std::uint64_t> last;
  for (const auto& c : convergents(z, N)) {
    if (c.denominator > L) {
      break;
    }
    last = c.denominator;
    if (modpow(a, c.denominator, L) == 1) {
      return c.denominator;
    }
  }
  if (z == 0 || !last) {
    return std::nullopt;
  }
  // z/N may reduce to j/r with gcd(j, r) > 1, leaving a proper divisor of r.
  const auto max_multiple = static_cast<std::uint64_t>(std::bit_width(L));
  for (std::uint64_t m = 2; m <= max_multiple; ++m) {
    if (modpow(a, m * *last, L) == 1) {
      return m * *last;
    }
  }
  return std::nullopt;
}

ShorSizing shor_sizing(std::uint64_t L, unsigned cap) {
  if (L < 2) {
    throw RangeError("L must be at least 2");
  }
  ShorSizing sizing;
  sizing.v_width = std::max(1u, static_cast<unsigned>(std::bit_width(L - 1)));
  const auto width_for = [](std::uint64_t bound) {
    unsigned n = 1;
    while ((std::uint64_t{1} << n) < bound) {
      ++n;
    }
    return n;
  };
  sizing.a_width = width_for(L * L);
  sizing.rule = "L^2";
  if (sizing.a_width + sizing.v_width > cap) {
    sizing.a_width = width_for(2 * L);
    sizing.rule = "2L";
  }
  if (sizing.a_width + sizing.v_width > cap) {
    throw StructuralError("L=" + std::to_string(L) + " does not fit the qubit cap of " +
                          std::to_string(cap));
  }
  return sizing;
}

namespace {

void require_coprime(std::uint64_t a, std::uint64_t L) {
  if (L < 2) {
    throw RangeError("L must be at least 2");
  }
  if (a == 0 || a >= L) {
    throw RangeError("a must lie in [1, L)");
  }
  if (std::gcd(a, L) != 1) {
    throw PreconditionError("gcd(" + std::to_string(a) + ", " + std::to_string(L) +
                            ") != 1: period finding needs coprime a and L");
  }
}

}  // namespace

Circuit shor_circuit(std::uint64_t a, std::uint64_t L, unsigned a_width) {
  require_coprime(a, L);
  auto oracle = build_modexp(a, L, a_width);
  RegisterLayout layout({{"a", a_width}, {"v", oracle.codomain_width()}});
  return Circuit{make_basis_state(layout, {{"a", 0}, {"v", 0}}),
                 "t0",
                 {{"t1", {GateSpec::hadamard("a")}},
                  {"t2", {GateSpec::function_add(std::move(oracle), "a", "v")}},
                  {"t4", {GateSpec::qft("a")}}},
                 {"a", "v"}};
}

ShorRun run_shor_period(std::uint64_t a, std::uint64_t L, Rng& rng, const ShorOptions& options) {
  require_coprime(a, L);
  ShorSizing sizing = shor_sizing(L);
  if (options.a_width) {
    sizing.a_width = *options.a_width;
    sizing.rule = "explicit";
  }
  const auto oracle = build_modexp(a, L, sizing.a_width);
  RegisterLayout layout({{"a", sizing.a_width}, {"v", oracle.codomain_width()}});

  TraceBuilder builder("shor", make_basis_state(layout, {{"a", 0}, {"v", 0}}));
  builder.note("a", std::to_string(a));
  builder.note("L", std::to_string(L));
  builder.note("a_width", std::to_string(sizing.a_width));
  builder.note("v_width", std::to_string(oracle.codomain_width()));
  builder.note("sizing", sizing.rule);
  builder.note("true_period", std::to_string(multiplicative_order(a, L)));

  auto read = [&](const char* reg, const std::optional<std::uint64_t>& forced) {
    return forced ? measure_forced(builder.state(), reg, *forced)
                  : measure(builder.state(), reg, rng);
  };

  builder.apply(GateSpec::hadamard("a"));
  builder.checkpoint("t1");
  builder.apply(GateSpec::function_add(oracle, "a", "v"));
  builder.checkpoint("t2");
  if (options.measure_v_at_t3) {
    builder.record(read("v", options.forced_f));
    builder.checkpoint("t3");
  }
  builder.apply(GateSpec::qft("a"));
  builder.checkpoint("t4");

  ShorRun run;
  run.result.measured_z = builder.record(read("a", options.forced_z)).outcome;
  builder.checkpoint("t5");
  if (!options.measure_v_at_t3) {
    builder.record(read("v", options.forced_f));
  }

  const std::uint64_t N = std::uint64_t{1} << sizing.a_width;
  run.result.convergents = convergents(run.result.measured_z, N);
  run.result.recovered_period = period_from_measurement(run.result.measured_z, N, a, L);
  if (run.result.recovered_period && modpow(a, *run.result.recovered_period, L) != 1) {
    throw std::logic_error("reported period fails a^p = 1 (mod L)");
  }
  run.trace = std::move(builder).finish();
  return run;
}

}  // namespace dis
