#include <cmath>
#include <numbers>

#include "dis/algorithms.hpp"
#include "dis/errors.hpp"

namespace dis {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

std::string mode_bits(unsigned k) {
  return std::string{static_cast<char>('0' + ((k >> 1) & 1)), static_cast<char>('0' + (k & 1))};
}

void check_mode(std::optional<unsigned> k) {
  if (k && *k > 3) {
    throw RangeError("Deutsch mode k must be one of 00, 01, 10, 11");
  }
}

StateVector extended_preparation() {
  RegisterLayout layout({{"m", 2}, {"a", 1}, {"v", 1}});
  return StateVector::from_terms(layout, {{{{"m", 0}, {"a", 0}, {"v", 0}}, kInvSqrt2},
                                          {{{"m", 0}, {"a", 0}, {"v", 1}}, -kInvSqrt2}});
}

std::vector<GateSpec> mode_preparation(const std::array<double, 3>& phases, bool with_phases) {
  std::vector<GateSpec> gates{GateSpec::hadamard("m"), GateSpec::hadamard("a")};
  if (with_phases) {
    gates.push_back(GateSpec::phase("m", {0.0, phases[0], phases[1], phases[2]}));
  }
  return gates;
}

}  // namespace

Circuit deutsch_extended_circuit(const std::array<double, 3>& phases) {
  const bool with_phases = phases != std::array<double, 3>{};
  return Circuit{extended_preparation(),
                 "t0",
                 {{"t1", mode_preparation(phases, with_phases)},
                  {"t2", {GateSpec::function_xor_controlled(deutsch_family(), "m", "a", "v")}},
                  {"t3", {GateSpec::hadamard("a")}}},
                 {"m", "a"}};
}

DeutschRun run_deutsch(DeutschVariant variant, std::optional<unsigned> k, Rng& rng) {
  check_mode(k);
  DeutschRun run;

  if (variant == DeutschVariant::original) {
    run.k = k ? *k : static_cast<unsigned>(rng.below(4));
    const auto oracle = deutsch_family()[run.k];
    RegisterLayout layout({{"a", 1}, {"v", 1}});
    TraceBuilder builder("deutsch",
                         StateVector::from_terms(layout, {{{{"a", 0}, {"v", 0}}, kInvSqrt2},
                                                          {{{"a", 0}, {"v", 1}}, -kInvSqrt2}}));
    builder.note("variant", "original");
    builder.note("k", mode_bits(run.k));
    builder.apply(GateSpec::hadamard("a"));
    builder.checkpoint("t1");
    builder.apply(GateSpec::function_xor(oracle, "a", "v"));
    builder.checkpoint("t2");
    builder.apply(GateSpec::hadamard("a"));
    builder.checkpoint("t3");
    run.answer = static_cast<unsigned>(builder.record(measure(builder.state(), "a", rng)).outcome);
    builder.note("answer", run.answer ? "balanced" : "unbalanced");
    run.trace = std::move(builder).finish();
    return run;
  }

  const bool mixture = variant == DeutschVariant::mixture;
  if (mixture) {
    run.phases = {rng.angle(), rng.angle(), rng.angle()};
  }
  TraceBuilder builder("deutsch", extended_preparation());
  builder.note("variant", mixture ? "mixture" : "extended");
  builder.note("mode_register", "m (Sphinx)");
  builder.note("answer_register", "a (Oedipus)");
  if (mixture) {
    for (std::size_t i = 0; i < 3; ++i) {
      builder.note("delta" + std::to_string(i + 1), std::to_string(run.phases[i]));
    }
  }
  for (const auto& gate : mode_preparation(run.phases, mixture)) {
    builder.apply(gate);
  }
  builder.checkpoint("t1");
  builder.apply(GateSpec::function_xor_controlled(deutsch_family(), "m", "a", "v"));
  builder.checkpoint("t2");
  builder.apply(GateSpec::hadamard("a"));
  builder.checkpoint("t3");

  const auto& mode = builder.record(k ? measure_forced(builder.state(), "m", *k)
                                      : measure(builder.state(), "m", rng));
  run.k = static_cast<unsigned>(mode.outcome);
  builder.checkpoint("t4");
  run.answer = static_cast<unsigned>(builder.record(measure(builder.state(), "a", rng)).outcome);
  builder.checkpoint("t5");
  builder.note("k", mode_bits(run.k));
  builder.note("answer", run.answer ? "balanced" : "unbalanced");
  run.trace = std::move(builder).finish();
  return run;
}

}  // namespace dis
