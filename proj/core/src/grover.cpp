#include <numbers>

#include "dis/algorithms.hpp"
#include "dis/errors.hpp"

namespace dis {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

void check_mode(std::optional<unsigned> k) {
  if (k && *k > 3) {
    throw RangeError("Grover mode k must lie in [0, 3]");
  }
}

StateVector minus_ancilla_state(RegisterLayout layout) {
  BasisLabel zero;
  for (const auto& reg : layout.registers()) {
    zero[reg.name] = 0;
  }
  BasisLabel one = zero;
  one["v"] = 1;
  return StateVector::from_terms(std::move(layout), {{zero, kInvSqrt2}, {one, -kInvSqrt2}});
}

}  // namespace

std::vector<GateSpec> grover_reflection_gates(const std::string& reg, const std::string& ancilla,
                                              unsigned width) {
  // With the ancilla in (|0> - |1>)/sqrt2, XOR-ing g(x) = 1 - [x == 0] into it
  // applies 2|0><0| - I; conjugating by H gives 2|s><s| - I.
  std::vector<std::uint64_t> table(std::uint64_t{1} << width, 1);
  table[0] = 0;
  FunctionOracle not_zero(OracleFamily::table, width, 1, std::move(table));
  return {GateSpec::hadamard(reg), GateSpec::function_xor(std::move(not_zero), reg, ancilla, false),
          GateSpec::hadamard(reg)};
}

Circuit grover_extended_circuit() {
  return Circuit{minus_ancilla_state(RegisterLayout({{"m", 2}, {"a", 2}, {"v", 1}})),
                 "t0",
                 {{"t1", {GateSpec::hadamard("m"), GateSpec::hadamard("a")}},
                  {"t2", {GateSpec::function_xor_controlled(kronecker_family(2), "m", "a", "v")}},
                  {"t3", grover_reflection_gates("a", "v", 2)}},
                 {"m", "a"}};
}

GroverRun run_grover2(GroverVariant variant, std::optional<unsigned> k, Rng& rng) {
  check_mode(k);
  GroverRun run;

  if (variant == GroverVariant::standard) {
    run.k = k ? *k : static_cast<unsigned>(rng.below(4));
    TraceBuilder builder("grover2", minus_ancilla_state(RegisterLayout({{"a", 2}, {"v", 1}})));
    builder.note("variant", "standard");
    builder.note("k", std::to_string(run.k));
    builder.apply(GateSpec::hadamard("a"));
    builder.checkpoint("t1");
    builder.apply(GateSpec::function_xor(kronecker_family(2)[run.k], "a", "v"));
    builder.checkpoint("t2");
    for (const auto& gate : grover_reflection_gates("a", "v", 2)) {
      builder.apply(gate);
    }
    builder.checkpoint("t3");
    run.answer = static_cast<unsigned>(builder.record(measure(builder.state(), "a", rng)).outcome);
    builder.checkpoint("t4");
    builder.note("answer", std::to_string(run.answer));
    run.trace = std::move(builder).finish();
    return run;
  }

  const auto circuit = grover_extended_circuit();
  TraceBuilder builder("grover2", circuit.initial);
  builder.note("variant", "extended");
  builder.note("mode_register", "m (Sphinx)");
  builder.note("answer_register", "a (Oedipus)");
  for (const auto& step : circuit.steps) {
    for (const auto& gate : step.gates) {
      builder.apply(gate);
    }
    builder.checkpoint(step.label);
  }
  const auto& mode = builder.record(k ? measure_forced(builder.state(), "m", *k)
                                      : measure(builder.state(), "m", rng));
  run.k = static_cast<unsigned>(mode.outcome);
  builder.checkpoint("t4");
  run.answer = static_cast<unsigned>(builder.record(measure(builder.state(), "a", rng)).outcome);
  builder.checkpoint("t5");
  builder.note("k", std::to_string(run.k));
  builder.note("answer", std::to_string(run.answer));
  run.trace = std::move(builder).finish();
  return run;
}

}  // namespace dis
