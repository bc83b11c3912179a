#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dis/hilbert.hpp"
#include "dis/oracles.hpp"

namespace dis {

// H on every qubit of the register: |x> -> N^-1/2 sum_z (-1)^{popcount(x & z)} |z>.
StateVector hadamard(const StateVector& state, std::string_view reg);

// Discrete Fourier transform on the register, dense O(N^2):
// |x> -> N^-1/2 sum_z exp(2 pi i x z / N) |z>.
StateVector qft(const StateVector& state, std::string_view reg);
StateVector inverse_qft(const StateVector& state, std::string_view reg);

// |x>|y> -> |x>|y XOR f(x)>.
StateVector apply_function_xor(const StateVector& state, const FunctionOracle& oracle,
                               std::string_view in_reg, std::string_view out_reg);

// |x>|y> -> |x>|y + f(x) mod 2^width>.
StateVector apply_function_add(const StateVector& state, const FunctionOracle& oracle,
                               std::string_view in_reg, std::string_view out_reg);

// |k>|x>|y> -> |k>|x>|y XOR f_k(x)>. The mode register must be exactly wide
// enough to index the family.
StateVector apply_function_xor_controlled(const StateVector& state,
                                          std::span<const FunctionOracle> family,
                                          std::string_view mode_reg, std::string_view in_reg,
                                          std::string_view out_reg);

// 2|s><s| - I on the register, |s> the uniform superposition.
StateVector grover_diffusion(const StateVector& state, std::string_view reg);

// |x> -> exp(i phases[x]) |x> on the register; phases.size() == 2^width.
StateVector apply_register_phase(const StateVector& state, std::string_view reg,
                                 std::span<const double> phases);

enum class GateKind {
  hadamard,
  qft,
  inverse_qft,
  function_xor,
  function_add,
  function_xor_controlled,
  diffusion,
  phase,
};

std::string_view gate_kind_name(GateKind kind);

/// One gate in a circuit. Targets are register names: [reg] for single-register
/// gates, [in, out] for function gates, [mode, in, out] for the controlled gate.
struct GateSpec {
  GateKind kind;
  std::vector<std::string> targets;
  std::vector<FunctionOracle> oracles;
  std::vector<double> phases;
  // Function gates only: whether an application counts as an oracle query.
  bool is_query = true;

  static GateSpec hadamard(std::string reg);
  static GateSpec qft(std::string reg);
  static GateSpec inverse_qft(std::string reg);
  static GateSpec function_xor(FunctionOracle oracle, std::string in, std::string out,
                               bool is_query = true);
  static GateSpec function_add(FunctionOracle oracle, std::string in, std::string out);
  static GateSpec function_xor_controlled(std::vector<FunctionOracle> family, std::string mode,
                                          std::string in, std::string out);
  static GateSpec diffusion(std::string reg);
  static GateSpec phase(std::string reg, std::vector<double> phases);

  bool is_function_gate() const;
  bool touches(std::string_view reg) const;
};

StateVector apply_gate(const StateVector& state, const GateSpec& gate);

nlohmann::json gate_to_json(const GateSpec& gate);

/// A labeled sequence of gate groups. The state after each step is the
/// checkpoint carrying that step's label.
struct CircuitStep {
  std::string label;
  std::vector<GateSpec> gates;
};

struct Circuit {
  StateVector initial;
  std::string initial_label = "t0";
  std::vector<CircuitStep> steps;
  // Registers read out at the end of the circuit.
  std::vector<std::string> measured;

  // 0 for initial_label, i + 1 for steps[i]. Throws StructuralError if absent.
  std::size_t checkpoint_index(std::string_view label) const;
};

// State after the checkpoint with this label (initial_label gives `initial`).
StateVector run_until(const Circuit& circuit, std::string_view label);

nlohmann::json circuit_to_json(const Circuit& circuit);

}  // namespace dis
