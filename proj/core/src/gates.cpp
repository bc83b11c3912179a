#include "dis/gates.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "dis/errors.hpp"

namespace dis {

namespace {

struct Field {
  unsigned shift;
  std::uint64_t mask;  // unshifted, 2^width - 1
  std::uint64_t dim;

  std::uint64_t get(std::size_t index) const { return (index >> shift) & mask; }
  std::size_t with(std::size_t index, std::uint64_t value) const {
    return (index & ~(static_cast<std::size_t>(mask) << shift)) |
           (static_cast<std::size_t>(value) << shift);
  }
};

Field field(const RegisterLayout& layout, std::string_view reg) {
  const unsigned width = layout.width(reg);
  return Field{layout.shift(reg), (std::uint64_t{1} << width) - 1, std::uint64_t{1} << width};
}

void require_distinct(std::string_view x, std::string_view y) {
  if (x == y) {
    throw StructuralError("gate registers must be distinct, got '" + std::string(x) + "' twice");
  }
}

void require_widths(const RegisterLayout& layout, const FunctionOracle& oracle,
                    std::string_view in_reg, std::string_view out_reg) {
  if (layout.width(in_reg) != oracle.domain_width() ||
      layout.width(out_reg) != oracle.codomain_width()) {
    throw StructuralError("oracle widths (" + std::to_string(oracle.domain_width()) + " -> " +
                          std::to_string(oracle.codomain_width()) +
                          ") do not match registers '" + std::string(in_reg) + "' (" +
                          std::to_string(layout.width(in_reg)) + ") and '" +
                          std::string(out_reg) + "' (" + std::to_string(layout.width(out_reg)) +
                          ")");
  }
}

template <typename Map>
StateVector permute(const StateVector& state, Map&& target_of) {
  std::vector<Amplitude> out(state.dimension());
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    out[target_of(i)] = state[i];
  }
  return StateVector(state.layout(), std::move(out));
}

StateVector fourier(const StateVector& state, std::string_view reg, double sign) {
  const Field f = field(state.layout(), reg);
  const std::uint64_t n = f.dim;
  std::vector<Amplitude> twiddle(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    twiddle[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                     static_cast<double>(n));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Amplitude> out(state.dimension());
  std::vector<Amplitude> column(n);
  for (std::size_t base = 0; base < state.dimension(); ++base) {
    if (f.get(base) != 0) {
      continue;
    }
    bool any = false;
    for (std::uint64_t x = 0; x < n; ++x) {
      column[x] = state[f.with(base, x)];
      any = any || column[x] != Amplitude{};
    }
    if (!any) {
      continue;
    }
    for (std::uint64_t z = 0; z < n; ++z) {
      Amplitude sum = 0.0;
      for (std::uint64_t x = 0; x < n; ++x) {
        sum += twiddle[(x * z) & f.mask] * column[x];
      }
      out[f.with(base, z)] = sum * scale;
    }
  }
  return StateVector(state.layout(), std::move(out));
}

}  // namespace

StateVector hadamard(const StateVector& state, std::string_view reg) {
  const auto& layout = state.layout();
  const unsigned shift = layout.shift(reg);
  const unsigned width = layout.width(reg);
  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  const double s = std::numbers::sqrt2 / 2.0;
  for (unsigned bit = shift; bit < shift + width; ++bit) {
    const std::size_t step = std::size_t{1} << bit;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (i & step) {
        continue;
      }
      const Amplitude u = amps[i];
      const Amplitude v = amps[i | step];
      amps[i] = (u + v) * s;
      amps[i | step] = (u - v) * s;
    }
  }
  return StateVector(layout, std::move(amps));
}

StateVector qft(const StateVector& state, std::string_view reg) {
  return fourier(state, reg, +1.0);
}

StateVector inverse_qft(const StateVector& state, std::string_view reg) {
  return fourier(state, reg, -1.0);
}

StateVector apply_function_xor(const StateVector& state, const FunctionOracle& oracle,
                               std::string_view in_reg, std::string_view out_reg) {
  require_distinct(in_reg, out_reg);
  require_widths(state.layout(), oracle, in_reg, out_reg);
  const Field in = field(state.layout(), in_reg);
  const Field out = field(state.layout(), out_reg);
  const auto table = oracle.table();
  return permute(state, [&](std::size_t i) {
    return out.with(i, out.get(i) ^ table[in.get(i)]);
  });
}

StateVector apply_function_add(const StateVector& state, const FunctionOracle& oracle,
                               std::string_view in_reg, std::string_view out_reg) {
  require_distinct(in_reg, out_reg);
  require_widths(state.layout(), oracle, in_reg, out_reg);
  const Field in = field(state.layout(), in_reg);
  const Field out = field(state.layout(), out_reg);
  const auto table = oracle.table();
  return permute(state, [&](std::size_t i) {
    return out.with(i, (out.get(i) + table[in.get(i)]) & out.mask);
  });
}

StateVector apply_function_xor_controlled(const StateVector& state,
                                          std::span<const FunctionOracle> family,
                                          std::string_view mode_reg, std::string_view in_reg,
                                          std::string_view out_reg) {
  require_distinct(mode_reg, in_reg);
  require_distinct(mode_reg, out_reg);
  require_distinct(in_reg, out_reg);
  if (family.empty()) {
    throw StructuralError("controlled function gate needs a nonempty family");
  }
  const auto& layout = state.layout();
  const unsigned needed =
      std::max(1u, static_cast<unsigned>(std::bit_width(family.size() - 1)));
  if (layout.width(mode_reg) != needed) {
    throw StructuralError("mode register '" + std::string(mode_reg) + "' must have width " +
                          std::to_string(needed) + " for a family of " +
                          std::to_string(family.size()));
  }
  for (const auto& oracle : family) {
    require_widths(layout, oracle, in_reg, out_reg);
  }
  const Field mode = field(layout, mode_reg);
  const Field in = field(layout, in_reg);
  const Field out = field(layout, out_reg);
  return permute(state, [&](std::size_t i) {
    const auto k = mode.get(i);
    if (k >= family.size()) {
      if (state[i] != Amplitude{}) {
        throw StructuralError("mode value " + std::to_string(k) + " has no oracle in the family");
      }
      return i;
    }
    return out.with(i, out.get(i) ^ family[k](in.get(i)));
  });
}

StateVector grover_diffusion(const StateVector& state, std::string_view reg) {
  const Field f = field(state.layout(), reg);
  std::vector<Amplitude> out(state.dimension());
  for (std::size_t base = 0; base < state.dimension(); ++base) {
    if (f.get(base) != 0) {
      continue;
    }
    Amplitude mean = 0.0;
    for (std::uint64_t x = 0; x < f.dim; ++x) {
      mean += state[f.with(base, x)];
    }
    mean /= static_cast<double>(f.dim);
    for (std::uint64_t x = 0; x < f.dim; ++x) {
      const auto idx = f.with(base, x);
      out[idx] = 2.0 * mean - state[idx];
    }
  }
  return StateVector(state.layout(), std::move(out));
}

StateVector apply_register_phase(const StateVector& state, std::string_view reg,
                                 std::span<const double> phases) {
  const Field f = field(state.layout(), reg);
  if (phases.size() != f.dim) {
    throw StructuralError("phase gate needs one phase per register value");
  }
  std::vector<Amplitude> out(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] *= std::polar(1.0, phases[f.get(i)]);
  }
  return StateVector(state.layout(), std::move(out));
}

std::string_view gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::hadamard:
      return "hadamard";
    case GateKind::qft:
      return "qft";
    case GateKind::inverse_qft:
      return "inverse_qft";
    case GateKind::function_xor:
      return "function_xor";
    case GateKind::function_add:
      return "function_add";
    case GateKind::function_xor_controlled:
      return "function_xor_controlled";
    case GateKind::diffusion:
      return "diffusion";
    case GateKind::phase:
      return "phase";
  }
  return "unknown";
}

GateSpec GateSpec::hadamard(std::string reg) { return {GateKind::hadamard, {std::move(reg)}, {}, {}}; }

GateSpec GateSpec::qft(std::string reg) { return {GateKind::qft, {std::move(reg)}, {}, {}}; }

GateSpec GateSpec::inverse_qft(std::string reg) {
  return {GateKind::inverse_qft, {std::move(reg)}, {}, {}};
}

GateSpec GateSpec::function_xor(FunctionOracle oracle, std::string in, std::string out,
                                bool is_query) {
  return {GateKind::function_xor, {std::move(in), std::move(out)}, {std::move(oracle)}, {},
          is_query};
}

GateSpec GateSpec::function_add(FunctionOracle oracle, std::string in, std::string out) {
  return {GateKind::function_add, {std::move(in), std::move(out)}, {std::move(oracle)}, {}};
}

GateSpec GateSpec::function_xor_controlled(std::vector<FunctionOracle> family, std::string mode,
                                           std::string in, std::string out) {
  return {GateKind::function_xor_controlled,
          {std::move(mode), std::move(in), std::move(out)},
          std::move(family),
          {}};
}

GateSpec GateSpec::diffusion(std::string reg) { return {GateKind::diffusion, {std::move(reg)}, {}, {}}; }

GateSpec GateSpec::phase(std::string reg, std::vector<double> phases) {
  return {GateKind::phase, {std::move(reg)}, {}, std::move(phases)};
}

bool GateSpec::is_function_gate() const {
  return kind == GateKind::function_xor || kind == GateKind::function_add ||
         kind == GateKind::function_xor_controlled;
}

bool GateSpec::touches(std::string_view reg) const {
  for (const auto& t : targets) {
    if (t == reg) {
      return true;
    }
  }
  return false;
}

StateVector apply_gate(const StateVector& state, const GateSpec& gate) {
  auto need_targets = [&](std::size_t count) {
    if (gate.targets.size() != count) {
      throw StructuralError(std::string(gate_kind_name(gate.kind)) + " gate needs " +
                            std::to_string(count) + " target registers");
    }
  };
  auto need_oracle = [&] {
    if (gate.oracles.size() != 1) {
      throw StructuralError(std::string(gate_kind_name(gate.kind)) + " gate needs one oracle");
    }
  };
  switch (gate.kind) {
    case GateKind::hadamard:
      need_targets(1);
      return hadamard(state, gate.targets[0]);
    case GateKind::qft:
      need_targets(1);
      return qft(state, gate.targets[0]);
    case GateKind::inverse_qft:
      need_targets(1);
      return inverse_qft(state, gate.targets[0]);
    case GateKind::function_xor:
      need_targets(2);
      need_oracle();
      return apply_function_xor(state, gate.oracles[0], gate.targets[0], gate.targets[1]);
    case GateKind::function_add:
      need_targets(2);
      need_oracle();
      return apply_function_add(state, gate.oracles[0], gate.targets[0], gate.targets[1]);
    case GateKind::function_xor_controlled:
      need_targets(3);
      return apply_function_xor_controlled(state, gate.oracles, gate.targets[0], gate.targets[1],
                                           gate.targets[2]);
    case GateKind::diffusion:
      need_targets(1);
      return grover_diffusion(state, gate.targets[0]);
    case GateKind::phase:
      need_targets(1);
      return apply_register_phase(state, gate.targets[0], gate.phases);
  }
  throw StructuralError("unknown gate kind");
}

nlohmann::json gate_to_json(const GateSpec& gate) {
  nlohmann::json doc = {{"kind", gate_kind_name(gate.kind)}, {"targets", gate.targets}};
  if (!gate.oracles.empty()) {
    auto oracles = nlohmann::json::array();
    for (const auto& oracle : gate.oracles) {
      oracles.push_back(oracle_to_json(oracle));
    }
    doc["oracles"] = std::move(oracles);
    doc["is_query"] = gate.is_query;
  }
  if (!gate.phases.empty()) {
    doc["phases"] = gate.phases;
  }
  return doc;
}

std::size_t Circuit::checkpoint_index(std::string_view label) const {
  if (label == initial_label) {
    return 0;
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].label == label) {
      return i + 1;
    }
  }
  throw StructuralError("circuit has no checkpoint '" + std::string(label) + "'");
}

StateVector run_until(const Circuit& circuit, std::string_view label) {
  const std::size_t stop = circuit.checkpoint_index(label);
  StateVector state = circuit.initial;
  for (std::size_t i = 0; i < stop; ++i) {
    for (const auto& gate : circuit.steps[i].gates) {
      state = apply_gate(state, gate);
    }
  }
  return state;
}

nlohmann::json circuit_to_json(const Circuit& circuit) {
  auto steps = nlohmann::json::array();
  for (const auto& step : circuit.steps) {
    auto gates = nlohmann::json::array();
    for (const auto& gate : step.gates) {
      gates.push_back(gate_to_json(gate));
    }
    steps.push_back({{"label", step.label}, {"gates", std::move(gates)}});
  }
  return {{"layout", layout_to_json(circuit.initial.layout())},
          {"initial_label", circuit.initial_label},
          {"initial", dump_state(circuit.initial)},
          {"steps", std::move(steps)},
          {"measured", circuit.measured}};
}

}  // namespace dis
