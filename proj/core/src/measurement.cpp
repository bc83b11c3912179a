#include "dis/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/SVD>

#include "dis/errors.hpp"

namespace dis {

double OutcomeDistribution::probability(std::uint64_t eigenvalue) const {
  for (const auto& [value, p] : entries) {
    if (value == eigenvalue) {
      return p;
    }
  }
  return 0.0;
}

OutcomeDistribution outcome_distribution(const StateVector& state, std::string_view reg) {
  const auto& layout = state.layout();
  std::vector<double> mass(layout.register_dimension(reg), 0.0);
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    mass[layout.value_at(i, reg)] += std::norm(state[i]);
  }
  OutcomeDistribution dist{std::string(reg), {}};
  for (std::uint64_t value = 0; value < mass.size(); ++value) {
    if (mass[value] >= kProbabilityFloor) {
      dist.entries.emplace_back(value, mass[value]);
    }
  }
  return dist;
}

StateVector project(const StateVector& state, const ProjectorSpec& spec) {
  const auto& layout = state.layout();
  if (spec.eigenvalue >= layout.register_dimension(spec.reg)) {
    throw RangeError("eigenvalue " + std::to_string(spec.eigenvalue) + " out of range for '" +
                     spec.reg + "'");
  }
  std::vector<Amplitude> out(state.dimension());
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (layout.value_at(i, spec.reg) == spec.eigenvalue) {
      out[i] = state[i];
    }
  }
  return StateVector(layout, std::move(out));
}

MeasurementRecord measure_forced(const StateVector& state, std::string_view reg,
                                 std::uint64_t outcome) {
  const StateVector projected = project(state, ProjectorSpec{std::string(reg), outcome});
  const double p = projected.norm_squared();
  if (p < kProbabilityFloor) {
    throw DegenerateStateError("outcome " + std::to_string(outcome) + " of '" +
                               std::string(reg) + "' has zero probability");
  }
  return MeasurementRecord{std::string(reg), outcome, p, normalize(projected)};
}

MeasurementRecord measure(const StateVector& state, std::string_view reg, Rng& rng) {
  const auto dist = outcome_distribution(state, reg);
  if (dist.entries.empty()) {
    throw DegenerateStateError("cannot measure the zero vector");
  }
  double total = 0.0;
  for (const auto& entry : dist.entries) {
    total += entry.second;
  }
  const double target = rng.uniform() * total;
  double cumulative = 0.0;
  std::uint64_t chosen = dist.entries.back().first;
  for (const auto& [value, p] : dist.entries) {
    cumulative += p;
    if (target < cumulative) {
      chosen = value;
      break;
    }
  }
  return measure_forced(state, reg, chosen);
}

StateVector von_neumann_premeasurement(const StateVector& state, std::string_view reg,
                                       std::string_view pointer) {
  const auto& layout = state.layout();
  if (reg == pointer) {
    throw StructuralError("pointer must be a different register");
  }
  if (layout.width(reg) != layout.width(pointer)) {
    throw StructuralError("pointer '" + std::string(pointer) + "' must have the width of '" +
                          std::string(reg) + "'");
  }
  const unsigned pshift = layout.shift(pointer);
  std::vector<Amplitude> out(state.dimension());
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (state[i] == Amplitude{}) {
      continue;
    }
    if (layout.value_at(i, pointer) != 0) {
      if (std::abs(state[i]) > kDumpThreshold) {
        throw PreconditionError("pointer '" + std::string(pointer) + "' is not sharp at 0");
      }
      continue;
    }
    out[i | (static_cast<std::size_t>(layout.value_at(i, reg)) << pshift)] = state[i];
  }
  return StateVector(layout, std::move(out));
}

StateVector solve_measurement_constraints(const StateVector& before, std::string_view reg,
                                          std::uint64_t selected_eigenvalue) {
  const auto& layout = before.layout();
  if (selected_eigenvalue >= layout.register_dimension(reg)) {
    throw RangeError("selected eigenvalue out of range for '" + std::string(reg) + "'");
  }

  // Orthonormal basis of the eigenspace: |label> with reg fixed, every other
  // register free. Enumerate the free registers as a mixed-radix counter.
  std::vector<Register> free;
  for (const auto& r : layout.registers()) {
    if (r.name != reg) {
      free.push_back(r);
    }
  }
  std::size_t basis_size = 1;
  for (const auto& r : free) {
    basis_size <<= r.width;
  }

  std::vector<BasisLabel> basis;
  std::vector<Amplitude> coefficients;
  basis.reserve(basis_size);
  coefficients.reserve(basis_size);
  for (std::size_t counter = 0; counter < basis_size; ++counter) {
    BasisLabel label{{std::string(reg), selected_eigenvalue}};
    std::size_t rest = counter;
    for (auto it = free.rbegin(); it != free.rend(); ++it) {
      const std::uint64_t radix = std::uint64_t{1} << it->width;
      label.emplace(it->name, rest % radix);
      rest /= radix;
    }
    // <e_j | before>
    coefficients.push_back(before.amplitude(label));
    basis.push_back(std::move(label));
  }

  // Cauchy-Schwarz: |<phi|before>| over unit phi in the span is maximized by
  // phi = c / |c|, where c are the eigenspace coordinates of `before`.
  double weight = 0.0;
  for (const auto& c : coefficients) {
    weight += std::norm(c);
  }
  if (weight < kProbabilityFloor) {
    throw DegenerateStateError("selected eigenvalue " + std::to_string(selected_eigenvalue) +
                               " has zero amplitude; the constraints have no solution");
  }
  const double scale = 1.0 / std::sqrt(weight);
  std::vector<Amplitude> amps(layout.dimension());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    amps[layout.encode(basis[j])] = coefficients[j] * scale;
  }
  return StateVector(layout, std::move(amps));
}

namespace {

void validate_cut(const RegisterLayout& layout, const std::vector<std::string>& left,
                  const std::vector<std::string>& right) {
  if (left.empty() || right.empty()) {
    throw StructuralError("both sides of a cut must be nonempty");
  }
  std::set<std::string> seen;
  for (const auto* side : {&left, &right}) {
    for (const auto& name : *side) {
      layout.position(name);
      if (!seen.insert(name).second) {
        throw StructuralError("register '" + name + "' appears twice in the cut");
      }
    }
  }
  if (seen.size() != layout.size()) {
    throw StructuralError("cut must cover every register of the layout");
  }
}

std::size_t group_index(const RegisterLayout& layout, std::size_t index,
                        const std::vector<std::string>& group) {
  std::size_t out = 0;
  for (const auto& name : group) {
    out = (out << layout.width(name)) | layout.value_at(index, name);
  }
  return out;
}

std::size_t group_dimension(const RegisterLayout& layout, const std::vector<std::string>& group) {
  std::size_t dim = 1;
  for (const auto& name : group) {
    dim <<= layout.width(name);
  }
  return dim;
}

}  // namespace

std::vector<double> schmidt_coefficients(const StateVector& state,
                                         const std::vector<std::string>& left,
                                         const std::vector<std::string>& right) {
  const auto& layout = state.layout();
  validate_cut(layout, left, right);
  Eigen::MatrixXcd matrix = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(group_dimension(layout, left)),
      static_cast<Eigen::Index>(group_dimension(layout, right)));
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    matrix(static_cast<Eigen::Index>(group_index(layout, i, left)),
           static_cast<Eigen::Index>(group_index(layout, i, right))) = state[i];
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix);
  const auto& values = svd.singularValues();
  return std::vector<double>(values.data(), values.data() + values.size());
}

std::size_t schmidt_rank(const StateVector& state, const std::vector<std::string>& left,
                         const std::vector<std::string>& right, double tol) {
  const auto values = schmidt_coefficients(state, left, right);
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [tol](double s) { return s > tol; }));
}

JointDistribution joint_distribution(const StateVector& state,
                                     const std::vector<std::string>& registers) {
  const auto& layout = state.layout();
  for (const auto& name : registers) {
    layout.position(name);
  }
  JointDistribution dist;
  std::vector<std::uint64_t> key(registers.size());
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    const double p = std::norm(state[i]);
    if (p == 0.0) {
      continue;
    }
    for (std::size_t r = 0; r < registers.size(); ++r) {
      key[r] = layout.value_at(i, registers[r]);
    }
    dist[key] += p;
  }
  std::erase_if(dist, [](const auto& entry) { return entry.second < kProbabilityFloor; });
  return dist;
}

namespace {

StateVector evolve(StateVector state, const Circuit& circuit, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) {
    for (const auto& gate : circuit.steps[i].gates) {
      state = apply_gate(state, gate);
    }
  }
  return state;
}

JointDistribution branch_at(const Circuit& circuit, std::string_view deferred,
                            const std::vector<std::string>& others, std::size_t checkpoint) {
  const StateVector at = evolve(circuit.initial, circuit, 0, checkpoint);
  JointDistribution out;
  for (const auto& [outcome, p] : outcome_distribution(at, deferred).entries) {
    const auto record = measure_forced(at, deferred, outcome);
    const StateVector final_state =
        evolve(record.post_state, circuit, checkpoint, circuit.steps.size());
    if (others.empty()) {
      out[{outcome}] += p;
      continue;
    }
    for (const auto& [key, q] : joint_distribution(final_state, others)) {
      std::vector<std::uint64_t> full{outcome};
      full.insert(full.end(), key.begin(), key.end());
      out[full] += p * q;
    }
  }
  return out;
}

}  // namespace

DeferredReport deferred_equivalence_check(const Circuit& circuit, std::string_view deferred,
                                          std::string_view measure_now,
                                          std::string_view measure_later) {
  circuit.initial.layout().position(deferred);
  const std::size_t now = circuit.checkpoint_index(measure_now);
  const std::size_t later = circuit.checkpoint_index(measure_later);
  if (now > later) {
    throw StructuralError("measure_now must not come after measure_later");
  }
  for (std::size_t i = now; i < later; ++i) {
    for (const auto& gate : circuit.steps[i].gates) {
      if (gate.touches(deferred)) {
        throw PreconditionError("step '" + circuit.steps[i].label + "' acts on deferred register '" +
                                std::string(deferred) + "'");
      }
    }
  }

  DeferredReport report;
  report.registers.emplace_back(deferred);
  std::vector<std::string> others;
  for (const auto& name : circuit.measured) {
    if (name != deferred) {
      others.push_back(name);
      report.registers.push_back(name);
    }
  }
  report.ordering_a = branch_at(circuit, deferred, others, now);
  report.ordering_b = branch_at(circuit, deferred, others, later);

  std::set<std::vector<std::uint64_t>> keys;
  for (const auto& entry : report.ordering_a) keys.insert(entry.first);
  for (const auto& entry : report.ordering_b) keys.insert(entry.first);
  for (const auto& key : keys) {
    const auto a = report.ordering_a.find(key);
    const auto b = report.ordering_b.find(key);
    const double pa = a == report.ordering_a.end() ? 0.0 : a->second;
    const double pb = b == report.ordering_b.end() ? 0.0 : b->second;
    report.max_abs_diff = std::max(report.max_abs_diff, std::abs(pa - pb));
  }
  return report;
}

namespace {

nlohmann::json joint_to_json(const std::vector<std::string>& registers,
                             const JointDistribution& dist) {
  auto out = nlohmann::json::array();
  for (const auto& [key, p] : dist) {
    nlohmann::json outcome = nlohmann::json::object();
    for (std::size_t i = 0; i < registers.size(); ++i) {
      outcome[registers[i]] = key[i];
    }
    out.push_back({{"outcome", std::move(outcome)}, {"probability", p}});
  }
  return out;
}

}  // namespace

nlohmann::json deferred_report_to_json(const DeferredReport& report) {
  return {{"registers", report.registers},
          {"ordering_a", joint_to_json(report.registers, report.ordering_a)},
          {"ordering_b", joint_to_json(report.registers, report.ordering_b)},
          {"max_abs_diff", report.max_abs_diff}};
}

nlohmann::json distribution_to_json(const OutcomeDistribution& dist) {
  auto entries = nlohmann::json::array();
  for (const auto& [value, p] : dist.entries) {
    entries.push_back({{"eigenvalue", value}, {"probability", p}});
  }
  return {{"register", dist.reg}, {"entries", std::move(entries)}};
}

}  // namespace dis
