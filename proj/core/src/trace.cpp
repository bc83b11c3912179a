#include "dis/trace.hpp"

#include "dis/errors.hpp"

namespace dis {

const StateVector& AlgorithmTrace::at(std::string_view label) const {
  for (const auto& cp : checkpoints) {
    if (cp.label == label) {
      return cp.state;
    }
  }
  throw StructuralError("trace has no checkpoint '" + std::string(label) + "'");
}

bool AlgorithmTrace::has(std::string_view label) const {
  for (const auto& cp : checkpoints) {
    if (cp.label == label) {
      return true;
    }
  }
  return false;
}

const MeasurementRecord& AlgorithmTrace::measurement(std::string_view reg) const {
  for (const auto& rec : measurements) {
    if (rec.reg == reg) {
      return rec;
    }
  }
  throw StructuralError("trace has no measurement of '" + std::string(reg) + "'");
}

TraceBuilder::TraceBuilder(std::string algorithm, StateVector initial, std::string initial_label)
    : state_(std::move(initial)) {
  trace_.algorithm = std::move(algorithm);
  trace_.checkpoints.push_back({std::move(initial_label), state_});
}

void TraceBuilder::apply(const GateSpec& gate) {
  state_ = apply_gate(state_, gate);
  if (gate.is_function_gate()) {
    ++trace_.function_gate_applications;
    if (gate.is_query) {
      ++trace_.oracle_queries;
    }
  }
}

void TraceBuilder::checkpoint(std::string label) {
  if (trace_.has(label)) {
    throw StructuralError("duplicate checkpoint '" + label + "'");
  }
  trace_.checkpoints.push_back({std::move(label), state_});
}

MeasurementRecord& TraceBuilder::record(MeasurementRecord record) {
  state_ = record.post_state;
  trace_.measurements.push_back(std::move(record));
  return trace_.measurements.back();
}

void TraceBuilder::note(std::string key, std::string value) {
  trace_.metadata[std::move(key)] = std::move(value);
}

AlgorithmTrace TraceBuilder::finish() && { return std::move(trace_); }

nlohmann::json measurement_to_json(const MeasurementRecord& record) {
  return {{"register", record.reg},
          {"outcome", record.outcome},
          {"probability", record.probability}};
}

nlohmann::json trace_to_json(const AlgorithmTrace& trace) {
  auto checkpoints = nlohmann::json::array();
  for (const auto& cp : trace.checkpoints) {
    checkpoints.push_back({{"label", cp.label}, {"state", dump_state(cp.state)}});
  }
  auto measurements = nlohmann::json::array();
  for (const auto& rec : trace.measurements) {
    measurements.push_back(measurement_to_json(rec));
  }
  nlohmann::json layout = trace.checkpoints.empty()
                              ? nlohmann::json::array()
                              : layout_to_json(trace.checkpoints.front().state.layout());
  return {{"algorithm", trace.algorithm},
          {"layout", std::move(layout)},
          {"checkpoints", std::move(checkpoints)},
          {"measurements", std::move(measurements)},
          {"oracle_queries", trace.oracle_queries},
          {"function_gate_applications", trace.function_gate_applications},
          {"metadata", trace.metadata}};
}

}  // namespace dis
