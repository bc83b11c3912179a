#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dis/gates.hpp"
#include "dis/measurement.hpp"

namespace dis {

struct Checkpoint {
  std::string label;
  StateVector state;
};

/// Labeled states t0..t5 of one algorithm run, plus its measurements and
/// oracle bookkeeping.
struct AlgorithmTrace {
  std::string algorithm;
  std::vector<Checkpoint> checkpoints;
  std::vector<MeasurementRecord> measurements;
  // Applications of the oracle under study (the hidden function or mode oracle).
  std::size_t oracle_queries = 0;
  // All reversible function-gate applications, including fixed ones.
  std::size_t function_gate_applications = 0;
  std::map<std::string, std::string> metadata;

  const StateVector& at(std::string_view label) const;
  bool has(std::string_view label) const;
  const MeasurementRecord& measurement(std::string_view reg) const;
};

// Accumulates checkpoints while applying gates, counting function gates.
class TraceBuilder {
 public:
  TraceBuilder(std::string algorithm, StateVector initial, std::string initial_label = "t0");

  const StateVector& state() const { return state_; }

  void apply(const GateSpec& gate);
  void checkpoint(std::string label);
  MeasurementRecord& record(MeasurementRecord record);
  void set_state(StateVector state) { state_ = std::move(state); }
  void note(std::string key, std::string value);

  AlgorithmTrace& trace() { return trace_; }
  AlgorithmTrace finish() &&;

 private:
  AlgorithmTrace trace_;
  StateVector state_;
};

nlohmann::json trace_to_json(const AlgorithmTrace& trace);
nlohmann::json measurement_to_json(const MeasurementRecord& record);

}  // namespace dis
