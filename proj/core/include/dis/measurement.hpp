#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dis/gates.hpp"
#include "dis/hilbert.hpp"
#include "dis/rng.hpp"

namespace dis {

// Born probabilities below this are treated as zero.
inline constexpr double kProbabilityFloor = 1e-14;

struct OutcomeDistribution {
  std::string reg;
  // (eigenvalue, probability), ascending eigenvalue, zero entries omitted.
  std::vector<std::pair<std::uint64_t, double>> entries;

  double probability(std::uint64_t eigenvalue) const;
};

struct ProjectorSpec {
  std::string reg;
  std::uint64_t eigenvalue = 0;
};

struct MeasurementRecord {
  std::string reg;
  std::uint64_t outcome = 0;
  double probability = 0.0;
  StateVector post_state;
};

OutcomeDistribution outcome_distribution(const StateVector& state, std::string_view reg);

// Zeroes every amplitude whose register value differs from the eigenvalue.
// The result is not normalized.
StateVector project(const StateVector& state, const ProjectorSpec& spec);

// Samples an outcome from the Born distribution and collapses onto it.
MeasurementRecord measure(const StateVector& state, std::string_view reg, Rng& rng);

// Collapse onto a chosen outcome. Throws DegenerateStateError when the
// outcome has zero probability.
MeasurementRecord measure_forced(const StateVector& state, std::string_view reg,
                                 std::uint64_t outcome);

/// Pointer coupling |y>_reg |0>_pointer -> |y>_reg |y>_pointer.
///
/// The pointer must have the measured register's width and carry no
/// amplitude outside value 0; otherwise PreconditionError.
StateVector von_neumann_premeasurement(const StateVector& state, std::string_view reg,
                                       std::string_view pointer);

/// Unit vector in the eigenspace {reg = selected} with maximal overlap
/// |<phi|before>|, phased so the overlap is real and positive.
///
/// Works from an explicit orthonormal basis of the eigenspace rather than
/// through project(), so the two can be compared.
StateVector solve_measurement_constraints(const StateVector& before, std::string_view reg,
                                          std::uint64_t selected_eigenvalue);

inline constexpr double kSchmidtTolerance = 1e-10;

// Number of singular values above tol of the amplitude matrix with rows
// indexed by `left` registers and columns by `right` registers. The two
// groups must be nonempty, disjoint, and cover the layout.
std::size_t schmidt_rank(const StateVector& state, const std::vector<std::string>& left,
                         const std::vector<std::string>& right, double tol = kSchmidtTolerance);

std::vector<double> schmidt_coefficients(const StateVector& state,
                                         const std::vector<std::string>& left,
                                         const std::vector<std::string>& right);

// Joint Born distribution over the listed registers, keyed by their values
// in list order.
using JointDistribution = std::map<std::vector<std::uint64_t>, double>;
JointDistribution joint_distribution(const StateVector& state,
                                     const std::vector<std::string>& registers);

struct DeferredReport {
  // Keys: the deferred register first, then the circuit's other measured
  // registers in the order listed by the circuit.
  std::vector<std::string> registers;
  JointDistribution ordering_a;  // deferred register measured at measure_now
  JointDistribution ordering_b;  // deferred register measured at measure_later
  double max_abs_diff = 0.0;
};

/// Exact joint outcome distributions for measuring `deferred` right after
/// checkpoint measure_now versus right after measure_later; the circuit's
/// other measured registers are read at the end in both cases. Throws
/// PreconditionError when any gate between the two checkpoints touches the
/// deferred register.
DeferredReport deferred_equivalence_check(const Circuit& circuit, std::string_view deferred,
                                          std::string_view measure_now,
                                          std::string_view measure_later);

nlohmann::json deferred_report_to_json(const DeferredReport& report);
nlohmann::json distribution_to_json(const OutcomeDistribution& dist);

}  // namespace dis
