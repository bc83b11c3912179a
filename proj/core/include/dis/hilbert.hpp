#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace dis {

using Amplitude = std::complex<double>;

// Per-register integer values, keyed by register name.
using BasisLabel = std::map<std::string, std::uint64_t>;

inline constexpr unsigned kDefaultWidthCap = 24;

// Total-qubit cap for a layout: DIS_WIDTH_CAP when set to a positive integer,
// otherwise kDefaultWidthCap.
unsigned width_cap();

struct Register {
  std::string name;
  unsigned width = 0;

  friend bool operator==(const Register&, const Register&) = default;
};

/// Ordered named registers spanning the joint computational basis.
///
/// Basis index encoding: registers are concatenated in declaration order with
/// the first register in the most significant bits, and each register's value
/// is stored MSB-first in binary. For (m:2, a:1, v:1) the label
/// (m=2, a=1, v=0) is index 2*4 + 1*2 + 0 = 10.
class RegisterLayout {
 public:
  RegisterLayout(std::vector<Register> registers, unsigned cap = width_cap());
  RegisterLayout(std::initializer_list<Register> registers);

  std::span<const Register> registers() const { return registers_; }
  std::size_t size() const { return registers_.size(); }
  unsigned total_width() const { return total_width_; }
  std::size_t dimension() const { return std::size_t{1} << total_width_; }

  bool contains(std::string_view name) const;
  // Position in declaration order; throws StructuralError for unknown names.
  std::size_t position(std::string_view name) const;
  unsigned width(std::string_view name) const;
  // Bit offset of the register's least significant qubit inside the index.
  unsigned shift(std::string_view name) const;
  std::uint64_t register_dimension(std::string_view name) const {
    return std::uint64_t{1} << width(name);
  }

  std::size_t encode(const BasisLabel& label) const;
  BasisLabel decode(std::size_t index) const;
  std::uint64_t value_at(std::size_t index, std::string_view name) const;

  friend bool operator==(const RegisterLayout& x, const RegisterLayout& y) {
    return x.registers_ == y.registers_;
  }

 private:
  std::vector<Register> registers_;
  std::vector<unsigned> shifts_;
  unsigned total_width_ = 0;
};

/// Dense amplitude vector over a RegisterLayout. Immutable after construction;
/// every operation in this library returns a new value.
class StateVector {
 public:
  StateVector(RegisterLayout layout, std::vector<Amplitude> amplitudes);

  // Sum of amp * |label> terms; labels may repeat (amplitudes add).
  static StateVector from_terms(
      RegisterLayout layout,
      std::initializer_list<std::pair<BasisLabel, Amplitude>> terms);
  static StateVector from_terms(
      RegisterLayout layout,
      std::span<const std::pair<BasisLabel, Amplitude>> terms);

  const RegisterLayout& layout() const { return layout_; }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  Amplitude operator[](std::size_t index) const { return amplitudes_[index]; }
  Amplitude amplitude(const BasisLabel& label) const;

  double norm() const;
  double norm_squared() const;

  StateVector scaled(Amplitude factor) const;

 private:
  RegisterLayout layout_;
  std::vector<Amplitude> amplitudes_;
};

StateVector make_basis_state(const RegisterLayout& layout, const BasisLabel& label);

// Conjugate-linear in x.
Amplitude inner_product(const StateVector& x, const StateVector& y);

// True iff some unit-modulus c has ||x - c*y|| <= tol, with c taken from the
// amplitude ratio at y's largest-magnitude entry.
bool equals_up_to_global_phase(const StateVector& x, const StateVector& y, double tol);

StateVector normalize(const StateVector& x);

// Joint state on the concatenated layout (x's registers first).
StateVector tensor(const StateVector& x, const StateVector& y);

// Concatenation; register names must be disjoint.
RegisterLayout concat(const RegisterLayout& x, const RegisterLayout& y);

// Amplitudes with modulus at or below this are omitted from dumps.
inline constexpr double kDumpThreshold = 1e-14;

// JSON array of {label: {reg: int}, re, im} for |amp| > kDumpThreshold, by index.
nlohmann::json dump_state(const StateVector& state);
StateVector load_state(const RegisterLayout& layout, const nlohmann::json& dump);

nlohmann::json layout_to_json(const RegisterLayout& layout);

}  // namespace dis
