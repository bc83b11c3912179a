#include "dis/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "dis/errors.hpp"

namespace dis {

unsigned width_cap() {
  if (const char* env = std::getenv("DIS_WIDTH_CAP")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0 && value < 63) {
      return static_cast<unsigned>(value);
    }
  }
  return kDefaultWidthCap;
}

RegisterLayout::RegisterLayout(std::vector<Register> registers, unsigned cap)
    : registers_(std::move(registers)) {
  if (registers_.empty()) {
    throw StructuralError("layout needs at least one register");
  }
  std::set<std::string> names;
  for (const auto& reg : registers_) {
    if (reg.width == 0) {
      throw StructuralError("register '" + reg.name + "' has zero width");
    }
    if (!names.insert(reg.name).second) {
      throw StructuralError("duplicate register name '" + reg.name + "'");
    }
    total_width_ += reg.width;
  }
  if (total_width_ > cap) {
    throw StructuralError("layout needs " + std::to_string(total_width_) +
                          " qubits, cap is " + std::to_string(cap));
  }
  shifts_.resize(registers_.size());
  unsigned shift = 0;
  for (std::size_t i = registers_.size(); i-- > 0;) {
    shifts_[i] = shift;
    shift += registers_[i].width;
  }
}

RegisterLayout::RegisterLayout(std::initializer_list<Register> registers)
    : RegisterLayout(std::vector<Register>(registers)) {}

bool RegisterLayout::contains(std::string_view name) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const Register& r) { return r.name == name; });
}

std::size_t RegisterLayout::position(std::string_view name) const {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].name == name) {
      return i;
    }
  }
  throw StructuralError("unknown register '" + std::string(name) + "'");
}

unsigned RegisterLayout::width(std::string_view name) const {
  return registers_[position(name)].width;
}

unsigned RegisterLayout::shift(std::string_view name) const {
  return shifts_[position(name)];
}

std::size_t RegisterLayout::encode(const BasisLabel& label) const {
  if (label.size() != registers_.size()) {
    throw StructuralError("basis label must name every register exactly once");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    const auto it = label.find(registers_[i].name);
    if (it == label.end()) {
      throw StructuralError("basis label is missing register '" + registers_[i].name + "'");
    }
    if (it->second >= (std::uint64_t{1} << registers_[i].width)) {
      throw RangeError("value " + std::to_string(it->second) + " out of range for register '" +
                       registers_[i].name + "'");
    }
    index |= static_cast<std::size_t>(it->second) << shifts_[i];
  }
  return index;
}

BasisLabel RegisterLayout::decode(std::size_t index) const {
  if (index >= dimension()) {
    throw RangeError("basis index out of range");
  }
  BasisLabel label;
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    const std::uint64_t mask = (std::uint64_t{1} << registers_[i].width) - 1;
    label.emplace(registers_[i].name, (index >> shifts_[i]) & mask);
  }
  return label;
}

std::uint64_t RegisterLayout::value_at(std::size_t index, std::string_view name) const {
  const std::size_t pos = position(name);
  const std::uint64_t mask = (std::uint64_t{1} << registers_[pos].width) - 1;
  return (index >> shifts_[pos]) & mask;
}

StateVector::StateVector(RegisterLayout layout, std::vector<Amplitude> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != layout_.dimension()) {
    throw StructuralError("amplitude count " + std::to_string(amplitudes_.size()) +
                          " does not match layout dimension " +
                          std::to_string(layout_.dimension()));
  }
}

StateVector StateVector::from_terms(
    RegisterLayout layout, std::initializer_list<std::pair<BasisLabel, Amplitude>> terms) {
  return from_terms(std::move(layout),
                    std::span<const std::pair<BasisLabel, Amplitude>>(terms.begin(), terms.size()));
}

StateVector StateVector::from_terms(RegisterLayout layout,
                                    std::span<const std::pair<BasisLabel, Amplitude>> terms) {
  std::vector<Amplitude> amps(layout.dimension());
  for (const auto& [label, amp] : terms) {
    amps[layout.encode(label)] += amp;
  }
  return StateVector(std::move(layout), std::move(amps));
}

Amplitude StateVector::amplitude(const BasisLabel& label) const {
  return amplitudes_[layout_.encode(label)];
}

double StateVector::norm_squared() const {
  double sum = 0.0;
  for (const auto& amp : amplitudes_) {
    sum += std::norm(amp);
  }
  return sum;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

StateVector StateVector::scaled(Amplitude factor) const {
  std::vector<Amplitude> amps(amplitudes_);
  for (auto& amp : amps) {
    amp *= factor;
  }
  return StateVector(layout_, std::move(amps));
}

StateVector make_basis_state(const RegisterLayout& layout, const BasisLabel& label) {
  std::vector<Amplitude> amps(layout.dimension());
  amps[layout.encode(label)] = 1.0;
  return StateVector(layout, std::move(amps));
}

namespace {

void require_same_layout(const StateVector& x, const StateVector& y) {
  if (!(x.layout() == y.layout())) {
    throw StructuralError("states have different register layouts");
  }
}

}  // namespace

Amplitude inner_product(const StateVector& x, const StateVector& y) {
  require_same_layout(x, y);
  Amplitude sum = 0.0;
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    sum += std::conj(x[i]) * y[i];
  }
  return sum;
}

bool equals_up_to_global_phase(const StateVector& x, const StateVector& y, double tol) {
  require_same_layout(x, y);
  std::size_t pivot = 0;
  double largest = -1.0;
  for (std::size_t i = 0; i < y.dimension(); ++i) {
    if (std::abs(y[i]) > largest) {
      largest = std::abs(y[i]);
      pivot = i;
    }
  }
  Amplitude phase = 1.0;
  if (largest > 0.0 && std::abs(x[pivot]) > 0.0) {
    const Amplitude ratio = x[pivot] / y[pivot];
    phase = ratio / std::abs(ratio);
  }
  double diff = 0.0;
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    diff += std::norm(x[i] - phase * y[i]);
  }
  return std::sqrt(diff) <= tol;
}

StateVector normalize(const StateVector& x) {
  const double n = x.norm();
  if (n == 0.0) {
    throw DegenerateStateError("cannot normalize the zero vector");
  }
  return x.scaled(1.0 / n);
}

RegisterLayout concat(const RegisterLayout& x, const RegisterLayout& y) {
  std::vector<Register> regs(x.registers().begin(), x.registers().end());
  regs.insert(regs.end(), y.registers().begin(), y.registers().end());
  return RegisterLayout(std::move(regs));
}

StateVector tensor(const StateVector& x, const StateVector& y) {
  RegisterLayout layout = concat(x.layout(), y.layout());
  std::vector<Amplitude> amps(layout.dimension());
  const std::size_t low = y.dimension();
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    if (x[i] == Amplitude{}) {
      continue;
    }
    for (std::size_t j = 0; j < low; ++j) {
      amps[i * low + j] = x[i] * y[j];
    }
  }
  return StateVector(std::move(layout), std::move(amps));
}

nlohmann::json dump_state(const StateVector& state) {
  auto out = nlohmann::json::array();
  const auto& layout = state.layout();
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    const Amplitude amp = state[i];
    if (std::abs(amp) <= kDumpThreshold) {
      continue;
    }
    nlohmann::json label = nlohmann::json::object();
    for (const auto& reg : layout.registers()) {
      label[reg.name] = layout.value_at(i, reg.name);
    }
    out.push_back({{"label", std::move(label)}, {"re", amp.real()}, {"im", amp.imag()}});
  }
  return out;
}

StateVector load_state(const RegisterLayout& layout, const nlohmann::json& dump) {
  if (!dump.is_array()) {
    throw StructuralError("state dump must be a JSON array");
  }
  std::vector<Amplitude> amps(layout.dimension());
  for (const auto& rec : dump) {
    BasisLabel label;
    for (const auto& [name, value] : rec.at("label").items()) {
      label.emplace(name, value.get<std::uint64_t>());
    }
    amps[layout.encode(label)] += Amplitude(rec.at("re").get<double>(), rec.at("im").get<double>());
  }
  return StateVector(layout, std::move(amps));
}

nlohmann::json layout_to_json(const RegisterLayout& layout) {
  auto out = nlohmann::json::array();
  for (const auto& reg : layout.registers()) {
    out.push_back({{"name", reg.name}, {"width", reg.width}});
  }
  return out;
}

}  // namespace dis
