#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "dis/algorithms.hpp"
#include "dis/errors.hpp"
#include "dis/gates.hpp"
#include "dis/measurement.hpp"
#include "support/brute_force.hpp"

namespace dis {
namespace {

using testing::Vec;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector random_state(const RegisterLayout& layout, std::mt19937_64& gen) {
  return StateVector(layout, testing::random_unit_vector(layout.dimension(), gen));
}

std::vector<unsigned> widths_of(const RegisterLayout& layout) {
  std::vector<unsigned> w;
  for (const auto& r : layout.registers()) w.push_back(r.width);
  return w;
}

void expect_close(const StateVector& got, const Vec& want, double tol = 1e-12) {
  ASSERT_EQ(got.dimension(), want.size());
  EXPECT_LE(testing::distance(want, got.amplitudes()), tol);
}

void expect_same(const StateVector& got, const StateVector& want, double tol = 1e-12) {
  ASSERT_TRUE(got.layout() == want.layout());
  EXPECT_LE(testing::distance(Vec(want.amplitudes().begin(), want.amplitudes().end()),
                              got.amplitudes()),
            tol);
}

StateVector minus_v(const RegisterLayout& layout, const BasisLabel& rest) {
  BasisLabel zero = rest, one = rest;
  zero["v"] = 0;
  one["v"] = 1;
  return StateVector::from_terms(layout, {{zero, kInvSqrt2}, {one, -kInvSqrt2}});
}

TEST(Hadamard, SingleQubitRules) {
  RegisterLayout q({{"a", 1}});
  expect_close(hadamard(make_basis_state(q, {{"a", 0}}), "a"), {kInvSqrt2, kInvSqrt2});
  expect_close(hadamard(make_basis_state(q, {{"a", 1}}), "a"), {kInvSqrt2, -kInvSqrt2});
}

TEST(Hadamard, UniformOnTwoQubitRegister) {
  RegisterLayout layout({{"a", 2}, {"v", 2}});
  const auto t1 = hadamard(make_basis_state(layout, {{"a", 0}, {"v", 0}}), "a");
  const auto expected = StateVector::from_terms(layout, {{{{"a", 0}, {"v", 0}}, 0.5},
                                                         {{{"a", 1}, {"v", 0}}, 0.5},
                                                         {{{"a", 2}, {"v", 0}}, 0.5},
                                                         {{{"a", 3}, {"v", 0}}, 0.5}});
  expect_same(t1, expected);
}

TEST(Hadamard, SignLawUpToSixQubits) {
  for (unsigned w = 1; w <= 6; ++w) {
    RegisterLayout layout({{"a", w}});
    const std::size_t n = std::size_t{1} << w;
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::uint64_t xbar = 0; xbar < n; ++xbar) {
      const auto out = hadamard(make_basis_state(layout, {{"a", xbar}}), "a");
      for (std::uint64_t z = 0; z < n; ++z) {
        const double want = testing::gf2_dot(xbar, z) ? -s : s;
        ASSERT_NEAR(std::abs(out[z] - want), 0.0, 1e-12) << "w=" << w << " x=" << xbar;
      }
    }
  }
}

TEST(Hadamard, MatchesDenseOperatorOnOneRegister) {
  std::mt19937_64 gen(21);
  RegisterLayout layout({{"m", 2}, {"a", 3}, {"v", 1}});
  const auto psi = random_state(layout, gen);
  const auto dense = testing::embed(widths_of(layout), 1, testing::hadamard_matrix(3));
  expect_close(hadamard(psi, "a"),
               testing::matvec(dense, Vec(psi.amplitudes().begin(), psi.amplitudes().end())));
}

TEST(Qft, ZeroGoesToPositiveUniform) {
  for (unsigned w = 1; w <= 5; ++w) {
    RegisterLayout layout({{"a", w}});
    const auto out = qft(make_basis_state(layout, {{"a", 0}}), "a");
    const double s = 1.0 / std::sqrt(static_cast<double>(out.dimension()));
    for (std::size_t z = 0; z < out.dimension(); ++z) {
      EXPECT_NEAR(out[z].real(), s, 1e-12);
      EXPECT_NEAR(out[z].imag(), 0.0, 1e-12);
    }
  }
}

TEST(Qft, MatchesDenseDftAndInverts) {
  std::mt19937_64 gen(23);
  RegisterLayout layout({{"a", 4}, {"v", 2}});
  const auto psi = random_state(layout, gen);
  const auto dense = testing::embed(widths_of(layout), 0, testing::dft_matrix(4));
  expect_close(qft(psi, "a"),
               testing::matvec(dense, Vec(psi.amplitudes().begin(), psi.amplitudes().end())));
  expect_same(inverse_qft(qft(psi, "a"), "a"), psi);
  expect_same(qft(inverse_qft(psi, "a"), "a"), psi);
}

TEST(Qft, CombOfPeriodFourHasSupportOnMultiplesOfFour) {
  // Frozen from the brute-force 16-point DFT of |1> + |5> + |9> + |13>.
  const Vec comb = [] {
    Vec v(16);
    for (std::size_t x = 1; x < 16; x += 4) v[x] = 0.5;
    return v;
  }();
  const auto reference = testing::matvec(testing::dft_matrix(4), comb);
  std::set<std::size_t> oracle_support;
  for (std::size_t z = 0; z < 16; ++z) {
    if (std::abs(reference[z]) > 1e-12) oracle_support.insert(z);
  }
  ASSERT_EQ(oracle_support, (std::set<std::size_t>{0, 4, 8, 12}));

  RegisterLayout layout({{"a", 4}});
  const auto out = qft(StateVector(layout, comb), "a");
  std::set<std::size_t> support;
  for (std::size_t z = 0; z < 16; ++z) {
    if (std::abs(out[z]) > 1e-12) support.insert(z);
  }
  EXPECT_EQ(support, (std::set<std::size_t>{0, 4, 8, 12}));
}

TEST(FunctionXor, DeutschTableAndSelfInverse) {
  RegisterLayout layout({{"a", 1}, {"v", 1}});
  const auto f01 = deutsch_family()[1];
  const auto out = apply_function_xor(make_basis_state(layout, {{"a", 1}, {"v", 0}}), f01, "a", "v");
  EXPECT_EQ(out.amplitude({{"a", 1}, {"v", 1}}), Amplitude(1.0));

  std::mt19937_64 gen(25);
  Rng rng(3);
  const auto oracle = build_two_to_one(3, 5, rng, TwoToOneFamily::xor_spaced);
  RegisterLayout big({{"a", 3}, {"v", 3}});
  const auto psi = random_state(big, gen);
  expect_same(apply_function_xor(apply_function_xor(psi, oracle, "a", "v"), oracle, "a", "v"), psi);
}

TEST(FunctionXor, PhaseKickback) {
  std::mt19937_64 gen(27);
  RegisterLayout layout({{"a", 1}, {"v", 1}});
  const auto minus = testing::Vec{kInvSqrt2, -kInvSqrt2};
  for (const auto& f : deutsch_family()) {
    const auto control = testing::random_unit_vector(2, gen);
    // Reference: dense permutation |x>|y> -> |x>|y ^ f(x)> on control (x) minus.
    const auto input = testing::kron({control}, {minus})[0];
    const auto dense = testing::function_matrix(1, 1, [&](auto x, auto y) { return y ^ f(x); });
    const auto want = testing::matvec(dense, input);
    // Kickback form: (-1)^{f(x)} c_x |x> (x) minus.
    for (std::uint64_t x = 0; x < 2; ++x) {
      for (std::uint64_t y = 0; y < 2; ++y) {
        const double sign = f(x) ? -1.0 : 1.0;
        ASSERT_NEAR(std::abs(want[x * 2 + y] - sign * control[x] * minus[y]), 0.0, 1e-14);
      }
    }
    expect_close(apply_function_xor(StateVector(layout, input), f, "a", "v"), want);
  }
}

TEST(FunctionAdd, N2R2StateBeforeMeasurement) {
  const std::vector<std::uint64_t> values{0, 1};
  const auto oracle = build_two_to_one(2, 2, values, TwoToOneFamily::arith_spaced);
  RegisterLayout layout({{"a", 2}, {"v", 2}});
  const auto t1 = hadamard(make_basis_state(layout, {{"a", 0}, {"v", 0}}), "a");
  const auto t2 = apply_function_add(t1, oracle, "a", "v");
  const auto expected = StateVector::from_terms(layout, {{{{"a", 0}, {"v", 0}}, 0.5},
                                                        {{{"a", 1}, {"v", 1}}, 0.5},
                                                        {{{"a", 2}, {"v", 0}}, 0.5},
                                                        {{{"a", 3}, {"v", 1}}, 0.5}});
  EXPECT_TRUE(equals_up_to_global_phase(t2, expected, 1e-12));
  expect_same(t2, apply_function_xor(t1, oracle, "a", "v"));
}

TEST(FunctionAdd, ModexpOnUniformRegister) {
  const auto oracle = build_modexp(7, 15, 4);
  RegisterLayout layout({{"a", 4}, {"v", 4}});
  const auto uniform = hadamard(make_basis_state(layout, {{"a", 0}, {"v", 0}}), "a");
  const auto out = apply_function_add(uniform, oracle, "a", "v");
  // Classical table by repeated multiplication.
  std::vector<std::pair<BasisLabel, Amplitude>> terms;
  std::uint64_t value = 1;
  for (std::uint64_t x = 0; x < 16; ++x) {
    terms.push_back({{{"a", x}, {"v", value}}, 0.25});
    value = value * 7 % 15;
  }
  expect_same(out, StateVector::from_terms(layout, terms));
}

TEST(FunctionAdd, ModularWrapMatchesDensePermutation) {
  std::mt19937_64 gen(29);
  Rng rng(5);
  const auto oracle = build_two_to_one(2, 1, rng, TwoToOneFamily::xor_spaced);
  RegisterLayout layout({{"a", 2}, {"v", 2}});
  const auto psi = random_state(layout, gen);
  const auto dense =
      testing::function_matrix(2, 2, [&](auto x, auto y) { return (y + oracle(x)) % 4; });
  expect_close(apply_function_add(psi, oracle, "a", "v"),
               testing::matvec(dense, Vec(psi.amplitudes().begin(), psi.amplitudes().end())));
}

TEST(FunctionGates, WidthMismatch) {
  RegisterLayout layout({{"a", 2}, {"v", 1}});
  const auto psi = make_basis_state(layout, {{"a", 0}, {"v", 0}});
  const auto f = deutsch_family()[1];
  EXPECT_THROW(apply_function_xor(psi, f, "a", "v"), StructuralError);
  EXPECT_THROW(apply_function_add(psi, f, "a", "v"), StructuralError);
  EXPECT_THROW(apply_function_xor(psi, kronecker_family(2)[0], "a", "a"), StructuralError);
  EXPECT_THROW(hadamard(psi, "x"), StructuralError);
  EXPECT_THROW(qft(psi, "x"), StructuralError);
  EXPECT_THROW(grover_diffusion(psi, "x"), StructuralError);
}

TEST(Diffusion, UniformFixedAndOneIterationFindsTwo) {
  RegisterLayout layout({{"a", 2}});
  const auto s = hadamard(make_basis_state(layout, {{"a", 0}}), "a");
  expect_same(grover_diffusion(s, "a"), s);

  // Dense reference: D = 2|s><s| - I, O = diag(1, 1, -1, 1); D O s.
  testing::Mat d(4, Vec(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d[i][j] = 0.5 - (i == j ? 1.0 : 0.0);
  testing::Mat o = testing::identity(4);
  o[2][2] = -1.0;
  const auto want = testing::matvec(d, testing::matvec(o, Vec(4, 0.5)));
  ASSERT_LE(testing::distance(want, Vec{0, 0, 1, 0}), 1e-15);

  // Library: phase oracle via XOR kickback on v, then diffusion.
  RegisterLayout av({{"a", 2}, {"v", 1}});
  const auto prepared = hadamard(minus_v(av, {{"a", 0}}), "a");
  const auto marked = apply_function_xor(prepared, kronecker_family(2)[2], "a", "v");
  const auto out = grover_diffusion(marked, "a");
  expect_same(out, minus_v(av, {{"a", 2}}));
}

TEST(Diffusion, ReflectionGatesMatchDenseDiffusion) {
  std::mt19937_64 gen(31);
  RegisterLayout av({{"a", 2}, {"v", 1}});
  // Random a-register amplitude times the minus ancilla.
  const auto control = testing::random_unit_vector(4, gen);
  std::vector<std::pair<BasisLabel, Amplitude>> terms;
  for (std::uint64_t x = 0; x < 4; ++x) {
    terms.push_back({{{"a", x}, {"v", 0}}, control[x] * kInvSqrt2});
    terms.push_back({{{"a", x}, {"v", 1}}, -control[x] * kInvSqrt2});
  }
  const auto psi = StateVector::from_terms(av, terms);
  auto via_gates = psi;
  for (const auto& g : grover_reflection_gates("a", "v", 2)) via_gates = apply_gate(via_gates, g);
  expect_same(via_gates, grover_diffusion(psi, "a"));
}

TEST(Controlled, SharpModeActsAsPlainOracle) {
  std::mt19937_64 gen(33);
  RegisterLayout mav({{"m", 2}, {"a", 1}, {"v", 1}});
  RegisterLayout av({{"a", 1}, {"v", 1}});
  const auto family = deutsch_family();
  const auto local = random_state(av, gen);
  const auto mode = make_basis_state(RegisterLayout({{"m", 2}}), {{"m", 1}});
  const auto out = apply_function_xor_controlled(tensor(mode, local), family, "m", "a", "v");
  expect_same(out, tensor(mode, apply_function_xor(local, family[1], "a", "v")));
}

TEST(Controlled, DeutschExtendedPhaseKickback) {
  RegisterLayout mav({{"m", 2}, {"a", 1}, {"v", 1}});
  // (1/4) sum_k |k>_m (|0> + |1>)_a (|0> - |1>)_v.
  std::vector<std::pair<BasisLabel, Amplitude>> uniform_t1;
  for (std::uint64_t k = 0; k < 4; ++k)
    for (std::uint64_t x = 0; x < 2; ++x)
      for (std::uint64_t y = 0; y < 2; ++y)
        uniform_t1.push_back({{{"m", k}, {"a", x}, {"v", y}}, (y ? -0.25 : 0.25)});
  const auto t1 = StateVector::from_terms(mav, uniform_t1);
  const auto t3 = hadamard(apply_function_xor_controlled(t1, deutsch_family(), "m", "a", "v"), "a");

  const double c = 1.0 / (2.0 * std::sqrt(2.0));
  std::vector<std::pair<BasisLabel, Amplitude>> kicked_t3;
  const std::vector<std::tuple<std::uint64_t, std::uint64_t, double>> mode_terms{
      {0, 0, 1.0}, {3, 0, -1.0}, {1, 1, 1.0}, {2, 1, -1.0}};
  for (const auto& [k, a, sign] : mode_terms) {
    kicked_t3.push_back({{{"m", k}, {"a", a}, {"v", 0}}, sign * c});
    kicked_t3.push_back({{{"m", k}, {"a", a}, {"v", 1}}, -sign * c});
  }
  EXPECT_TRUE(equals_up_to_global_phase(t3, StateVector::from_terms(mav, kicked_t3), 1e-12));
}

TEST(Controlled, Errors) {
  RegisterLayout wrong_mode({{"m", 1}, {"a", 1}, {"v", 1}});
  const auto psi = make_basis_state(wrong_mode, {{"m", 0}, {"a", 0}, {"v", 0}});
  EXPECT_THROW(apply_function_xor_controlled(psi, deutsch_family(), "m", "a", "v"), StructuralError);

  // Three oracles on a 2-bit mode register: mode 3 has no oracle.
  auto family = deutsch_family();
  family.pop_back();
  RegisterLayout mav({{"m", 2}, {"a", 1}, {"v", 1}});
  const auto bad = make_basis_state(mav, {{"m", 3}, {"a", 0}, {"v", 0}});
  EXPECT_THROW(apply_function_xor_controlled(bad, family, "m", "a", "v"), StructuralError);
  const auto ok = make_basis_state(mav, {{"m", 2}, {"a", 0}, {"v", 0}});
  EXPECT_NO_THROW(apply_function_xor_controlled(ok, family, "m", "a", "v"));
}

TEST(RegisterPhase, AppliesPerValuePhase) {
  RegisterLayout layout({{"m", 1}});
  const auto s = hadamard(make_basis_state(layout, {{"m", 0}}), "m");
  const std::vector<double> phases{0.0, 1.25};
  const auto out = apply_register_phase(s, "m", phases);
  EXPECT_NEAR(std::abs(out[1] - std::polar(kInvSqrt2, 1.25)), 0.0, 1e-15);
  EXPECT_THROW(apply_register_phase(s, "m", std::vector<double>{0.0}), StructuralError);
}

class GateProperties : public ::testing::TestWithParam<int> {};

std::vector<GateSpec> sample_gates() {
  Rng rng(41);
  return {GateSpec::hadamard("a"),
          GateSpec::qft("a"),
          GateSpec::inverse_qft("v"),
          GateSpec::diffusion("a"),
          GateSpec::function_xor(build_two_to_one(2, 3, rng, TwoToOneFamily::xor_spaced), "a", "v"),
          GateSpec::function_add(build_two_to_one(2, 1, rng, TwoToOneFamily::arith_spaced), "a", "v"),
          GateSpec::function_add(build_modexp(2, 3, 2), "a", "v"),
          GateSpec::phase("v", {0.1, 0.2, 0.3, 0.4})};
}

TEST(GateProperties, UnitarityAndNormPreservation) {
  std::mt19937_64 gen(43);
  RegisterLayout layout({{"a", 2}, {"v", 2}});
  for (const auto& gate : sample_gates()) {
    for (int i = 0; i < 10; ++i) {
      const auto psi = random_state(layout, gen);
      const auto phi = random_state(layout, gen);
      const auto gpsi = apply_gate(psi, gate);
      const auto gphi = apply_gate(phi, gate);
      EXPECT_NEAR(std::abs(inner_product(gpsi, gphi) - inner_product(psi, phi)), 0.0, 1e-12)
          << gate_kind_name(gate.kind);
      EXPECT_NEAR(gpsi.norm(), 1.0, 1e-12);
    }
  }
}

TEST(GateProperties, SelfInverse) {
  std::mt19937_64 gen(47);
  RegisterLayout layout({{"a", 3}, {"v", 3}});
  Rng rng(7);
  const auto oracle = build_two_to_one(3, 6, rng, TwoToOneFamily::xor_spaced);
  for (int i = 0; i < 10; ++i) {
    const auto psi = random_state(layout, gen);
    expect_same(hadamard(hadamard(psi, "a"), "a"), psi);
    expect_same(grover_diffusion(grover_diffusion(psi, "v"), "v"), psi);
    expect_same(apply_function_xor(apply_function_xor(psi, oracle, "a", "v"), oracle, "a", "v"), psi);
  }
}

TEST(GateProperties, LocalityOnProductStates) {
  std::mt19937_64 gen(53);
  RegisterLayout a({{"a", 2}});
  RegisterLayout v({{"v", 2}});
  for (const auto& kind : {GateSpec::hadamard("a"), GateSpec::qft("a"), GateSpec::diffusion("a")}) {
    const auto left = random_state(a, gen);
    const auto right = random_state(v, gen);
    const auto out = apply_gate(tensor(left, right), kind);
    // Still a product with the same v factor.
    EXPECT_EQ(schmidt_rank(out, {"a"}, {"v"}), 1u);
    const auto expected_left = apply_gate(left, kind);
    expect_same(out, tensor(expected_left, right));
  }
}

TEST(GateSpecJson, SerializesKindTargetsAndOracle) {
  const auto gate = GateSpec::function_xor(deutsch_family()[2], "a", "v");
  const auto doc = gate_to_json(gate);
  EXPECT_EQ(doc["kind"], "function_xor");
  EXPECT_EQ(doc["targets"], nlohmann::json({"a", "v"}));
  EXPECT_EQ(doc["oracles"][0]["table"], nlohmann::json({1, 0}));
  EXPECT_TRUE(doc["is_query"].get<bool>());
}

}  // namespace
}  // namespace dis
