#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "dis/errors.hpp"
#include "dis/hilbert.hpp"
#include "support/brute_force.hpp"

namespace dis {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

RegisterLayout av(unsigned n) { return RegisterLayout({{"a", n}, {"v", n}}); }

StateVector simon_n2_state() {
  return StateVector::from_terms(av(2), {{{{"a", 0}, {"v", 0}}, 0.5},
                                         {{{"a", 1}, {"v", 1}}, 0.5},
                                         {{{"a", 2}, {"v", 0}}, 0.5},
                                         {{{"a", 3}, {"v", 1}}, 0.5}});
}

StateVector random_state(const RegisterLayout& layout, std::mt19937_64& gen) {
  return StateVector(layout, testing::random_unit_vector(layout.dimension(), gen));
}

TEST(RegisterLayout, EncodesDeclarationOrderMostSignificantFirst) {
  RegisterLayout layout({{"m", 2}, {"a", 1}, {"v", 1}});
  EXPECT_EQ(layout.total_width(), 4u);
  EXPECT_EQ(layout.encode({{"m", 2}, {"a", 1}, {"v", 0}}), 10u);
  EXPECT_EQ(layout.shift("m"), 2u);
  EXPECT_EQ(layout.shift("v"), 0u);
  EXPECT_EQ(layout.value_at(9, "m"), 2u);
}

TEST(RegisterLayout, RejectsBadRegisters) {
  EXPECT_THROW(RegisterLayout({{"a", 1}, {"a", 2}}), StructuralError);
  EXPECT_THROW(RegisterLayout({{"a", 0}}), StructuralError);
  EXPECT_THROW(RegisterLayout(std::vector<Register>{}), StructuralError);
  EXPECT_THROW(RegisterLayout({{"a", 13}, {"v", 12}}), StructuralError);
  EXPECT_NO_THROW(RegisterLayout({{"a", 12}, {"v", 12}}));
}

TEST(RegisterLayout, WidthCapFollowsEnvironment) {
  ::setenv("DIS_WIDTH_CAP", "6", 1);
  EXPECT_EQ(width_cap(), 6u);
  EXPECT_THROW(RegisterLayout({{"a", 4}, {"v", 3}}), StructuralError);
  ::setenv("DIS_WIDTH_CAP", "garbage", 1);
  EXPECT_EQ(width_cap(), kDefaultWidthCap);
  ::unsetenv("DIS_WIDTH_CAP");
  EXPECT_EQ(width_cap(), kDefaultWidthCap);
}

TEST(RegisterLayout, LabelIndexRoundTrip) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Register> regs;
    unsigned total = 0;
    const unsigned count = 1 + gen() % 4;
    for (unsigned i = 0; i < count; ++i) {
      const unsigned w = 1 + gen() % 3;
      regs.push_back({"r" + std::to_string(i), w});
      total += w;
    }
    RegisterLayout layout(regs);
    for (std::size_t index = 0; index < layout.dimension(); ++index) {
      ASSERT_EQ(layout.encode(layout.decode(index)), index);
    }
  }
  // At the cap, sample instead of enumerating.
  RegisterLayout wide({{"m", 8}, {"a", 8}, {"v", 8}});
  for (int i = 0; i < 1000; ++i) {
    const std::size_t index = gen() % wide.dimension();
    ASSERT_EQ(wide.encode(wide.decode(index)), index);
  }
}

TEST(MakeBasisState, PreparationAndEncoding) {
  const auto prepared = make_basis_state(av(2), {{"a", 0}, {"v", 0}});
  EXPECT_EQ(prepared[0], Amplitude(1.0));
  EXPECT_DOUBLE_EQ(prepared.norm(), 1.0);

  const auto one = make_basis_state(RegisterLayout({{"a", 1}}), {{"a", 1}});
  EXPECT_EQ(one[1], Amplitude(1.0));
  EXPECT_EQ(one[0], Amplitude(0.0));

  const auto ten = make_basis_state(RegisterLayout({{"m", 2}, {"a", 1}, {"v", 1}}),
                                     {{"m", 2}, {"a", 1}, {"v", 0}});
  for (std::size_t i = 0; i < ten.dimension(); ++i) {
    EXPECT_EQ(ten[i], Amplitude(i == 10 ? 1.0 : 0.0));
  }
}

TEST(MakeBasisState, Errors) {
  EXPECT_THROW(make_basis_state(av(2), {{"a", 4}, {"v", 0}}), RangeError);
  EXPECT_THROW(make_basis_state(av(2), {{"a", 0}}), StructuralError);
  EXPECT_THROW(make_basis_state(av(2), {{"a", 0}, {"w", 0}}), StructuralError);
}

TEST(InnerProduct, NormalizationOrthogonalityAndN2R2) {
  std::mt19937_64 gen(3);
  const auto psi = random_state(av(2), gen);
  EXPECT_NEAR(std::abs(inner_product(psi, psi) - 1.0), 0.0, 1e-12);

  RegisterLayout q({{"a", 1}});
  EXPECT_EQ(inner_product(make_basis_state(q, {{"a", 0}}), make_basis_state(q, {{"a", 1}})),
            Amplitude(0.0));

  // Direct sum over the two shared nonzero amplitudes: 2 * (1/2)(1/sqrt2).
  const auto target = StateVector::from_terms(
      av(2), {{{{"a", 1}, {"v", 1}}, kInvSqrt2}, {{{"a", 3}, {"v", 1}}, kInvSqrt2}});
  const auto overlap = inner_product(simon_n2_state(), target);
  EXPECT_NEAR(overlap.real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(overlap.imag(), 0.0, 1e-15);
}

TEST(InnerProduct, ConjugateLinearInFirstArgumentAndBounded) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 20; ++i) {
    const auto x = random_state(av(2), gen);
    const auto y = random_state(av(2), gen);
    const Amplitude c(0.3, -1.7);
    const auto lhs = inner_product(x.scaled(c), y);
    const auto rhs = std::conj(c) * inner_product(x, y);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
    EXPECT_LE(std::abs(inner_product(x, y)), 1.0 + 1e-12);
  }
}

TEST(InnerProduct, LayoutMismatch) {
  const auto x = make_basis_state(av(1), {{"a", 0}, {"v", 0}});
  const auto y = make_basis_state(RegisterLayout({{"v", 1}, {"a", 1}}), {{"a", 0}, {"v", 0}});
  EXPECT_THROW(inner_product(x, y), StructuralError);
  EXPECT_THROW(equals_up_to_global_phase(x, y, 1e-12), StructuralError);
}

TEST(GlobalPhase, SignFlipAndOrthogonal) {
  std::mt19937_64 gen(7);
  const auto psi = random_state(av(2), gen);
  EXPECT_TRUE(equals_up_to_global_phase(psi, psi.scaled(-1.0), 1e-12));
  EXPECT_TRUE(equals_up_to_global_phase(psi, psi.scaled(std::polar(1.0, 0.77)), 1e-12));
  RegisterLayout q({{"a", 1}});
  EXPECT_FALSE(equals_up_to_global_phase(make_basis_state(q, {{"a", 0}}),
                                         make_basis_state(q, {{"a", 1}}), 1e-12));
  EXPECT_FALSE(equals_up_to_global_phase(psi, psi.scaled(0.5), 1e-12));
}

TEST(GlobalPhase, DeutschStepCStatesDifferBySign) {
  RegisterLayout layout({{"a", 1}, {"v", 1}});
  const auto plus = StateVector::from_terms(
      layout, {{{{"a", 1}, {"v", 0}}, kInvSqrt2}, {{{"a", 1}, {"v", 1}}, -kInvSqrt2}});
  const auto minus = plus.scaled(-1.0);
  EXPECT_TRUE(equals_up_to_global_phase(minus, plus, 1e-12));
}

TEST(GlobalPhase, EquivalenceRelationOnExactInputs) {
  std::mt19937_64 gen(9);
  const std::vector<Amplitude> phases{1.0, -1.0, Amplitude(0, 1), Amplitude(0, -1)};
  for (int i = 0; i < 10; ++i) {
    const auto psi = random_state(av(1), gen);
    for (const auto p : phases) {
      for (const auto q : phases) {
        const auto x = psi.scaled(p);
        const auto y = psi.scaled(q);
        EXPECT_TRUE(equals_up_to_global_phase(x, x, 1e-14));
        EXPECT_TRUE(equals_up_to_global_phase(x, y, 1e-14));
        EXPECT_TRUE(equals_up_to_global_phase(y, x, 1e-14));
      }
    }
  }
}

TEST(Normalize, ScalesAndIsIdempotent) {
  RegisterLayout q({{"a", 1}});
  const auto raw = StateVector::from_terms(q, {{{{"a", 0}}, 1.0}, {{{"a", 1}}, 1.0}});
  const auto unit = normalize(raw);
  EXPECT_NEAR(unit[0].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(unit[1].real(), kInvSqrt2, 1e-15);

  std::mt19937_64 gen(13);
  const auto psi = random_state(av(2), gen);
  const auto again = normalize(psi);
  for (std::size_t i = 0; i < psi.dimension(); ++i) {
    EXPECT_NEAR(std::abs(again[i] - psi[i]), 0.0, 1e-15);
  }
  EXPECT_THROW(normalize(StateVector(q, {0.0, 0.0})), DegenerateStateError);
}

TEST(Normalize, ProjectionGivesCollapsedState) {
  // sqrt(N/2) |1><1|_v applied by hand to state (1), then normalized.
  const auto s1 = simon_n2_state();
  std::vector<Amplitude> projected(s1.dimension());
  for (std::size_t i = 0; i < s1.dimension(); ++i) {
    if (s1.layout().value_at(i, "v") == 1) projected[i] = std::sqrt(2.0) * s1[i];
  }
  const auto s2 = normalize(StateVector(av(2), projected));
  const auto expected = StateVector::from_terms(
      av(2), {{{{"a", 1}, {"v", 1}}, kInvSqrt2}, {{{"a", 3}, {"v", 1}}, kInvSqrt2}});
  EXPECT_TRUE(equals_up_to_global_phase(s2, expected, 1e-12));
  EXPECT_NEAR(StateVector(av(2), projected).norm(), 1.0, 1e-15);
}

TEST(Tensor, ConcatenatesLayouts) {
  RegisterLayout a({{"a", 1}});
  RegisterLayout p({{"p", 2}});
  const auto joint = tensor(make_basis_state(a, {{"a", 1}}), make_basis_state(p, {{"p", 2}}));
  EXPECT_EQ(joint.layout().total_width(), 3u);
  EXPECT_EQ(joint.amplitude({{"a", 1}, {"p", 2}}), Amplitude(1.0));
  EXPECT_THROW(tensor(make_basis_state(a, {{"a", 1}}), make_basis_state(a, {{"a", 1}})),
               StructuralError);
}

TEST(Dump, FormatAndRoundTrip) {
  const auto s1 = simon_n2_state();
  const auto doc = dump_state(s1);
  ASSERT_EQ(doc.size(), 4u);
  EXPECT_EQ(doc[0]["label"]["a"], 0);
  EXPECT_EQ(doc[0]["label"]["v"], 0);
  EXPECT_EQ(doc[1]["label"]["a"], 1);
  EXPECT_EQ(doc[1]["label"]["v"], 1);
  EXPECT_DOUBLE_EQ(doc[3]["re"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(doc[3]["im"].get<double>(), 0.0);

  std::mt19937_64 gen(17);
  const auto psi = random_state(RegisterLayout({{"m", 2}, {"a", 1}, {"v", 2}}), gen);
  const auto back = load_state(psi.layout(), nlohmann::json::parse(dump_state(psi).dump()));
  for (std::size_t i = 0; i < psi.dimension(); ++i) {
    EXPECT_EQ(back[i], psi[i]);
  }
}

TEST(Dump, OmitsNegligibleAmplitudes) {
  RegisterLayout q({{"a", 1}});
  const auto doc = dump_state(StateVector(q, {1.0, 1e-15}));
  EXPECT_EQ(doc.size(), 1u);
}

}  // namespace
}  // namespace dis
