#include <cmath>
#include <functional>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "dis/algorithms.hpp"
#include "dis/measurement.hpp"

namespace dis::cli {

namespace {

using json = nlohmann::json;
using Terms = std::vector<std::pair<BasisLabel, Amplitude>>;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kEighth = 1.0 / (2.0 * std::sqrt(2.0));  // 1 / (2 sqrt 2)

constexpr double kStateTol = 1e-12;
constexpr double kSolverTol = 1e-10;

struct Check {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;

  bool pass() const { return residual <= tol; }
};

// ||got - c want|| with the best unit-modulus c.
double phase_residual(const StateVector& got, const StateVector& want) {
  const Amplitude overlap = inner_product(want, got);
  const Amplitude c = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Amplitude(1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < got.dimension(); ++i) {
    sum += std::norm(got[i] - c * want[i]);
  }
  return std::sqrt(sum);
}

// terms (x) (|0> - |1>)_v
StateVector times_minus(const RegisterLayout& layout, const Terms& terms) {
  Terms out;
  for (const auto& [label, c] : terms) {
    auto zero = label, one = label;
    zero["v"] = 0;
    one["v"] = 1;
    out.push_back({zero, c});
    out.push_back({one, -c});
  }
  return StateVector::from_terms(layout, out);
}

FunctionOracle simon_n2_r2() {
  const std::vector<std::uint64_t> values{0, 1};
  return build_two_to_one(2, 2, values, TwoToOneFamily::arith_spaced);
}

FunctionOracle canonical_xor(unsigned n, std::uint64_t r) {
  std::vector<std::uint64_t> values(std::size_t{1} << (n - 1));
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = i;
  }
  return build_two_to_one(n, r, values, TwoToOneFamily::xor_spaced);
}

void simon_checks(std::vector<Check>& checks) {
  RegisterLayout av({{"a", 2}, {"v", 2}});
  Rng rng(0);
  const auto run = run_simon(simon_n2_r2(), rng, {.forced_f = 1});
  const auto& t = run.trace;
  checks.push_back({"simon.n2_r2.t1",
                    phase_residual(t.at("t1"), StateVector::from_terms(av, {{{{"a", 0}, {"v", 0}}, 0.5},
                                                                            {{{"a", 1}, {"v", 0}}, 0.5},
                                                                            {{{"a", 2}, {"v", 0}}, 0.5},
                                                                            {{{"a", 3}, {"v", 0}}, 0.5}})),
                    kStateTol});
  const auto entangled_state = StateVector::from_terms(av, {{{{"a", 0}, {"v", 0}}, 0.5},
                                                      {{{"a", 1}, {"v", 1}}, 0.5},
                                                      {{{"a", 2}, {"v", 0}}, 0.5},
                                                      {{{"a", 3}, {"v", 1}}, 0.5}});
  checks.push_back({"simon.n2_r2.t2", phase_residual(t.at("t2"), entangled_state), kStateTol});
  checks.push_back({"simon.n2_r2.t3",
                    phase_residual(t.at("t3"), StateVector::from_terms(av, {{{{"a", 1}, {"v", 1}}, kInvSqrt2},
                                                                            {{{"a", 3}, {"v", 1}}, kInvSqrt2}})),
                    kStateTol});
  // r = 2 (binary 10): only z = 0, 1 satisfy r.z = 0.
  const auto dist = outcome_distribution(t.at("t4"), "a");
  checks.push_back({"simon.n2_r2.z_support", dist.probability(2) + dist.probability(3), kStateTol});

  // Entanglement before and after the [v] measurement.
  const double rank_before = static_cast<double>(schmidt_rank(entangled_state, {"a"}, {"v"}));
  const double rank_after = static_cast<double>(schmidt_rank(t.at("t3"), {"a"}, {"v"}));
  checks.push_back({"simon.n2_r2.schmidt_rank", std::abs(rank_before - 2.0) + std::abs(rank_after - 1.0), 0.0});

  checks.push_back({"simon.n2_r2.deferred",
                    deferred_equivalence_check(simon_circuit(simon_n2_r2()), "v", "t2", "t4").max_abs_diff,
                    kStateTol});
  checks.push_back({"simon.n3_r5.deferred",
                    deferred_equivalence_check(simon_circuit(canonical_xor(3, 5)), "v", "t2", "t4").max_abs_diff,
                    kStateTol});
  checks.push_back({"simon.n4_r9.deferred",
                    deferred_equivalence_check(simon_circuit(canonical_xor(4, 9)), "v", "t2", "t4").max_abs_diff,
                    kStateTol});
}

void measurement_checks(std::vector<Check>& checks, std::uint64_t seed) {
  RegisterLayout av({{"a", 2}, {"v", 2}});
  const auto entangled_state = StateVector::from_terms(av, {{{{"a", 0}, {"v", 0}}, 0.5},
                                                      {{{"a", 1}, {"v", 1}}, 0.5},
                                                      {{{"a", 2}, {"v", 0}}, 0.5},
                                                      {{{"a", 3}, {"v", 1}}, 0.5}});
  for (std::uint64_t fbar : {0u, 1u}) {
    checks.push_back({"solver.n2_r2.f" + std::to_string(fbar),
                      phase_residual(solve_measurement_constraints(entangled_state, "v", fbar),
                                     normalize(project(entangled_state, {"v", fbar}))),
                      kSolverTol});
  }

  std::mt19937_64 gen(derive_seed(seed, 1));
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const unsigned wa = 1 + static_cast<unsigned>(i % 3);
    const unsigned wv = 1 + static_cast<unsigned>((i / 3) % 3);
    RegisterLayout layout({{"a", wa}, {"v", wv}});
    std::vector<Amplitude> amps(layout.dimension());
    for (auto& amp : amps) {
      amp = Amplitude(gauss(gen), gauss(gen));
    }
    const auto psi = normalize(StateVector(layout, amps));
    const std::uint64_t e = static_cast<std::uint64_t>(i) % (std::uint64_t{1} << wv);
    worst = std::max(worst, phase_residual(solve_measurement_constraints(psi, "v", e),
                                           normalize(project(psi, {"v", e}))));
  }
  checks.push_back({"solver.random100", worst, kSolverTol});

  const auto joint = tensor(entangled_state, make_basis_state(RegisterLayout({{"p", 2}}), {{"p", 0}}));
  const auto premeasured = von_neumann_premeasurement(joint, "v", "p");
  const auto born = outcome_distribution(entangled_state, "v");
  const auto pointer = outcome_distribution(premeasured, "p");
  double diff = 0.0;
  for (std::uint64_t y = 0; y < 4; ++y) {
    diff = std::max(diff, std::abs(pointer.probability(y) - born.probability(y)));
  }
  checks.push_back({"pointer.n2_r2", diff, kStateTol});
}

void deutsch_checks(std::vector<Check>& checks) {
  RegisterLayout av({{"a", 1}, {"v", 1}});
  // Printed step-c states: (k, a, sign).
  const std::array<std::tuple<unsigned, std::uint64_t, double>, 4> golden{
      {{0, 0, 1.0}, {1, 1, 1.0}, {2, 1, -1.0}, {3, 0, -1.0}}};
  Rng rng(0);
  for (const auto& [k, a, sign] : golden) {
    const auto run = run_deutsch(DeutschVariant::original, k, rng);
    const std::string name = "deutsch.original.k" + std::string{char('0' + (k >> 1)), char('0' + (k & 1))};
    checks.push_back({name + ".t3",
                      phase_residual(run.trace.at("t3"), times_minus(av, {{{{"a", a}}, sign * kInvSqrt2}})),
                      kStateTol});
    const bool correct = run.answer == a && run.trace.oracle_queries == 1;
    checks.push_back({name + ".answer", correct ? 0.0 : 1.0, 0.0});
  }

  RegisterLayout mav({{"m", 2}, {"a", 1}, {"v", 1}});
  Terms uniform_t1;
  for (std::uint64_t k = 0; k < 4; ++k) {
    for (std::uint64_t a = 0; a < 2; ++a) {
      uniform_t1.push_back({{{"m", k}, {"a", a}}, 0.25});
    }
  }
  const auto circuit = deutsch_extended_circuit();
  checks.push_back({"deutsch.extended.t1", phase_residual(run_until(circuit, "t1"), times_minus(mav, uniform_t1)),
                    kStateTol});
  const auto kicked_t3 = times_minus(mav, {{{{"m", 0}, {"a", 0}}, kEighth},
                                      {{{"m", 3}, {"a", 0}}, -kEighth},
                                      {{{"m", 1}, {"a", 1}}, kEighth},
                                      {{{"m", 2}, {"a", 1}}, -kEighth}});
  checks.push_back({"deutsch.extended.t3", phase_residual(run_until(circuit, "t3"), kicked_t3), kStateTol});
  checks.push_back({"deutsch.extended.deferred",
                    deferred_equivalence_check(circuit, "m", "t2", "t3").max_abs_diff, kStateTol});
}

void grover_checks(std::vector<Check>& checks) {
  RegisterLayout av({{"a", 2}, {"v", 1}});
  Rng rng(0);
  const auto run = run_grover2(GroverVariant::standard, 2u, rng);
  checks.push_back({"grover.standard.k2.t3",
                    phase_residual(run.trace.at("t3"), times_minus(av, {{{{"a", 2}}, kInvSqrt2}})), kStateTol});
  bool all = true;
  for (unsigned k = 0; k < 4; ++k) {
    all = all && run_grover2(GroverVariant::standard, k, rng).answer == k;
  }
  checks.push_back({"grover.standard.answers", all ? 0.0 : 1.0, 0.0});

  RegisterLayout mav({{"m", 2}, {"a", 2}, {"v", 1}});
  Terms ghz;
  for (std::uint64_t j = 0; j < 4; ++j) {
    ghz.push_back({{{"m", j}, {"a", j}}, kEighth});
  }
  const auto t3 = run_until(grover_extended_circuit(), "t3");
  checks.push_back({"grover.extended.t3", phase_residual(t3, times_minus(mav, ghz)), kStateTol});
  double stray = 0.0;
  for (const auto& [key, p] : joint_distribution(t3, {"m", "a"})) {
    if (key[0] != key[1]) {
      stray += p;
    }
  }
  checks.push_back({"grover.extended.agreement", stray, kStateTol});
}

void shor_checks(std::vector<Check>& checks) {
  Rng rng(0);
  const auto run = run_shor_period(7, 15, rng, {.a_width = 4, .forced_f = 7});
  const auto& t3 = run.trace.at("t3");
  std::set<std::uint64_t> support;
  for (std::size_t i = 0; i < t3.dimension(); ++i) {
    if (std::abs(t3[i]) > kStateTol) {
      support.insert(t3.layout().value_at(i, "a"));
    }
  }
  checks.push_back({"shor.7_15.support", support == std::set<std::uint64_t>{1, 5, 9, 13} ? 0.0 : 1.0, 0.0});
  checks.push_back({"shor.7_15.deferred",
                    deferred_equivalence_check(shor_circuit(7, 15, 4), "v", "t2", "t4").max_abs_diff,
                    kStateTol});
}

}  // namespace

CommandOutput cmd_verify(const RunConfig& config) {
  std::vector<Check> checks;
  simon_checks(checks);
  measurement_checks(checks, config.seed);
  deutsch_checks(checks);
  grover_checks(checks);
  shor_checks(checks);

  json list = json::array();
  std::size_t passed = 0;
  for (const auto& check : checks) {
    passed += check.pass() ? 1 : 0;
    list.push_back({{"name", check.name},
                    {"pass", check.pass()},
                    {"residual", check.residual},
                    {"tol", check.tol}});
  }
  const std::size_t failed = checks.size() - passed;
  json doc{{"command", "verify"},
           {"seed", config.seed},
           {"checks", std::move(list)},
           {"passed", passed},
           {"failed", failed}};
  return {doc.dump(2) + "\n", failed == 0 ? kExitOk : kExitVerification};
}

}  // namespace dis::cli
