#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wignerlab/consistency.hpp"
#include "wignerlab/errors.hpp"
#include "wignerlab/mixtures.hpp"
#include "wignerlab/scenario.hpp"

using namespace wignerlab;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double closed_form_weight(double theta, std::size_t alice, std::size_t bob) {
  // Pairings {up,up / up,down / down,up / down,down} of the triplet pair:
  // {s^2/2, c^2/2, c^2/2, s^2/2} with s = sin(theta/2), c = cos(theta/2).
  const double s2 = std::sin(theta / 2) * std::sin(theta / 2);
  const double c2 = std::cos(theta / 2) * std::cos(theta / 2);
  return alice == bob ? 0.5 * s2 : 0.5 * c2;
}

}  // namespace

TEST_CASE("built-in scenarios validate cleanly") {
  for (const auto& name : builtin_scenario_names()) {
    BuiltinParams params;
    params.theta = 0.4;
    params.n_env = 3;
    const Scenario scenario = build_builtin(name, params);
    CHECK(validate_scenario(scenario).empty());
  }
  CHECK(build_decoherence_demo(0).name == "molecule_toy");
  CHECK(structurally_equal(build_decoherence_demo(0), build_molecule_toy()));
  CHECK_THROWS_AS(build_decoherence_demo(11), Error);
}

TEST_CASE("epr_bell joint distribution matches the closed form") {
  // Closed form verified once against the brute-force projector oracle,
  // then swept across 32 angles.
  {
    const double theta = 1.234;
    const Scenario scenario = build_epr_bell(theta);
    PureState initial = initial_state(scenario);
    MeasurementBasis z = make_basis(scenario.reg, {"A"}, BasisSpec::computational());
    MeasurementBasis tilted = make_basis(scenario.reg, {"B"}, BasisSpec::spin(theta));

    // Joint probabilities by explicit two-step projection via the oracle.
    for (std::size_t alice = 0; alice < 2; ++alice) {
      for (std::size_t bob = 0; bob < 2; ++bob) {
        const Matrix pa =
            oracle::embed_on_targets(scenario.reg, {"A"}, z.dense_projector(alice));
        const Matrix pb =
            oracle::embed_on_targets(scenario.reg, {"B"}, tilted.dense_projector(bob));
        const Vector projected = pb * (pa * initial.amps());
        CHECK(projected.squaredNorm() ==
              doctest::Approx(closed_form_weight(theta, alice, bob)).epsilon(1e-9));
      }
    }
  }

  for (int step = 0; step < 32; ++step) {
    const double theta = 2.0 * M_PI * step / 32.0;
    const Scenario scenario = build_epr_bell(theta);
    const BranchHistory history =
        evolve_branches(scenario, Policy::collapse_at({"Alice", "Bob"}));
    const CheckValue joint = evaluate_check(scenario, scenario.checks[0], history.final_branches());
    REQUIRE(joint.distribution.size() == 4);
    const std::vector<std::pair<std::size_t, std::size_t>> pairings = {
        {0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(joint.distribution[k].second ==
            doctest::Approx(closed_form_weight(theta, pairings[k].first, pairings[k].second))
                .epsilon(1e-9));
    }
  }
}

TEST_CASE("epr_bell theta=0 and theta=pi/2 frozen values") {
  {
    const Scenario scenario = build_epr_bell(0.0);
    const BranchHistory history =
        evolve_branches(scenario, Policy::collapse_at({"Alice", "Bob"}));
    const CheckValue joint = evaluate_check(scenario, scenario.checks[0], history.final_branches());
    CHECK(joint.distribution[0].second == doctest::Approx(0.0).epsilon(1e-12));  // up,up
    CHECK(joint.distribution[1].second == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(joint.distribution[2].second == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(joint.distribution[3].second == doctest::Approx(0.0).epsilon(1e-12));
  }
  {
    const Scenario scenario = build_epr_bell(M_PI / 2.0);
    const BranchHistory history =
        evolve_branches(scenario, Policy::collapse_at({"Alice", "Bob"}));
    const CheckValue joint = evaluate_check(scenario, scenario.checks[0], history.final_branches());
    for (const auto& [label, p] : joint.distribution) {
      CHECK(p == doctest::Approx(0.25).epsilon(1e-9));
    }
  }

  // The pure state keeps P(s = 1) = 1 at every angle.
  for (double theta : {0.0, 0.7, 2.1}) {
    const Scenario scenario = build_epr_bell(theta);
    auto value = definite_value(initial_state(scenario), total_spin_squared(scenario.reg));
    REQUIRE(value.has_value());
    CHECK(spin_from_eigenvalue(*value) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("wigners_friend produces the entangled lab state") {
  const Scenario scenario = build_wigners_friend();
  const BranchHistory history = evolve_branches(scenario, Policy::unitary_only());

  // After both correlation unitaries: two amplitudes 1/sqrt(2).
  const std::vector<Branch>& after = history.per_event[3];
  REQUIRE(after.size() == 1);
  const PureState& lab = after.front().state;
  CHECK(std::abs(lab.amp(0).real() - kInvSqrt2) < 1e-12);
  CHECK(std::abs(lab.amp(7).real() - kInvSqrt2) < 1e-12);
  for (std::size_t i = 1; i < 7; ++i) CHECK(std::abs(lab.amp(i)) < 1e-12);

  // Final marginal on S is fully mixed, friend's own measurement included.
  DensityOperator marginal = partial_trace(history.final_branches().front().state, {"D", "F"});
  DensityOperator maximal = DensityOperator::from_matrix(
      make_register({{"S", 2}}), 0.5 * Matrix::Identity(2, 2), Provenance::proper("reference"));
  CHECK(trace_distance(marginal, maximal) < 1e-12);

  // The initial state is a product state: every single-subsystem marginal is pure.
  PureState initial = initial_state(scenario);
  for (const auto& sub : scenario.reg.subsystems()) {
    std::vector<std::string> discard;
    for (const auto& other : scenario.reg.subsystems()) {
      if (other.label != sub.label) discard.push_back(other.label);
    }
    CHECK(partial_trace(initial, discard).purity() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("molecule_toy reaches the Bell state before the readout") {
  const Scenario scenario = build_molecule_toy();
  const BranchHistory history = evolve_branches(scenario, Policy::unitary_only());

  // After the correlation unitary: |PhiPlus> ⊗ |0>_C.
  const PureState& state = history.per_event[1].front().state;
  CHECK(std::abs(state.amp(0).real() - kInvSqrt2) < 1e-12);  // |00,0>
  CHECK(std::abs(state.amp(6).real() - kInvSqrt2) < 1e-12);  // |11,0>
  for (std::size_t i : {1, 2, 3, 4, 5, 7}) CHECK(std::abs(state.amp(i)) < 1e-12);
}

TEST_CASE("validate_scenario reports every structural problem") {
  CHECK(validate_scenario(build_molecule_toy()).empty());

  Scenario broken = build_molecule_toy();
  std::get<SignalEvent>(broken.events[3]).record = "nosuch";
  auto issues = validate_scenario(broken);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].message.find("unknown record") != std::string::npos);

  Scenario duplicated = build_molecule_toy();
  std::get<MeasureEvent>(duplicated.events[2]).record = "mF";
  issues = validate_scenario(duplicated);
  bool found_duplicate = false;
  for (const auto& issue : issues) {
    found_duplicate = found_duplicate || issue.message.find("duplicate record") != std::string::npos;
  }
  CHECK(found_duplicate);

  // The error list is exhaustive, not first-failure.
  Scenario multi = build_molecule_toy();
  std::get<SignalEvent>(multi.events[3]).record = "nosuch";
  std::get<MeasureEvent>(multi.events[1]).agent = "nobody";
  multi.checks[0].agents.push_back("ghost");
  issues = validate_scenario(multi);
  CHECK(issues.size() >= 3);
}

TEST_CASE("commuting events may be reordered without changing checks") {
  // Two disjoint-target unitaries with no record dependency.
  Scenario scenario = build_molecule_toy();
  scenario.events.insert(scenario.events.begin(),
                         UnitaryEvent{UnitarySpec::named("HADAMARD"), {"C"}});
  scenario.events.insert(scenario.events.begin(),
                         UnitaryEvent{UnitarySpec::named("HADAMARD"), {"C"}});
  // events[0], events[1] act on C; events[2] is the A,B correlation.
  Scenario swapped = scenario;
  std::swap(swapped.events[1], swapped.events[2]);

  for (const Policy& policy : {Policy::unitary_only(), Policy::collapse_at({"F"})}) {
    const ConsistencyReport a = check_scenario(scenario, {policy});
    const ConsistencyReport b = check_scenario(swapped, {policy});
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t c = 0; c < a.checks.size(); ++c) {
      const auto& ea = a.checks[c].entries;
      const auto& eb = b.checks[c].entries;
      REQUIRE(ea.size() == eb.size());
      for (std::size_t k = 0; k < ea.size(); ++k) {
        CHECK(value_gap(ea[k].value, eb[k].value) < 1e-9);
      }
    }
  }
}

TEST_CASE("total spin squared matrix has the exact two-qubit spectrum") {
  Operator s2 = total_spin_squared(make_register({{"A", 2}, {"B", 2}}));
  // Rows: diag(2,1,1,2) with the off-diagonal pair coupling |01>,|10>.
  CHECK(s2.matrix()(0, 0).real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s2.matrix()(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s2.matrix()(1, 2).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s2.matrix()(3, 3).real() == doctest::Approx(2.0).epsilon(1e-12));

  auto eigenvalues = oracle::hermitian_eigenvalues(s2.matrix());
  std::sort(eigenvalues.begin(), eigenvalues.end());
  CHECK(eigenvalues.front() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(eigenvalues.back() == doctest::Approx(2.0).epsilon(1e-9));
}
