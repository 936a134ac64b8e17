#include <cmath>
#include <set>

#include "doctest.h"
#include "test_support.hpp"
#include "wignerlab/consistency.hpp"
#include "wignerlab/errors.hpp"
#include "wignerlab/mixtures.hpp"
#include "wignerlab/policies.hpp"

using namespace wignerlab;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("policy parsing and formatting") {
  CHECK(parse_policy("unitary_only").kind == Policy::Kind::UnitaryOnly);
  Policy two = parse_policy("collapse_at:Alice,Bob");
  CHECK(two.agents == std::vector<std::string>{"Alice", "Bob"});

  auto list = parse_policy_list("unitary_only,collapse_at:F");
  REQUIRE(list.size() == 2);
  CHECK(list[0].kind == Policy::Kind::UnitaryOnly);
  CHECK(list[1].agents == std::vector<std::string>{"F"});

  auto nested = parse_policy_list("collapse_at:Alice,Bob,unitary_only");
  REQUIRE(nested.size() == 2);
  CHECK(nested[0].agents == std::vector<std::string>{"Alice", "Bob"});
  CHECK(nested[1].kind == Policy::Kind::UnitaryOnly);

  CHECK(to_string(two) == "collapse_at:Alice,Bob");
  CHECK_THROWS_AS(parse_policy("collapse_now"), Error);
  CHECK_THROWS_AS(parse_policy("collapse_at:"), Error);
}

TEST_CASE("measure_mode distinguishes readouts from contested measurements") {
  const Scenario scenario = build_molecule_toy();
  const auto& friend_measure = std::get<MeasureEvent>(scenario.events[1]);
  const auto& readout = std::get<MeasureEvent>(scenario.events[2]);

  CHECK(measure_mode(scenario, friend_measure, Policy::unitary_only()) == MeasureMode::Skip);
  CHECK(measure_mode(scenario, friend_measure, Policy::collapse_at({"F"})) ==
        MeasureMode::Collapse);
  CHECK(measure_mode(scenario, friend_measure, Policy::collapse_at({"W"})) == MeasureMode::Skip);

  // The readout record feeds the signal: it samples under every policy.
  CHECK(measure_mode(scenario, readout, Policy::unitary_only()) == MeasureMode::RecordOnly);
  CHECK(measure_mode(scenario, readout, Policy::collapse_at({"F"})) == MeasureMode::Collapse);
  CHECK(measure_mode(scenario, readout, Policy::collapse_at({"W"})) == MeasureMode::Collapse);
}

TEST_CASE("assign_states: molecule_toy under both policies") {
  const Scenario scenario = build_molecule_toy();

  // Unitary-only: W's assignment after the correlation is the Bell density.
  auto unitary = assign_states(scenario, Policy::unitary_only());
  const StateAssignment& w = unitary.at("W");
  DensityOperator after_correlation = w.state_at(1);
  CHECK(after_correlation.provenance().kind == ProvenanceKind::Pure);
  CHECK(std::abs(after_correlation.matrix()(0, 0).real() - 0.5) < 1e-12);
  CHECK(std::abs(after_correlation.matrix()(0, 6).real() - 0.5) < 1e-12);
  CHECK(std::abs(after_correlation.matrix()(6, 6).real() - 0.5) < 1e-12);

  // Collapse at F: the deterministic part after F's measurement is the
  // equal mixture of the two record states.
  auto collapsed = assign_states(scenario, Policy::collapse_at({"F"}));
  const StateAssignment& f = collapsed.at("F");
  DensityOperator mixture = f.state_at(2);
  CHECK(mixture.provenance().kind == ProvenanceKind::ProperFromEnsemble);

  Register reg = scenario.reg;
  DensityOperator expected = proper_mixture_from_ensemble(Ensemble::from_entries({
      {0.5, basis_state(reg, 0), "up"},   // |up,up,0>
      {0.5, basis_state(reg, 6), "down"}, // |down,down,0>
  }));
  CHECK((mixture.matrix() - expected.matrix()).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(f.known_records() == std::vector<std::string>{"mF", "mW"});
}

TEST_CASE("assign_states: friend's marginal stays fully mixed under unitary-only") {
  const Scenario scenario = build_wigners_friend();
  auto assignments = assign_states(scenario, Policy::unitary_only());
  const StateAssignment& f = assignments.at("F");

  // Final step: after F's (suppressed) measurement the marginal is I/2.
  DensityOperator marginal = f.final_state();
  CHECK(marginal.provenance().kind == ProvenanceKind::ImproperFromTrace);
  CHECK((marginal.matrix() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(f.known_records().empty());
}

TEST_CASE("run_trajectory: unitary-only molecule fires the photon every run") {
  const Scenario scenario = build_molecule_toy();
  for (std::uint64_t seed : {1ull, 7ull, 99ull, 123456789ull}) {
    Trajectory trajectory = run_trajectory(scenario, Policy::unitary_only(), seed);
    REQUIRE(trajectory.records.size() == 1);
    CHECK(trajectory.records[0].first == "mW");
    CHECK(trajectory.records[0].second == "PhiPlus");
    // C flipped to |1>: amplitudes sit at |00,1> and |11,1>.
    CHECK(std::abs(trajectory.final_state.amp(1).real() - kInvSqrt2) < 1e-12);
    CHECK(std::abs(trajectory.final_state.amp(7).real() - kInvSqrt2) < 1e-12);
  }
}

TEST_CASE("run_trajectory: collapse at F excites C in half the runs") {
  const Scenario scenario = build_molecule_toy();
  const std::size_t runs = 10000;
  std::size_t excited = 0;
  for (std::size_t run = 0; run < runs; ++run) {
    Trajectory trajectory = run_trajectory(scenario, Policy::collapse_at({"F"}), 7, run);
    auto mw = trajectory.record_value("mW");
    REQUIRE(mw.has_value());
    REQUIRE(trajectory.record_value("mF").has_value());
    if (*mw == "PhiPlus") ++excited;
  }
  const double sigma = std::sqrt(0.25 / static_cast<double>(runs));
  CHECK(std::abs(excited / static_cast<double>(runs) - 0.5) < 3.0 * sigma);
}

TEST_CASE("run_trajectory: epr_bell outcomes anti-correlate at theta = 0") {
  const Scenario scenario = build_epr_bell(0.0);
  for (std::size_t run = 0; run < 200; ++run) {
    Trajectory trajectory =
        run_trajectory(scenario, Policy::collapse_at({"Alice", "Bob"}), 11, run);
    auto alice = trajectory.record_value("mA");
    auto bob = trajectory.record_value("mB");
    REQUIRE(alice.has_value());
    REQUIRE(bob.has_value());
    CHECK(*alice != *bob);
  }
}

TEST_CASE("seed determinism: identical triples give identical trajectories") {
  const Scenario scenario = build_molecule_toy();
  for (std::size_t run = 0; run < 20; ++run) {
    Trajectory a = run_trajectory(scenario, Policy::collapse_at({"F"}), 42, run);
    Trajectory b = run_trajectory(scenario, Policy::collapse_at({"F"}), 42, run);
    CHECK(a.records == b.records);
    CHECK(a.final_state.amps() == b.final_state.amps());  // bit-identical
  }
}

TEST_CASE("moving the cut changes the prediction") {
  const Scenario scenario = build_molecule_toy();
  const Check& photon = scenario.checks[0];

  const BranchHistory at_f = evolve_branches(scenario, Policy::collapse_at({"F"}));
  const BranchHistory at_w = evolve_branches(scenario, Policy::collapse_at({"W"}));
  const CheckValue with_f = evaluate_check(scenario, photon, at_f.final_branches());
  const CheckValue with_w = evaluate_check(scenario, photon, at_w.final_branches());
  CHECK(*with_f.outcome_probability == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(*with_w.outcome_probability == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ensemble_over_runs: exact weights and empirical convergence") {
  const double theta = M_PI / 3.0;
  const Scenario scenario = build_epr_bell(theta);
  const Policy policy = Policy::collapse_at({"Alice", "Bob"});

  RunEnsemble ensembles = ensemble_over_runs(scenario, policy, 10000, 5);

  // Exact side: the four collapsed products with the closed-form weights.
  REQUIRE(ensembles.exact.entries().size() == 4);
  const double s2 = std::sin(theta / 2) * std::sin(theta / 2);
  const double c2 = std::cos(theta / 2) * std::cos(theta / 2);
  std::map<std::string, double> expected = {
      {"mA=0 mB=0", 0.5 * s2},
      {"mA=0 mB=1", 0.5 * c2},
      {"mA=1 mB=0", 0.5 * c2},
      {"mA=1 mB=1", 0.5 * s2},
  };
  for (const auto& entry : ensembles.exact.entries()) {
    CHECK(entry.probability == doctest::Approx(expected.at(entry.tag)).epsilon(1e-9));

    // Each exact entry is the collapsed product state for its records.
    MeasurementBasis z = make_basis(scenario.reg, {"A"}, BasisSpec::computational());
    auto dist = born_distribution(entry.state, z);
    const double p0 = entry.tag.find("mA=0") != std::string::npos ? 1.0 : 0.0;
    CHECK(dist[0].second == doctest::Approx(p0).epsilon(1e-9));
  }

  // Empirical side: total variation below 0.05 at n = 10^4.
  double tv = 0.0;
  for (const auto& entry : ensembles.empirical.entries()) {
    tv += std::abs(entry.probability - expected.at(entry.tag));
  }
  CHECK(0.5 * tv < 0.05);

  CHECK_THROWS_AS(ensemble_over_runs(scenario, Policy::unitary_only(), 10, 1), Error);
  try {
    ensemble_over_runs(scenario, Policy::unitary_only(), 10, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PolicyHasNoOutcomes);
  }
}

TEST_CASE("exact ensemble mixture contradicts the pure state by 1/2") {
  const Scenario scenario = build_epr_bell(0.0);
  RunEnsemble ensembles =
      ensemble_over_runs(scenario, Policy::collapse_at({"Alice", "Bob"}), 1, 1);
  DensityOperator mixture = proper_mixture_from_ensemble(ensembles.exact);
  DensityOperator pure = density_from_pure(initial_state(scenario));
  CHECK(trace_distance(pure, mixture) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("FAPP agreement: collapse-basis diagonals match across policies") {
  // For every built-in: the product basis over the policy-suppressed
  // measurements gets identical statistics under unitary-only and under
  // collapsing those agents.
  BuiltinParams params;
  params.theta = 0.9;
  params.n_env = 3;
  for (const auto& name : builtin_scenario_names()) {
    const Scenario scenario = build_builtin(name, params);

    std::set<std::string> contested;
    for (const auto& event : scenario.events) {
      if (const auto* measure = std::get_if<MeasureEvent>(&event)) {
        if (!record_is_consumed(scenario, measure->record)) contested.insert(measure->agent);
      }
    }
    REQUIRE(!contested.empty());
    const Policy collapse =
        Policy::collapse_at(std::vector<std::string>(contested.begin(), contested.end()));

    // Joint records distribution over the contested measurements.
    Check joint;
    joint.kind = CheckKind::Records;
    for (const auto& event : scenario.events) {
      if (const auto* measure = std::get_if<MeasureEvent>(&event)) {
        if (!record_is_consumed(scenario, measure->record)) joint.records.push_back(measure->record);
      }
    }

    const BranchHistory unitary = evolve_branches(scenario, Policy::unitary_only());
    const BranchHistory collapsed = evolve_branches(scenario, collapse);
    const CheckValue a = evaluate_check(scenario, joint, unitary.final_branches());
    const CheckValue b = evaluate_check(scenario, joint, collapsed.final_branches());
    CHECK(value_gap(a, b) < 1e-9);
  }
}
