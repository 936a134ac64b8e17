#include <algorithm>
#include <cmath>

#include "wignerlab/errors.hpp"
#include "wignerlab/scenario.hpp"

namespace wignerlab {

namespace {

// Normalization fixed point: the exact amplitudes from_amplitudes would
// store, so built scenarios compare bit-for-bit with their parsed form.
// The quotient is spelled exactly as in from_amplitudes; Eigen's in-place
// division rounds through complex scalars and lands one ulp away.
Vector unit(Vector amps) {
  for (int i = 0; i < 4; ++i) {
    const double norm = amps.norm();
    if (norm == 1.0) break;
    amps = Vector(amps / norm);
  }
  return amps;
}

Vector plus_state() {
  Vector amps(2);
  amps << 1.0, 1.0;
  return unit(amps);
}

Vector ket(std::size_t dim, std::size_t index) {
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(dim));
  amps[static_cast<Eigen::Index>(index)] = 1.0;
  return amps;
}

}  // namespace

Scenario build_epr_bell(double theta) {
  if (!std::isfinite(theta)) {
    raise(ErrorCode::InvalidScenario, "epr_bell needs a finite angle");
  }
  Scenario s;
  s.name = "epr_bell";
  s.reg = make_register({{"A", 2}, {"B", 2}});
  s.agents = {{"Alice", {"A"}}, {"Bob", {"B"}}, {"Walter", {"A", "B"}}};

  // Triplet m=0 pair: (|01> + |10>)/sqrt(2).
  Vector amps = Vector::Zero(4);
  amps[1] = 1.0;
  amps[2] = 1.0;
  s.initial_groups = {{{"A", "B"}, unit(amps)}};

  s.events = {
      MeasureEvent{"Alice", BasisSpec::computational(), {"A"}, "mA"},
      MeasureEvent{"Bob", BasisSpec::spin(theta), {"B"}, "mB"},
  };

  Check joint;
  joint.kind = CheckKind::Records;
  joint.records = {"mA", "mB"};
  joint.agents = {"Walter"};
  s.checks.push_back(joint);

  Check definability;
  definability.kind = CheckKind::Definability;
  definability.observable = "total_spin_squared";
  definability.targets = {"A", "B"};
  definability.agents = {"Walter"};
  s.checks.push_back(definability);

  return s;
}

Scenario build_wigners_friend() {
  Scenario s;
  s.name = "wigners_friend";
  s.reg = make_register({{"S", 2}, {"D", 2}, {"F", 2}});
  s.agents = {{"F", {"S"}}, {"W", {"S", "D", "F"}}};
  s.initial_groups = {{{"S"}, plus_state()}, {{"D"}, ket(2, 0)}, {{"F"}, ket(2, 0)}};
  s.events = {
      UnitaryEvent{UnitarySpec::named("CORRELATE"), {"S", "D"}},
      UnitaryEvent{UnitarySpec::named("CORRELATE"), {"D", "F"}},
      MeasureEvent{"F", BasisSpec::computational(), {"S"}, "mF"},
  };

  Check marginal;
  marginal.kind = CheckKind::Distribution;
  marginal.basis = BasisSpec::computational();
  marginal.targets = {"S"};
  marginal.agents = {"F", "W"};
  s.checks.push_back(marginal);

  return s;
}

Scenario build_molecule_toy() {
  Scenario s;
  s.name = "molecule_toy";
  s.reg = make_register({{"A", 2}, {"B", 2}, {"C", 2}});
  s.agents = {{"F", {"A", "B", "C"}}, {"W", {"A", "B", "C"}}};
  s.initial_groups = {{{"A"}, plus_state()}, {{"B"}, ket(2, 0)}, {{"C"}, ket(2, 0)}};
  s.events = {
      UnitaryEvent{UnitarySpec::named("CORRELATE"), {"A", "B"}},
      MeasureEvent{"F", BasisSpec::computational(), {"A", "B"}, "mF"},
      MeasureEvent{"W", BasisSpec::bell(), {"A", "B"}, "mW"},
      SignalEvent{"mW", "PhiPlus", UnitarySpec::named("FLIP"), {"C"}},
  };

  Check photon;
  photon.kind = CheckKind::Outcome;
  photon.basis = BasisSpec::computational();
  photon.targets = {"C"};
  photon.outcome = "1";
  photon.agents = {"F", "W"};
  s.checks.push_back(photon);

  return s;
}

Scenario build_decoherence_demo(std::size_t n_env) {
  if (n_env == 0) return build_molecule_toy();
  if (n_env > 10) {
    raise(ErrorCode::TooLarge, "decoherence_demo supports at most 10 environment qubits");
  }

  Scenario s;
  s.name = "decoherence_demo";
  std::vector<Subsystem> subs = {{"A", 2}, {"B", 2}, {"C", 2}};
  std::vector<std::string> env_labels;
  for (std::size_t k = 1; k <= n_env; ++k) {
    env_labels.push_back("E" + std::to_string(k));
    subs.push_back({env_labels.back(), 2});
  }
  s.reg = make_register(subs);

  std::vector<std::string> all_labels;
  for (const auto& sub : subs) all_labels.push_back(sub.label);
  s.agents = {{"F", all_labels}, {"W", all_labels}};

  s.initial_groups = {{{"A"}, plus_state()}, {{"B"}, ket(2, 0)}, {{"C"}, ket(2, 0)}};
  for (const auto& label : env_labels) {
    s.initial_groups.push_back({{label}, ket(2, 0)});
  }

  s.events.push_back(UnitaryEvent{UnitarySpec::named("CORRELATE"), {"A", "B"}});
  s.events.push_back(MeasureEvent{"F", BasisSpec::computational(), {"A", "B"}, "mF"});
  // The record spreads: each environment qubit copies B.
  for (const auto& label : env_labels) {
    s.events.push_back(UnitaryEvent{UnitarySpec::named("CORRELATE"), {"B", label}});
  }
  // The readout observable follows the record into the environment.
  std::vector<std::string> readout_targets = {"A", "B"};
  readout_targets.insert(readout_targets.end(), env_labels.begin(), env_labels.end());
  s.events.push_back(MeasureEvent{"W", BasisSpec::ghz(), readout_targets, "mW"});
  s.events.push_back(SignalEvent{"mW", "PhiPlus", UnitarySpec::named("FLIP"), {"C"}});

  Check photon;
  photon.kind = CheckKind::Outcome;
  photon.basis = BasisSpec::computational();
  photon.targets = {"C"};
  photon.outcome = "1";
  photon.agents = {"F", "W"};
  s.checks.push_back(photon);

  Check witness;
  witness.kind = CheckKind::Witness;
  witness.basis = BasisSpec::computational();
  witness.targets = {"A", "B"};
  witness.agents = {"F", "W"};
  witness.tolerance = 1e-12;
  s.checks.push_back(witness);

  Check sector;
  sector.kind = CheckKind::Distribution;
  sector.basis = BasisSpec::ghz();
  sector.targets = readout_targets;
  sector.agents = {"F", "W"};
  s.checks.push_back(sector);

  return s;
}

std::vector<std::string> builtin_scenario_names() {
  return {"epr_bell", "wigners_friend", "molecule_toy", "decoherence_demo"};
}

bool is_builtin_scenario(const std::string& name) {
  const auto names = builtin_scenario_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Scenario build_builtin(const std::string& name, const BuiltinParams& params) {
  if (name == "epr_bell") return build_epr_bell(params.theta);
  if (name == "wigners_friend") return build_wigners_friend();
  if (name == "molecule_toy") return build_molecule_toy();
  if (name == "decoherence_demo") return build_decoherence_demo(params.n_env);
  raise(ErrorCode::InvalidScenario, "unknown built-in scenario '" + name + "'");
}

std::string builtin_summary(const std::string& name) {
  if (name == "epr_bell") {
    return "entangled spin pair; z and tilted-axis readouts; outcome mixture vs joint state";
  }
  if (name == "wigners_friend") {
    return "friend measures a spin inside a sealed lab; outside observer keeps the entangled description";
  }
  if (name == "molecule_toy") {
    return "three-qubit molecule recording its own spin; Bell-observable readout triggers a photon signal";
  }
  if (name == "decoherence_demo") {
    return "molecule toy with environment qubits copying the record; coherence relocates rather than vanishing";
  }
  return "";
}

}  // namespace wignerlab
