#pragma once

#include <string>
#include <variant>
#include <vector>

#include "wignerlab/basis.hpp"
#include "wignerlab/operators.hpp"
#include "wignerlab/policy.hpp"
#include "wignerlab/state.hpp"

namespace wignerlab {

inline constexpr double kDefaultCheckTolerance = 1e-9;

// A unitary as written in a scenario: a built-in name or a literal matrix.
struct UnitarySpec {
  enum class Kind { Named, Literal };

  Kind kind = Kind::Named;
  std::string name;
  Matrix matrix;

  static UnitarySpec named(std::string n) { return {Kind::Named, std::move(n), {}}; }
  static UnitarySpec literal(Matrix m) { return {Kind::Literal, "", std::move(m)}; }
};

bool operator==(const UnitarySpec& a, const UnitarySpec& b);

struct UnitaryEvent {
  UnitarySpec unitary;
  std::vector<std::string> targets;
};

struct MeasureEvent {
  std::string agent;
  BasisSpec basis;
  std::vector<std::string> targets;
  std::string record;
};

// Classically conditioned unitary: fires when a previously recorded outcome
// matches. Models signal hardware wired to a readout (e.g. a photon emitter).
struct SignalEvent {
  std::string record;
  std::string outcome;
  UnitarySpec action;
  std::vector<std::string> targets;
};

struct NoopEvent {};

using Event = std::variant<UnitaryEvent, MeasureEvent, SignalEvent, NoopEvent>;

enum class CheckKind {
  Outcome,       // probability of one outcome of a basis on targets
  Distribution,  // full outcome distribution of a basis on targets
  Records,       // joint distribution in the product basis of named measurements
  Definability,  // Definite/Undefined verdict for a named observable
  Witness,       // interference witness of the reduced state in a basis
};

const char* to_string(CheckKind kind);

struct Check {
  CheckKind kind = CheckKind::Outcome;
  std::vector<std::string> targets;
  BasisSpec basis;
  std::string observable;             // Definability: currently total_spin_squared
  std::string outcome;                // Outcome only
  std::vector<std::string> records;   // Records only
  std::vector<std::string> agents;
  double tolerance = kDefaultCheckTolerance;
};

bool operator==(const Check& a, const Check& b);

// Stable display name, e.g. "outcome:C==1" or "records:mA,mB".
std::string check_name(const Check& check);

struct AgentDecl {
  std::string name;
  std::vector<std::string> observes;

  bool operator==(const AgentDecl&) const = default;
};

// One factor of the initial product state: a joint amplitude vector over a
// group of subsystems. Groups tensor together in declaration order.
struct StateGroup {
  std::vector<std::string> labels;
  Vector amps;
};

bool operator==(const StateGroup& a, const StateGroup& b);

struct Scenario {
  std::string name;
  Register reg;
  std::vector<AgentDecl> agents;
  std::vector<StateGroup> initial_groups;
  std::vector<Event> events;
  std::vector<Check> checks;
  std::vector<Policy> policies;  // optional POLICY statements

  bool has_agent(const std::string& name) const;
  const AgentDecl& agent(const std::string& name) const;  // throws MissingAgent
};

// Full initial state: normalized tensor product of the groups.
PureState initial_state(const Scenario& scenario);

// True when some signal event's condition reads this record. Such a
// measurement is wired to hardware and yields an outcome under every policy.
bool record_is_consumed(const Scenario& scenario, const std::string& record);

struct ScenarioIssue {
  std::string message;
  int event_index = -1;  // -1 when not tied to an event
  int check_index = -1;  // -1 when not tied to a check
};

// Exhaustive structural validation; returns every violation found rather
// than stopping at the first.
std::vector<ScenarioIssue> validate_scenario(const Scenario& scenario);

// Structural identity: same declarations, amplitudes, events, checks and
// policies, compared exactly (amplitudes are preserved bit-for-bit by the
// 17-significant-digit file format).
bool structurally_equal(const Scenario& a, const Scenario& b);

// ---- Built-in scenarios -------------------------------------------------

// Two spins in the maximally entangled triplet m=0 state; Alice measures z,
// Bob measures along the tilted axis theta. A non-measuring observer Walter
// holds the joint description.
Scenario build_epr_bell(double theta);

// Friend F measures a spin S inside a sealed lab whose device D and memory F
// are tracked as qubits; outside observer W keeps the entangled description.
Scenario build_wigners_friend();

// Three-qubit molecule: A carries the superposed spin, B the internal record,
// C a communication mode excited by a conditional signal from the
// Bell-observable readout.
Scenario build_molecule_toy();

// Molecule toy with n_env extra qubits copying the internal record B, so the
// reduced record loses its visible coherence while the joint readout keeps it.
// n_env == 0 returns build_molecule_toy(). Errors: TooLarge (n_env > 10).
Scenario build_decoherence_demo(std::size_t n_env);

// Names accepted by scenario lookup, in listing order.
std::vector<std::string> builtin_scenario_names();
bool is_builtin_scenario(const std::string& name);

struct BuiltinParams {
  double theta = 0.0;
  std::size_t n_env = 4;
};

Scenario build_builtin(const std::string& name, const BuiltinParams& params);

// One-line description for listings.
std::string builtin_summary(const std::string& name);

}  // namespace wignerlab
