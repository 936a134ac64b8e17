#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>

#include "wignerlab/density.hpp"
#include "wignerlab/rng.hpp"
#include "wignerlab/scenario.hpp"

namespace wignerlab {

// Branches lighter than this are dropped from analytic enumeration.
inline constexpr double kBranchPruneWeight = 1e-15;

// How a measurement event behaves under a policy.
//
//   Collapse    outcome sampled (or enumerated), state projected
//   RecordOnly  outcome sampled (or enumerated) but the state is untouched;
//               unitary-only evaluation of a measurement whose record drives
//               signal hardware, which must fire even though the policy
//               admits no state reduction
//   Skip        pure correlation reading: no outcome exists for this event
//
// Under unitary-only every uncommitted measurement is Skip; a measurement
// whose record is consumed by a signal is RecordOnly. Under collapse_at the
// named agents' measurements Collapse, consumed measurements by other agents
// Collapse as well (the readout is part of the experiment's hardware), and
// everything else Skips.
enum class MeasureMode { Collapse, RecordOnly, Skip };

MeasureMode measure_mode(const Scenario& scenario, const MeasureEvent& event,
                         const Policy& policy);

// One branch of the analytic event walk: a pure state together with the
// record assignments that selected it and the Born weight of that selection.
struct Branch {
  double weight = 1.0;
  PureState state;
  std::vector<std::pair<std::string, std::string>> records;
};

// Branch set after each event prefix; per_event[0] is the initial state,
// per_event[i + 1] the set after events[0..i].
struct BranchHistory {
  std::vector<std::vector<Branch>> per_event;

  const std::vector<Branch>& final_branches() const { return per_event.back(); }
};

// Deterministic branch enumeration of the scenario under the policy.
// Errors: InvalidScenario when validate_scenario reports issues.
BranchHistory evolve_branches(const Scenario& scenario, const Policy& policy);

// An agent's deterministic state assignment: for each event prefix, the
// branch mixture restricted to the subsystems the agent observes. Under
// unitary-only this is the (traced) global pure state; under collapse_at it
// is the Born-weighted proper mixture over collapse branches.
class StateAssignment {
 public:
  StateAssignment(std::string agent, std::vector<std::string> observes, Policy policy,
                  std::shared_ptr<const BranchHistory> history,
                  std::vector<std::string> known_records);

  const std::string& agent() const { return agent_; }
  const std::vector<std::string>& observes() const { return observes_; }
  const Policy& policy() const { return policy_; }
  const std::vector<std::string>& known_records() const { return known_records_; }
  std::size_t steps() const { return history_->per_event.size(); }

  // Assignment after the first `event_index` events (0 = initial state).
  // Provenance: Pure / ImproperFromTrace under unitary-only,
  // ProperFromEnsemble under collapse_at.
  DensityOperator state_at(std::size_t event_index) const;
  DensityOperator final_state() const { return state_at(steps() - 1); }

  const BranchHistory& history() const { return *history_; }

 private:
  std::string agent_;
  std::vector<std::string> observes_;
  Policy policy_;
  std::shared_ptr<const BranchHistory> history_;
  std::vector<std::string> known_records_;
};

// Deterministic per-agent assignments. Errors: InvalidScenario.
std::map<std::string, StateAssignment> assign_states(const Scenario& scenario,
                                                     const Policy& policy);

// One sampled run: every record drawn along the way plus the final global
// state under the policy. Bit-identical for identical (scenario, policy,
// stream) inputs.
struct Trajectory {
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> records;
  PureState final_state;

  std::optional<std::string> record_value(const std::string& record) const;
};

Trajectory run_trajectory(const Scenario& scenario, const Policy& policy, RandomStream& rng);
Trajectory run_trajectory(const Scenario& scenario, const Policy& policy, std::uint64_t seed,
                          std::uint64_t run_index = 0);

// Ensembles over collapse outcomes: observed frequencies next to the exact
// Born-weight enumeration. Errors: PolicyHasNoOutcomes for unitary-only,
// InvalidScenario.
struct RunEnsemble {
  Ensemble empirical;               // frequencies over n runs
  std::vector<std::size_t> counts;  // per empirical entry
  Ensemble exact;                   // analytic Born weights
};

RunEnsemble ensemble_over_runs(const Scenario& scenario, const Policy& policy, std::size_t n,
                               std::uint64_t seed);

}  // namespace wignerlab
