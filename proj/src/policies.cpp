#include "wignerlab/policies.hpp"

#include <algorithm>

#include "wignerlab/errors.hpp"

namespace wignerlab {

namespace {

void require_valid(const Scenario& scenario) {
  const auto issues = validate_scenario(scenario);
  if (!issues.empty()) {
    raise(ErrorCode::InvalidScenario,
          "scenario '" + scenario.name + "' is invalid: " + issues.front().message);
  }
}

Operator resolve_unitary(const Scenario& scenario, const UnitarySpec& spec,
                         const std::vector<std::string>& targets) {
  if (spec.kind == UnitarySpec::Kind::Literal) {
    return Operator::unitary(spec.matrix);
  }
  std::vector<std::size_t> dims;
  for (const auto& label : targets) {
    dims.push_back(scenario.reg.dim(scenario.reg.index_of(label)));
  }
  return named_unitary(spec.name, dims);
}

std::optional<std::string> record_value(
    const std::vector<std::pair<std::string, std::string>>& records, const std::string& name) {
  for (const auto& [record, outcome] : records) {
    if (record == name) return outcome;
  }
  return std::nullopt;
}

}  // namespace

MeasureMode measure_mode(const Scenario& scenario, const MeasureEvent& event,
                         const Policy& policy) {
  const bool consumed = record_is_consumed(scenario, event.record);
  if (policy.kind == Policy::Kind::UnitaryOnly) {
    return consumed ? MeasureMode::RecordOnly : MeasureMode::Skip;
  }
  if (policy.collapses_for(event.agent)) return MeasureMode::Collapse;
  return consumed ? MeasureMode::Collapse : MeasureMode::Skip;
}

BranchHistory evolve_branches(const Scenario& scenario, const Policy& policy) {
  require_valid(scenario);

  BranchHistory history;
  history.per_event.push_back({Branch{1.0, initial_state(scenario), {}}});

  for (const auto& event : scenario.events) {
    const std::vector<Branch>& current = history.per_event.back();
    std::vector<Branch> next;

    if (const auto* unitary = std::get_if<UnitaryEvent>(&event)) {
      const Operator op = resolve_unitary(scenario, unitary->unitary, unitary->targets);
      for (const auto& branch : current) {
        next.push_back({branch.weight, apply_unitary(branch.state, op, unitary->targets),
                        branch.records});
      }
    } else if (const auto* measure = std::get_if<MeasureEvent>(&event)) {
      const MeasureMode mode = measure_mode(scenario, *measure, policy);
      if (mode == MeasureMode::Skip) {
        next = current;
      } else {
        const MeasurementBasis basis =
            make_basis(scenario.reg, measure->targets, measure->basis);
        for (const auto& branch : current) {
          const OutcomeDistribution dist = born_distribution(branch.state, basis);
          for (std::size_t i = 0; i < dist.size(); ++i) {
            const double weight = branch.weight * dist[i].second;
            if (weight < kBranchPruneWeight) continue;
            Branch child;
            child.weight = weight;
            child.records = branch.records;
            child.records.emplace_back(measure->record, dist[i].first);
            // Project onto the i-th outcome rather than sampling: the walk
            // enumerates every branch.
            child.state = mode == MeasureMode::Collapse
                              ? project_outcome(branch.state, basis, i)
                              : branch.state;
            next.push_back(std::move(child));
          }
        }
      }
    } else if (const auto* signal = std::get_if<SignalEvent>(&event)) {
      const Operator op = resolve_unitary(scenario, signal->action, signal->targets);
      for (const auto& branch : current) {
        auto value = record_value(branch.records, signal->record);
        if (value && *value == signal->outcome) {
          next.push_back(
              {branch.weight, apply_unitary(branch.state, op, signal->targets), branch.records});
        } else {
          next.push_back(branch);
        }
      }
    } else {
      next = current;  // Noop
    }

    history.per_event.push_back(std::move(next));
  }
  return history;
}

StateAssignment::StateAssignment(std::string agent, std::vector<std::string> observes,
                                 Policy policy, std::shared_ptr<const BranchHistory> history,
                                 std::vector<std::string> known_records)
    : agent_(std::move(agent)),
      observes_(std::move(observes)),
      policy_(std::move(policy)),
      history_(std::move(history)),
      known_records_(std::move(known_records)) {}

DensityOperator StateAssignment::state_at(std::size_t event_index) const {
  const std::vector<Branch>& branches = history_->per_event.at(event_index);
  const Register& full = branches.front().state.reg();

  std::vector<std::string> discard;
  for (const auto& sub : full.subsystems()) {
    if (std::find(observes_.begin(), observes_.end(), sub.label) == observes_.end()) {
      discard.push_back(sub.label);
    }
  }

  const bool unitary_only = policy_.kind == Policy::Kind::UnitaryOnly;
  if (branches.size() == 1 && branches.front().weight >= 1.0 - kNormEpsilon) {
    const PureState& state = branches.front().state;
    if (discard.empty()) {
      DensityOperator rho = density_from_pure(state);
      if (!unitary_only) {
        return DensityOperator::from_matrix(
            rho.reg(), rho.matrix(), Provenance::proper("single-branch collapse ensemble"));
      }
      return rho;
    }
    DensityOperator rho = partial_trace(state, discard);
    if (!unitary_only) {
      return DensityOperator::from_matrix(
          rho.reg(), rho.matrix(), Provenance::proper("single-branch collapse ensemble"));
    }
    return rho;
  }

  // Weighted mixture over branches, restricted to the observed subsystems.
  const Register kept = discard.empty() ? full : full.keep(observes_);
  const auto dim = static_cast<Eigen::Index>(kept.total_dim());
  Matrix rho = Matrix::Zero(dim, dim);
  double total = 0.0;
  for (const auto& branch : branches) {
    total += branch.weight;
    if (discard.empty()) {
      rho += branch.weight * (branch.state.amps() * branch.state.amps().adjoint());
    } else {
      rho += branch.weight * partial_trace(branch.state, discard).matrix();
    }
  }
  rho /= total;

  if (unitary_only) {
    // Reachable only when signal hardware fired on a genuinely random
    // record: the records branched but no state reduction took place.
    return DensityOperator::from_matrix(
        kept, rho, Provenance::improper("record-only branching of the global pure state", discard));
  }
  return DensityOperator::from_matrix(
      kept, rho,
      Provenance::proper(std::to_string(branches.size()) + "-branch collapse ensemble"));
}

std::map<std::string, StateAssignment> assign_states(const Scenario& scenario,
                                                     const Policy& policy) {
  auto history = std::make_shared<const BranchHistory>(evolve_branches(scenario, policy));

  std::map<std::string, StateAssignment> assignments;
  for (const auto& agent : scenario.agents) {
    // An agent knows the records of its own effective measurements plus any
    // record whose signal touches a subsystem it observes.
    std::vector<std::string> known;
    for (const auto& event : scenario.events) {
      if (const auto* measure = std::get_if<MeasureEvent>(&event)) {
        if (measure->agent == agent.name &&
            measure_mode(scenario, *measure, policy) != MeasureMode::Skip) {
          known.push_back(measure->record);
        }
      } else if (const auto* signal = std::get_if<SignalEvent>(&event)) {
        const bool touches = std::any_of(
            signal->targets.begin(), signal->targets.end(), [&](const std::string& label) {
              return std::find(agent.observes.begin(), agent.observes.end(), label) !=
                     agent.observes.end();
            });
        if (touches && !std::count(known.begin(), known.end(), signal->record)) {
          known.push_back(signal->record);
        }
      }
    }
    assignments.emplace(agent.name, StateAssignment(agent.name, agent.observes, policy, history,
                                                    std::move(known)));
  }
  return assignments;
}

std::optional<std::string> Trajectory::record_value(const std::string& record) const {
  for (const auto& [name, outcome] : records) {
    if (name == record) return outcome;
  }
  return std::nullopt;
}

Trajectory run_trajectory(const Scenario& scenario, const Policy& policy, RandomStream& rng) {
  require_valid(scenario);

  PureState state = initial_state(scenario);
  Trajectory trajectory;

  for (const auto& event : scenario.events) {
    if (const auto* unitary = std::get_if<UnitaryEvent>(&event)) {
      state = apply_unitary(state, resolve_unitary(scenario, unitary->unitary, unitary->targets),
                            unitary->targets);
    } else if (const auto* measure = std::get_if<MeasureEvent>(&event)) {
      const MeasureMode mode = measure_mode(scenario, *measure, policy);
      if (mode == MeasureMode::Skip) continue;
      const MeasurementBasis basis = make_basis(scenario.reg, measure->targets, measure->basis);
      if (mode == MeasureMode::Collapse) {
        auto [outcome, collapsed] = sample_outcome(state, basis, rng);
        trajectory.records.emplace_back(measure->record, outcome);
        state = std::move(collapsed);
      } else {
        const OutcomeDistribution dist = born_distribution(state, basis);
        const std::size_t pick = outcome_index_for_draw(dist, rng.next_double());
        trajectory.records.emplace_back(measure->record, dist[pick].first);
      }
    } else if (const auto* signal = std::get_if<SignalEvent>(&event)) {
      auto value = trajectory.record_value(signal->record);
      if (value && *value == signal->outcome) {
        state = apply_unitary(state, resolve_unitary(scenario, signal->action, signal->targets),
                              signal->targets);
      }
    }
  }
  trajectory.final_state = std::move(state);
  return trajectory;
}

Trajectory run_trajectory(const Scenario& scenario, const Policy& policy, std::uint64_t seed,
                          std::uint64_t run_index) {
  RandomStream rng = derive_run_stream(seed, run_index);
  Trajectory trajectory = run_trajectory(scenario, policy, rng);
  trajectory.seed = seed;
  return trajectory;
}

RunEnsemble ensemble_over_runs(const Scenario& scenario, const Policy& policy, std::size_t n,
                               std::uint64_t seed) {
  if (policy.kind == Policy::Kind::UnitaryOnly) {
    raise(ErrorCode::PolicyHasNoOutcomes,
          "unitary_only admits no outcome ensemble; use a collapse_at policy");
  }
  if (n == 0) {
    raise(ErrorCode::InvalidScenario, "ensemble_over_runs needs at least one run");
  }

  // Exact side: Born-weighted branch enumeration.
  const BranchHistory history = evolve_branches(scenario, policy);
  std::vector<Ensemble::Entry> exact_entries;
  for (const auto& branch : history.final_branches()) {
    std::string tag;
    for (const auto& [record, outcome] : branch.records) {
      if (!tag.empty()) tag += ' ';
      tag += record + "=" + outcome;
    }
    exact_entries.push_back({branch.weight, branch.state, tag});
  }

  // Empirical side: n seeded trajectories keyed by their record assignments.
  std::map<std::string, std::pair<std::size_t, PureState>> buckets;
  for (std::size_t run = 0; run < n; ++run) {
    Trajectory trajectory = run_trajectory(scenario, policy, seed, run);
    std::string tag;
    for (const auto& [record, outcome] : trajectory.records) {
      if (!tag.empty()) tag += ' ';
      tag += record + "=" + outcome;
    }
    auto it = buckets.find(tag);
    if (it == buckets.end()) {
      buckets.emplace(tag, std::make_pair(std::size_t{1}, trajectory.final_state));
    } else {
      ++it->second.first;
    }
  }

  std::vector<Ensemble::Entry> empirical_entries;
  std::vector<std::size_t> counts;
  for (const auto& [tag, bucket] : buckets) {
    empirical_entries.push_back(
        {static_cast<double>(bucket.first) / static_cast<double>(n), bucket.second, tag});
    counts.push_back(bucket.first);
  }

  RunEnsemble result{Ensemble::from_entries(std::move(empirical_entries)), std::move(counts),
                     Ensemble::from_entries(std::move(exact_entries))};
  return result;
}

}  // namespace wignerlab
