#include "wignerlab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "wignerlab/errors.hpp"

namespace wignerlab {

bool operator==(const UnitarySpec& a, const UnitarySpec& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == UnitarySpec::Kind::Named) return a.name == b.name;
  return a.matrix.rows() == b.matrix.rows() && a.matrix.cols() == b.matrix.cols() &&
         a.matrix == b.matrix;
}

const char* to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::Outcome: return "outcome";
    case CheckKind::Distribution: return "distribution";
    case CheckKind::Records: return "records";
    case CheckKind::Definability: return "definability";
    case CheckKind::Witness: return "witness";
  }
  return "outcome";
}

bool operator==(const Check& a, const Check& b) {
  return a.kind == b.kind && a.targets == b.targets && a.basis == b.basis &&
         a.observable == b.observable && a.outcome == b.outcome && a.records == b.records &&
         a.agents == b.agents && a.tolerance == b.tolerance;
}

namespace {

std::string join(const std::vector<std::string>& parts, char sep = ',') {
  std::string text;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) text += sep;
    text += parts[i];
  }
  return text;
}

}  // namespace

std::string check_name(const Check& check) {
  switch (check.kind) {
    case CheckKind::Outcome:
      return "outcome:" + join(check.targets) + "==" + check.outcome;
    case CheckKind::Distribution:
      return "distribution:" + to_string(check.basis) + ":" + join(check.targets);
    case CheckKind::Records:
      return "records:" + join(check.records);
    case CheckKind::Definability:
      return "definability:" + check.observable + ":" + join(check.targets);
    case CheckKind::Witness:
      return "witness:" + to_string(check.basis) + ":" + join(check.targets);
  }
  return "check";
}

bool operator==(const StateGroup& a, const StateGroup& b) {
  return a.labels == b.labels && a.amps.size() == b.amps.size() && a.amps == b.amps;
}

bool Scenario::has_agent(const std::string& agent_name) const {
  return std::any_of(agents.begin(), agents.end(),
                     [&](const AgentDecl& a) { return a.name == agent_name; });
}

const AgentDecl& Scenario::agent(const std::string& agent_name) const {
  for (const auto& a : agents) {
    if (a.name == agent_name) return a;
  }
  raise(ErrorCode::MissingAgent, "agent '" + agent_name + "' is not declared");
}

PureState initial_state(const Scenario& scenario) {
  if (scenario.initial_groups.empty()) {
    raise(ErrorCode::InvalidScenario, "scenario has no initial state");
  }
  std::optional<PureState> state;
  for (const auto& group : scenario.initial_groups) {
    std::vector<Subsystem> subs;
    for (const auto& label : group.labels) {
      subs.push_back(scenario.reg.subsystems()[scenario.reg.index_of(label)]);
    }
    PureState factor = from_amplitudes(make_register(subs), group.amps);
    state = state ? tensor_product(*state, factor) : factor;
  }
  // Reorder to the register's declaration order if the groups were not
  // declared in it (validation flags that case; builders always are).
  if (state->reg() != scenario.reg) {
    raise(ErrorCode::InvalidScenario, "initial state groups do not cover the register in order");
  }
  return *state;
}

bool record_is_consumed(const Scenario& scenario, const std::string& record) {
  for (const auto& event : scenario.events) {
    if (const auto* signal = std::get_if<SignalEvent>(&event)) {
      if (signal->record == record) return true;
    }
  }
  return false;
}

namespace {

void check_targets_exist(const Scenario& scenario, const std::vector<std::string>& targets,
                         int index, const char* what, std::vector<ScenarioIssue>& issues) {
  std::set<std::string> seen;
  for (const auto& label : targets) {
    if (!scenario.reg.contains(label)) {
      issues.push_back({std::string(what) + " references unknown subsystem '" + label + "'", index});
    }
    if (!seen.insert(label).second) {
      issues.push_back({std::string(what) + " repeats subsystem '" + label + "'", index});
    }
  }
  if (targets.empty()) {
    issues.push_back({std::string(what) + " has no targets", index});
  }
}

bool basis_shape_ok(const Scenario& scenario, const BasisSpec& spec,
                    const std::vector<std::string>& targets, std::string& why) {
  std::vector<std::size_t> dims;
  for (const auto& label : targets) {
    auto idx = scenario.reg.find(label);
    if (!idx) return true;  // unknown target reported separately
    dims.push_back(scenario.reg.dim(*idx));
  }
  const bool all_qubits = std::all_of(dims.begin(), dims.end(),
                                      [](std::size_t d) { return d == 2; });
  switch (spec.kind) {
    case BasisSpec::Kind::Computational:
      return true;
    case BasisSpec::Kind::Spin:
      if (dims.size() != 1 || !all_qubits) {
        why = "spin basis needs exactly one dim-2 target";
        return false;
      }
      if (!std::isfinite(spec.angle)) {
        why = "spin basis angle must be finite";
        return false;
      }
      return true;
    case BasisSpec::Kind::Bell:
      if (dims.size() != 2 || !all_qubits) {
        why = "bell basis needs exactly two dim-2 targets";
        return false;
      }
      return true;
    case BasisSpec::Kind::Ghz:
      if (dims.size() < 2 || !all_qubits) {
        why = "ghz basis needs two or more dim-2 targets";
        return false;
      }
      return true;
  }
  return true;
}

std::vector<std::string> basis_outcome_labels(const Scenario& scenario, const BasisSpec& spec,
                                              const std::vector<std::string>& targets) {
  try {
    return [&] {
      MeasurementBasis basis = make_basis(scenario.reg, targets, spec);
      std::vector<std::string> labels;
      for (const auto& outcome : basis.outcomes()) labels.push_back(outcome.label);
      return labels;
    }();
  } catch (const Error&) {
    return {};
  }
}

}  // namespace

std::vector<ScenarioIssue> validate_scenario(const Scenario& scenario) {
  std::vector<ScenarioIssue> issues;

  if (scenario.name.empty()) issues.push_back({"scenario has no name", -1});

  std::set<std::string> agent_names;
  for (const auto& agent : scenario.agents) {
    if (!agent_names.insert(agent.name).second) {
      issues.push_back({"duplicate agent '" + agent.name + "'", -1});
    }
    std::set<std::string> seen;
    for (const auto& label : agent.observes) {
      if (!scenario.reg.contains(label)) {
        issues.push_back({"agent '" + agent.name + "' observes unknown subsystem '" + label + "'", -1});
      }
      if (!seen.insert(label).second) {
        issues.push_back({"agent '" + agent.name + "' repeats subsystem '" + label + "'", -1});
      }
    }
  }

  // Initial state: every subsystem covered exactly once, in register order,
  // with matching group dimensions.
  {
    std::vector<std::string> covered;
    for (const auto& group : scenario.initial_groups) {
      std::size_t dim = 1;
      bool known = true;
      for (const auto& label : group.labels) {
        auto idx = scenario.reg.find(label);
        if (!idx) {
          issues.push_back({"initial state references unknown subsystem '" + label + "'", -1});
          known = false;
          continue;
        }
        dim *= scenario.reg.dim(*idx);
        covered.push_back(label);
      }
      if (known && static_cast<std::size_t>(group.amps.size()) != dim) {
        issues.push_back({"initial state group '" + join(group.labels) + "' has " +
                              std::to_string(group.amps.size()) + " amplitudes, expected " +
                              std::to_string(dim),
                          -1});
      }
      if (known && group.amps.size() > 0 && group.amps.norm() == 0.0) {
        issues.push_back({"initial state group '" + join(group.labels) + "' is the zero vector", -1});
      }
      if (known && !group.amps.allFinite()) {
        issues.push_back(
            {"initial state group '" + join(group.labels) + "' has non-finite amplitudes", -1});
      }
    }
    std::vector<std::string> expected;
    for (const auto& sub : scenario.reg.subsystems()) expected.push_back(sub.label);
    if (covered != expected) {
      issues.push_back({"initial state must cover every subsystem exactly once, in declaration order", -1});
    }
  }

  // Events.
  std::set<std::string> records;
  std::vector<std::pair<std::string, int>> record_order;  // record -> event index
  int index = 0;
  for (const auto& event : scenario.events) {
    if (const auto* unitary = std::get_if<UnitaryEvent>(&event)) {
      check_targets_exist(scenario, unitary->targets, index, "unitary event", issues);
      if (unitary->unitary.kind == UnitarySpec::Kind::Named &&
          !is_named_unitary(unitary->unitary.name)) {
        issues.push_back({"unknown unitary '" + unitary->unitary.name + "'", index});
      }
    } else if (const auto* measure = std::get_if<MeasureEvent>(&event)) {
      check_targets_exist(scenario, measure->targets, index, "measure event", issues);
      if (!scenario.has_agent(measure->agent)) {
        issues.push_back({"measuring agent '" + measure->agent + "' is not declared", index});
      }
      if (measure->record.empty()) {
        issues.push_back({"measure event has no record label", index});
      } else if (!records.insert(measure->record).second) {
        issues.push_back({"duplicate record '" + measure->record + "'", index});
      } else {
        record_order.emplace_back(measure->record, index);
      }
      std::string why;
      if (!basis_shape_ok(scenario, measure->basis, measure->targets, why)) {
        issues.push_back({why, index});
      }
    } else if (const auto* signal = std::get_if<SignalEvent>(&event)) {
      check_targets_exist(scenario, signal->targets, index, "signal event", issues);
      if (signal->action.kind == UnitarySpec::Kind::Named &&
          !is_named_unitary(signal->action.name)) {
        issues.push_back({"unknown unitary '" + signal->action.name + "'", index});
      }
      auto it = std::find_if(record_order.begin(), record_order.end(),
                             [&](const auto& entry) { return entry.first == signal->record; });
      if (it == record_order.end()) {
        issues.push_back({"unknown record '" + signal->record + "'", index});
      } else {
        // Outcome label must belong to the basis of the recorded measurement.
        const auto* measure = std::get_if<MeasureEvent>(&scenario.events[it->second]);
        if (measure) {
          auto labels = basis_outcome_labels(scenario, measure->basis, measure->targets);
          if (!labels.empty() &&
              std::find(labels.begin(), labels.end(), signal->outcome) == labels.end()) {
            issues.push_back({"record '" + signal->record + "' has no outcome '" +
                                  signal->outcome + "'",
                              index});
          }
        }
      }
    }
    ++index;
  }

  // Checks.
  for (std::size_t c = 0; c < scenario.checks.size(); ++c) {
    const Check& check = scenario.checks[c];
    const int ci = static_cast<int>(c);
    auto check_issue = [&](const std::string& message) {
      issues.push_back({message, -1, ci});
    };
    for (const auto& agent_name : check.agents) {
      if (!scenario.has_agent(agent_name)) {
        check_issue("check references undeclared agent '" + agent_name + "'");
        continue;
      }
      const AgentDecl& agent = scenario.agent(agent_name);
      for (const auto& label : check.targets) {
        if (scenario.reg.contains(label) &&
            std::find(agent.observes.begin(), agent.observes.end(), label) ==
                agent.observes.end()) {
          check_issue("check targets subsystem '" + label + "' outside agent '" + agent_name +
                      "' view");
        }
      }
    }
    if (check.agents.empty()) check_issue("check names no agents");
    if (!(check.tolerance > 0.0)) check_issue("check tolerance must be positive");

    if (check.kind == CheckKind::Records) {
      std::set<std::string> touched;
      for (const auto& record : check.records) {
        if (!records.count(record)) {
          check_issue("check references unknown record '" + record + "'");
          continue;
        }
        for (const auto& event : scenario.events) {
          const auto* measure = std::get_if<MeasureEvent>(&event);
          if (!measure || measure->record != record) continue;
          for (const auto& label : measure->targets) {
            if (!touched.insert(label).second) {
              check_issue("records check combines measurements sharing target '" + label + "'");
            }
          }
        }
      }
      if (check.records.empty()) check_issue("records check lists no records");
    } else if (check.kind == CheckKind::Definability) {
      if (check.observable != "total_spin_squared") {
        check_issue("unknown observable '" + check.observable + "'");
      }
      std::vector<ScenarioIssue> local;
      check_targets_exist(scenario, check.targets, -1, "definability check", local);
      for (auto& issue : local) {
        issue.check_index = ci;
        issues.push_back(std::move(issue));
      }
    } else {
      std::vector<ScenarioIssue> local;
      check_targets_exist(scenario, check.targets, -1, "check", local);
      for (auto& issue : local) {
        issue.check_index = ci;
        issues.push_back(std::move(issue));
      }
      std::string why;
      if (!basis_shape_ok(scenario, check.basis, check.targets, why)) {
        check_issue(why);
      }
      if (check.kind == CheckKind::Outcome) {
        auto labels = basis_outcome_labels(scenario, check.basis, check.targets);
        if (!labels.empty() &&
            std::find(labels.begin(), labels.end(), check.outcome) == labels.end()) {
          check_issue("check outcome '" + check.outcome + "' is not a basis outcome");
        }
      }
    }
  }

  // Policies.
  for (const auto& policy : scenario.policies) {
    if (policy.kind == Policy::Kind::CollapseAt) {
      if (policy.agents.empty()) {
        issues.push_back({"collapse_at policy names no agents", -1});
      }
      for (const auto& agent_name : policy.agents) {
        if (!scenario.has_agent(agent_name)) {
          issues.push_back({"policy references undeclared agent '" + agent_name + "'", -1});
        }
      }
    }
  }

  return issues;
}

bool structurally_equal(const Scenario& a, const Scenario& b) {
  if (a.name != b.name || a.reg != b.reg || a.agents != b.agents) return false;
  if (a.initial_groups.size() != b.initial_groups.size()) return false;
  for (std::size_t i = 0; i < a.initial_groups.size(); ++i) {
    if (!(a.initial_groups[i] == b.initial_groups[i])) return false;
  }
  if (a.events.size() != b.events.size()) return false;
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    const Event& x = a.events[i];
    const Event& y = b.events[i];
    if (x.index() != y.index()) return false;
    if (const auto* ux = std::get_if<UnitaryEvent>(&x)) {
      const auto* uy = std::get_if<UnitaryEvent>(&y);
      if (!(ux->unitary == uy->unitary) || ux->targets != uy->targets) return false;
    } else if (const auto* mx = std::get_if<MeasureEvent>(&x)) {
      const auto* my = std::get_if<MeasureEvent>(&y);
      if (mx->agent != my->agent || !(mx->basis == my->basis) || mx->targets != my->targets ||
          mx->record != my->record) {
        return false;
      }
    } else if (const auto* sx = std::get_if<SignalEvent>(&x)) {
      const auto* sy = std::get_if<SignalEvent>(&y);
      if (sx->record != sy->record || sx->outcome != sy->outcome ||
          !(sx->action == sy->action) || sx->targets != sy->targets) {
        return false;
      }
    }
  }
  if (a.checks.size() != b.checks.size()) return false;
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    if (!(a.checks[i] == b.checks[i])) return false;
  }
  return a.policies == b.policies;
}

}  // namespace wignerlab
