#include "wignerlab/consistency.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <map>

#include "wignerlab/errors.hpp"
#include "wignerlab/mixtures.hpp"

namespace wignerlab {

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Consistent: return "CONSISTENT";
    case Verdict::Contradiction: return "CONTRADICTION";
    case Verdict::DefinabilityMismatch: return "DEFINABILITY_MISMATCH";
  }
  return "CONSISTENT";
}

namespace {

double total_weight(const std::vector<Branch>& branches) {
  double total = 0.0;
  for (const auto& branch : branches) total += branch.weight;
  return total;
}

// Branch mixture reduced to the check's targets. Small by construction:
// checks address named subsystems, not the whole environment.
DensityOperator reduced_mixture(const Scenario& scenario, const std::vector<std::string>& targets,
                                const std::vector<Branch>& branches) {
  std::vector<std::string> discard;
  for (const auto& sub : scenario.reg.subsystems()) {
    if (std::find(targets.begin(), targets.end(), sub.label) == targets.end()) {
      discard.push_back(sub.label);
    }
  }
  const double total = total_weight(branches);
  if (discard.empty()) {
    const auto dim = static_cast<Eigen::Index>(scenario.reg.total_dim());
    Matrix rho = Matrix::Zero(dim, dim);
    for (const auto& branch : branches) {
      rho += (branch.weight / total) * (branch.state.amps() * branch.state.amps().adjoint());
    }
    return DensityOperator::from_matrix(scenario.reg, rho, Provenance::proper("branch mixture"));
  }
  std::optional<Matrix> rho;
  for (const auto& branch : branches) {
    const Matrix part = partial_trace(branch.state, discard).matrix();
    if (!rho) {
      rho = (branch.weight / total) * part;
    } else {
      *rho += (branch.weight / total) * part;
    }
  }
  return DensityOperator::from_matrix(scenario.reg.keep(targets), *rho,
                                      Provenance::proper("branch mixture"));
}

// Product basis over the measurements the named records belong to, in listed
// record order. Outcome labels are the factor labels joined with commas.
MeasurementBasis records_product_basis(const Scenario& scenario,
                                       const std::vector<std::string>& records) {
  std::vector<const MeasureEvent*> measures;
  for (const auto& record : records) {
    const MeasureEvent* found = nullptr;
    for (const auto& event : scenario.events) {
      if (const auto* measure = std::get_if<MeasureEvent>(&event)) {
        if (measure->record == record) {
          found = measure;
          break;
        }
      }
    }
    if (!found) {
      raise(ErrorCode::InvalidScenario, "no measurement recording '" + record + "'");
    }
    measures.push_back(found);
  }

  std::vector<std::string> targets;
  std::vector<std::pair<std::string, Matrix>> outcomes = {{"", Matrix::Identity(1, 1)}};
  for (const auto* measure : measures) {
    targets.insert(targets.end(), measure->targets.begin(), measure->targets.end());
    const MeasurementBasis factor = make_basis(scenario.reg, measure->targets, measure->basis);
    std::vector<std::pair<std::string, Matrix>> expanded;
    expanded.reserve(outcomes.size() * factor.outcomes().size());
    for (const auto& [left_label, left_matrix] : outcomes) {
      for (std::size_t r = 0; r < factor.outcomes().size(); ++r) {
        const std::string& right_label = factor.outcomes()[r].label;
        expanded.emplace_back(
            left_label.empty() ? right_label : left_label + "," + right_label,
            Eigen::kroneckerProduct(left_matrix, factor.dense_projector(r)).eval());
      }
    }
    outcomes = std::move(expanded);
  }
  return MeasurementBasis::from_projectors(std::move(targets), std::move(outcomes));
}

OutcomeDistribution weighted_distribution(const std::vector<Branch>& branches,
                                          const MeasurementBasis& basis) {
  const double total = total_weight(branches);
  OutcomeDistribution combined;
  for (const auto& branch : branches) {
    const OutcomeDistribution dist = born_distribution(branch.state, basis);
    if (combined.empty()) {
      combined = dist;
      for (auto& [label, p] : combined) p *= branch.weight / total;
    } else {
      for (std::size_t i = 0; i < dist.size(); ++i) {
        combined[i].second += (branch.weight / total) * dist[i].second;
      }
    }
  }
  for (auto& [label, p] : combined) p = std::clamp(p, 0.0, 1.0);
  return combined;
}

}  // namespace

CheckValue evaluate_check(const Scenario& scenario, const Check& check,
                          const std::vector<Branch>& branches) {
  CheckValue value;
  switch (check.kind) {
    case CheckKind::Outcome:
    case CheckKind::Distribution: {
      const MeasurementBasis basis = make_basis(scenario.reg, check.targets, check.basis);
      value.type = CheckValue::Type::Distribution;
      value.distribution = weighted_distribution(branches, basis);
      if (check.kind == CheckKind::Outcome) {
        for (const auto& [label, p] : value.distribution) {
          if (label == check.outcome) value.outcome_probability = p;
        }
      }
      break;
    }
    case CheckKind::Records: {
      const MeasurementBasis basis = records_product_basis(scenario, check.records);
      value.type = CheckValue::Type::Distribution;
      value.distribution = weighted_distribution(branches, basis);
      break;
    }
    case CheckKind::Definability: {
      const DensityOperator rho = reduced_mixture(scenario, check.targets, branches);
      const Operator observable = total_spin_squared(rho.reg());
      value.type = CheckValue::Type::Definability;
      value.definite = definite_value(rho, observable);
      break;
    }
    case CheckKind::Witness: {
      const DensityOperator rho = reduced_mixture(scenario, check.targets, branches);
      const MeasurementBasis basis = make_basis(rho.reg(), check.targets, check.basis);
      value.type = CheckValue::Type::Witness;
      value.witness = interference_witness(rho, basis);
      break;
    }
  }
  return value;
}

double value_gap(const CheckValue& a, const CheckValue& b) {
  if (a.type != b.type) {
    raise(ErrorCode::RegisterMismatch, "cannot compare check values of different types");
  }
  switch (a.type) {
    case CheckValue::Type::Distribution: {
      std::map<std::string, double> merged;
      for (const auto& [label, p] : a.distribution) merged[label] += p;
      for (const auto& [label, p] : b.distribution) merged[label] -= p;
      double sum = 0.0;
      for (const auto& [label, diff] : merged) sum += std::abs(diff);
      return 0.5 * sum;
    }
    case CheckValue::Type::Definability: {
      if (a.definite.has_value() != b.definite.has_value()) return 1.0;
      if (!a.definite) return 0.0;
      return std::abs(*a.definite - *b.definite) <= kEigenvalueGap ? 0.0 : 1.0;
    }
    case CheckValue::Type::Witness:
      return std::abs(a.witness.value_or(0.0) - b.witness.value_or(0.0));
  }
  return 0.0;
}

PredictionTable build_prediction_table(const Scenario& scenario,
                                       const std::vector<Policy>& policies) {
  if (policies.empty()) {
    raise(ErrorCode::InvalidScenario, "need at least one policy");
  }

  PredictionTable table;
  table.scenario = scenario.name;
  table.policies = policies;
  table.checks = scenario.checks;
  table.entries.resize(scenario.checks.size());

  // Forbidden-assignment cache: agent -> final branches under collapse_at
  // that agent alone.
  std::map<std::string, std::vector<Branch>> fictional_branches;

  for (const auto& policy : policies) {
    const BranchHistory history = evolve_branches(scenario, policy);
    const std::vector<Branch>& final_branches = history.final_branches();

    for (std::size_t c = 0; c < scenario.checks.size(); ++c) {
      const Check& check = scenario.checks[c];
      const CheckValue value = evaluate_check(scenario, check, final_branches);

      for (const auto& agent_name : check.agents) {
        PredictionEntry entry;
        entry.agent = agent_name;
        entry.policy = policy;
        entry.value = value;

        // Under unitary-only, an agent whose own measurement was suppressed
        // still "knows" an outcome in the everyday telling; show what that
        // disallowed collapsed assignment would predict.
        if (policy.kind == Policy::Kind::UnitaryOnly) {
          bool suppressed = false;
          for (const auto& event : scenario.events) {
            if (const auto* measure = std::get_if<MeasureEvent>(&event)) {
              if (measure->agent == agent_name &&
                  measure_mode(scenario, *measure, policy) == MeasureMode::Skip) {
                suppressed = true;
                break;
              }
            }
          }
          if (suppressed) {
            auto it = fictional_branches.find(agent_name);
            if (it == fictional_branches.end()) {
              const BranchHistory alt =
                  evolve_branches(scenario, Policy::collapse_at({agent_name}));
              it = fictional_branches.emplace(agent_name, alt.final_branches()).first;
            }
            entry.fictional_policy = Policy::collapse_at({agent_name});
            entry.fictional = evaluate_check(scenario, check, it->second);
          }
        }
        table.entries[c].push_back(std::move(entry));
      }
    }
  }
  return table;
}

CheckReportEntry compare_predictions(const PredictionTable& table, const Check& check,
                                     std::optional<double> tolerance_override) {
  std::size_t check_index = table.checks.size();
  for (std::size_t c = 0; c < table.checks.size(); ++c) {
    if (table.checks[c] == check) {
      check_index = c;
      break;
    }
  }
  if (check_index == table.checks.size()) {
    raise(ErrorCode::InvalidScenario, "check not present in prediction table");
  }
  const std::vector<PredictionEntry>& entries = table.entries[check_index];
  for (const auto& agent_name : check.agents) {
    const bool present = std::any_of(entries.begin(), entries.end(),
                                     [&](const PredictionEntry& e) { return e.agent == agent_name; });
    if (!present) {
      raise(ErrorCode::MissingAgent, "no prediction entries for agent '" + agent_name + "'");
    }
  }

  CheckReportEntry report;
  report.check = check;
  report.name = check_name(check);
  report.tolerance = tolerance_override.value_or(check.tolerance);
  report.entries = entries;

  auto gap_verdict = [&](const PredictionEntry& x, const PredictionEntry& y) {
    if (x.value.type == CheckValue::Type::Definability &&
        x.value.definite.has_value() != y.value.definite.has_value()) {
      return std::make_pair(1.0, Verdict::DefinabilityMismatch);
    }
    const double gap = value_gap(x.value, y.value);
    return std::make_pair(gap, gap > report.tolerance ? Verdict::Contradiction
                                                      : Verdict::Consistent);
  };

  // One comparison per unordered policy pair; a lone policy compares with
  // itself across its agents.
  const std::size_t policy_count = table.policies.size();
  for (std::size_t i = 0; i < policy_count; ++i) {
    for (std::size_t j = i; j < policy_count; ++j) {
      if (i == j && policy_count > 1) continue;
      PairComparison pair;
      pair.a = table.policies[i];
      pair.b = table.policies[j];
      for (const auto& x : entries) {
        if (!(x.policy == pair.a)) continue;
        for (const auto& y : entries) {
          if (!(y.policy == pair.b)) continue;
          if (i == j && x.agent == y.agent) continue;
          const auto [gap, verdict] = gap_verdict(x, y);
          if (verdict == Verdict::DefinabilityMismatch) {
            pair.verdict = Verdict::DefinabilityMismatch;
            pair.gap = std::max(pair.gap, gap);
          } else if (gap > pair.gap) {
            pair.gap = gap;
            if (pair.verdict != Verdict::DefinabilityMismatch) pair.verdict = verdict;
          }
        }
      }
      report.max_gap = std::max(report.max_gap, pair.gap);
      if (pair.verdict == Verdict::DefinabilityMismatch) {
        report.verdict = Verdict::DefinabilityMismatch;
      } else if (pair.verdict == Verdict::Contradiction &&
                 report.verdict == Verdict::Consistent) {
        report.verdict = Verdict::Contradiction;
      }
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

Verdict overall_verdict(const ConsistencyReport& report) {
  Verdict verdict = Verdict::Consistent;
  for (const auto& entry : report.checks) {
    if (entry.verdict == Verdict::DefinabilityMismatch) return Verdict::DefinabilityMismatch;
    if (entry.verdict == Verdict::Contradiction) verdict = Verdict::Contradiction;
  }
  return verdict;
}

ConsistencyReport check_scenario(const Scenario& scenario, const std::vector<Policy>& policies,
                                 std::uint64_t seed,
                                 std::optional<double> tolerance_override) {
  const PredictionTable table = build_prediction_table(scenario, policies);

  ConsistencyReport report;
  report.scenario = scenario.name;
  report.policies = policies;
  report.seed = seed;
  for (const auto& check : scenario.checks) {
    report.checks.push_back(compare_predictions(table, check, tolerance_override));
  }
  return report;
}

MonteCarloSection monte_carlo_check(const Scenario& scenario, const Policy& policy,
                                    std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    raise(ErrorCode::InvalidScenario, "monte_carlo_check needs at least one run");
  }
  const BranchHistory history = evolve_branches(scenario, policy);
  const std::vector<Branch>& final_branches = history.final_branches();

  // Sampling bases for the checks that have a frequency form.
  struct Sampler {
    std::size_t check_index;
    std::string name;
    MeasurementBasis basis;
    OutcomeDistribution analytic;
  };
  std::vector<Sampler> samplers;
  for (std::size_t c = 0; c < scenario.checks.size(); ++c) {
    const Check& check = scenario.checks[c];
    if (check.kind == CheckKind::Definability || check.kind == CheckKind::Witness) continue;
    MeasurementBasis basis = check.kind == CheckKind::Records
                                 ? records_product_basis(scenario, check.records)
                                 : make_basis(scenario.reg, check.targets, check.basis);
    OutcomeDistribution analytic = weighted_distribution(final_branches, basis);
    samplers.push_back({c, check_name(check), std::move(basis), std::move(analytic)});
  }

  std::vector<std::vector<std::size_t>> counts(samplers.size());
  for (auto& row : counts) row.clear();
  for (std::size_t s = 0; s < samplers.size(); ++s) {
    counts[s].assign(samplers[s].analytic.size(), 0);
  }

  MonteCarloSection section;
  section.policy = policy;
  section.runs = n;
  section.seed = seed;

  for (std::size_t run = 0; run < n; ++run) {
    RandomStream rng = derive_run_stream(seed, run);
    Trajectory trajectory = run_trajectory(scenario, policy, rng);
    if (n <= kTrajectoryListLimit) {
      section.trajectories.push_back({run, trajectory.records});
    }
    for (std::size_t s = 0; s < samplers.size(); ++s) {
      const OutcomeDistribution dist = born_distribution(trajectory.final_state, samplers[s].basis);
      const std::size_t pick = outcome_index_for_draw(dist, rng.next_double());
      ++counts[s][pick];
    }
  }

  for (std::size_t s = 0; s < samplers.size(); ++s) {
    MonteCarloCheckEntry entry;
    entry.name = samplers[s].name;
    for (std::size_t o = 0; o < samplers[s].analytic.size(); ++o) {
      MonteCarloOutcome outcome;
      outcome.label = samplers[s].analytic[o].first;
      outcome.analytic = samplers[s].analytic[o].second;
      outcome.count = counts[s][o];
      outcome.frequency = static_cast<double>(counts[s][o]) / static_cast<double>(n);
      if (n >= 2) {
        const double p = outcome.analytic;
        const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        outcome.sigma = sigma;
        outcome.flagged = sigma > 0.0
                              ? std::abs(outcome.frequency - p) > 3.0 * sigma
                              : outcome.frequency != p;
      }
      entry.flagged = entry.flagged || outcome.flagged;
      entry.outcomes.push_back(std::move(outcome));
    }
    section.any_flagged = section.any_flagged || entry.flagged;
    section.checks.push_back(std::move(entry));
  }
  return section;
}

}  // namespace wignerlab
