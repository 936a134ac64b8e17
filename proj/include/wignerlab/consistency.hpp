#pragma once

#include <optional>

#include "wignerlab/policies.hpp"

namespace wignerlab {

// Trajectory record lists are embedded in Monte Carlo reports only up to
// this many runs; beyond it the report keeps aggregate frequencies.
inline constexpr std::size_t kTrajectoryListLimit = 32;

enum class Verdict { Consistent, Contradiction, DefinabilityMismatch };

const char* to_string(Verdict verdict);

// The quantity a check produces for one (agent, policy) cell.
struct CheckValue {
  enum class Type { Distribution, Definability, Witness };

  Type type = Type::Distribution;
  OutcomeDistribution distribution;
  std::optional<double> outcome_probability;  // Outcome checks: p of the named outcome
  std::optional<double> definite;             // Definability: nullopt = Undefined
  std::optional<double> witness;
};

// Total-variation distance between two values of the same type. Mixed
// Definite/Undefined cells have no numeric gap; callers detect that case
// before asking for one.
double value_gap(const CheckValue& a, const CheckValue& b);

struct PredictionEntry {
  std::string agent;
  Policy policy;
  CheckValue value;
  // Unitary-only rows for agents whose own measurement the policy suppressed
  // also carry the prediction the forbidden collapsed assignment would have
  // made. Reported as FICTIONAL; it is not a state the policy licenses.
  std::optional<Policy> fictional_policy;
  std::optional<CheckValue> fictional;
};

// Every (agent, policy, check) cell of a scenario evaluation.
struct PredictionTable {
  std::string scenario;
  std::vector<Policy> policies;
  std::vector<Check> checks;
  std::vector<std::vector<PredictionEntry>> entries;  // indexed like `checks`
};

// Errors: InvalidScenario.
PredictionTable build_prediction_table(const Scenario& scenario,
                                       const std::vector<Policy>& policies);

struct PairComparison {
  Policy a;
  Policy b;
  double gap = 0.0;
  Verdict verdict = Verdict::Consistent;
};

struct CheckReportEntry {
  Check check;
  std::string name;
  double tolerance = kDefaultCheckTolerance;
  std::vector<PredictionEntry> entries;
  std::vector<PairComparison> pairs;  // one per unordered policy pair
  double max_gap = 0.0;
  Verdict verdict = Verdict::Consistent;
};

// Pairwise comparison of one check's table cells. With a single policy the
// self-pair compares the policy's agents against each other.
// Errors: MissingAgent when a referenced agent has no table entry.
CheckReportEntry compare_predictions(const PredictionTable& table, const Check& check,
                                     std::optional<double> tolerance_override = std::nullopt);

struct MonteCarloOutcome {
  std::string label;
  double analytic = 0.0;
  std::size_t count = 0;
  double frequency = 0.0;
  std::optional<double> sigma;  // binomial sigma at the analytic p; absent for n = 1
  bool flagged = false;         // |frequency - analytic| beyond 3 sigma
};

struct MonteCarloCheckEntry {
  std::string name;
  std::vector<MonteCarloOutcome> outcomes;
  bool flagged = false;
};

struct TrajectorySummary {
  std::uint64_t run = 0;
  std::vector<std::pair<std::string, std::string>> records;
};

struct MonteCarloSection {
  Policy policy;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
  std::vector<MonteCarloCheckEntry> checks;
  std::vector<TrajectorySummary> trajectories;  // populated when runs <= kTrajectoryListLimit
  bool any_flagged = false;
};

struct ConsistencyReport {
  std::string scenario;
  std::vector<Policy> policies;
  std::uint64_t seed = 0;
  std::vector<CheckReportEntry> checks;
  std::optional<MonteCarloSection> monte_carlo;
};

Verdict overall_verdict(const ConsistencyReport& report);

// Evaluates every check analytically under each policy for each agent.
// Pure data out; no side effects. Errors: InvalidScenario.
ConsistencyReport check_scenario(const Scenario& scenario, const std::vector<Policy>& policies,
                                 std::uint64_t seed = 0,
                                 std::optional<double> tolerance_override = std::nullopt);

// Empirical outcome frequencies for the scenario's distribution-style checks
// over n seeded runs, with binomial sigma bands against the analytic values.
// Definability and witness checks have no sampling form and are omitted.
// Errors: InvalidScenario.
MonteCarloSection monte_carlo_check(const Scenario& scenario, const Policy& policy,
                                    std::size_t n, std::uint64_t seed);

// Shared with the Monte Carlo path: one check's analytic value from the
// final branch set of a policy evaluation.
CheckValue evaluate_check(const Scenario& scenario, const Check& check,
                          const std::vector<Branch>& branches);

}  // namespace wignerlab
