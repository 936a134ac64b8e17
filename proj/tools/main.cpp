#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wignerlab/consistency.hpp"
#include "wignerlab/dsl.hpp"
#include "wignerlab/errors.hpp"
#include "wignerlab/report_io.hpp"

namespace {

using namespace wignerlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitContradiction = 2;

struct RunConfig {
  std::string source;
  std::string policies_text;
  std::optional<std::uint64_t> seed;
  std::size_t runs = 1;
  std::optional<double> tolerance;
  std::string format = "text";
  double theta = 0.0;
  std::size_t n_env = 4;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  if (const char* env = std::getenv("WIGNERLAB_SEED")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw Error(ErrorCode::InvalidScenario,
                  "WIGNERLAB_SEED is not an unsigned integer: '" + std::string(env) + "'");
    }
    return value;
  }
  return 0;
}

// Built-in name, or a .scn file path.
Scenario load_scenario(const RunConfig& config) {
  if (is_builtin_scenario(config.source)) {
    BuiltinParams params;
    params.theta = config.theta;
    params.n_env = config.n_env;
    return build_builtin(config.source, params);
  }
  std::ifstream in(config.source, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot read '" + config.source + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  ParseResult result = parse_scenario(buffer.str());
  if (!result.ok()) {
    std::string message = "parse failed";
    for (const auto& diagnostic : result.diagnostics) {
      std::cerr << format_diagnostic(config.source, diagnostic) << "\n";
    }
    throw Error(ErrorCode::InvalidScenario, message);
  }
  return *result.scenario;
}

std::vector<Policy> resolve_policies(const RunConfig& config, const Scenario& scenario) {
  if (!config.policies_text.empty()) return parse_policy_list(config.policies_text);
  if (!scenario.policies.empty()) return scenario.policies;
  return {Policy::unitary_only()};
}

void emit(const RunConfig& config, const ConsistencyReport& report) {
  if (config.format == "json") {
    std::cout << report_to_json(report);
  } else {
    std::cout << report_to_text(report);
  }
}

int cmd_check(const RunConfig& config) {
  const Scenario scenario = load_scenario(config);
  const std::vector<Policy> policies = resolve_policies(config, scenario);
  const ConsistencyReport report =
      check_scenario(scenario, policies, resolve_seed(config.seed), config.tolerance);
  emit(config, report);
  return overall_verdict(report) == Verdict::Consistent ? kExitOk : kExitContradiction;
}

int cmd_run(const RunConfig& config) {
  if (config.runs < 1) {
    throw Error(ErrorCode::InvalidScenario, "--runs must be at least 1");
  }
  const Scenario scenario = load_scenario(config);
  const std::vector<Policy> policies = resolve_policies(config, scenario);
  if (policies.size() != 1) {
    throw Error(ErrorCode::InvalidScenario, "run takes exactly one policy");
  }
  const std::uint64_t seed = resolve_seed(config.seed);

  ConsistencyReport report = check_scenario(scenario, policies, seed, config.tolerance);
  report.monte_carlo = monte_carlo_check(scenario, policies.front(), config.runs, seed);
  emit(config, report);
  return kExitOk;
}

int cmd_parse(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << path << ": cannot read file\n";
    return kExitUsage;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  ParseResult result = parse_scenario(buffer.str());
  for (const auto& diagnostic : result.diagnostics) {
    std::cerr << format_diagnostic(path, diagnostic) << "\n";
  }
  if (!result.ok()) return kExitUsage;
  std::cout << serialize_scenario(*result.scenario);
  return kExitOk;
}

int cmd_list() {
  for (const auto& name : builtin_scenario_names()) {
    std::cout << name << " - " << builtin_summary(name) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nested-observer measurement scenarios: simulate, sample and cross-check\n"
               "per-agent state assignments under unitary-only and collapse policies."};
  app.require_subcommand(1);

  RunConfig config;

  auto add_common = [&](CLI::App* cmd, bool with_policies) {
    cmd->add_option("scenario", config.source, "built-in name or .scn file")->required();
    if (with_policies) {
      cmd->add_option("--policies,-p,--policy", config.policies_text,
                      "comma-separated policies: unitary_only | collapse_at:AGENT[,AGENT...]");
    }
    cmd->add_option("--seed", config.seed, "RNG seed (default: WIGNERLAB_SEED or 0)");
    cmd->add_option("--theta", config.theta, "angle for epr_bell (radians)");
    cmd->add_option("--n-env", config.n_env, "environment qubits for decoherence_demo");
    cmd->add_option("--tol", config.tolerance, "override every check tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", config.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* check = app.add_subcommand("check", "evaluate checks analytically under policies");
  add_common(check, true);

  CLI::App* run = app.add_subcommand("run", "sample seeded trajectories and compare frequencies");
  add_common(run, true);
  run->add_option("--runs", config.runs, "number of trajectories");

  std::string parse_path;
  CLI::App* parse = app.add_subcommand("parse", "validate a .scn file and print canonical form");
  parse->add_option("file", parse_path, ".scn file")->required();

  app.add_subcommand("list", "list built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(config);
    if (run->parsed()) return cmd_run(config);
    if (parse->parsed()) return cmd_parse(parse_path);
    return cmd_list();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidScenario || std::string(e.what()) != "parse failed") {
      std::cerr << "error: " << e.what() << "\n";
    }
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
