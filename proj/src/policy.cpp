#include "wignerlab/policy.hpp"

#include <algorithm>

#include "wignerlab/errors.hpp"

namespace wignerlab {

namespace {

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return parts;
}

}  // namespace

bool Policy::collapses_for(const std::string& agent) const {
  return kind == Kind::CollapseAt &&
         std::find(agents.begin(), agents.end(), agent) != agents.end();
}

std::string to_string(const Policy& policy) {
  if (policy.kind == Policy::Kind::UnitaryOnly) return "unitary_only";
  std::string text = "collapse_at:";
  for (std::size_t i = 0; i < policy.agents.size(); ++i) {
    if (i > 0) text += ',';
    text += policy.agents[i];
  }
  return text;
}

Policy parse_policy(const std::string& text) {
  auto list = parse_policy_list(text);
  if (list.size() != 1) {
    raise(ErrorCode::InvalidScenario, "expected a single policy, got '" + text + "'");
  }
  return list.front();
}

std::vector<Policy> parse_policy_list(const std::string& text) {
  std::vector<Policy> policies;
  for (const auto& token : split_commas(text)) {
    if (token.empty()) {
      raise(ErrorCode::InvalidScenario, "empty policy token in '" + text + "'");
    }
    if (token == "unitary_only") {
      policies.push_back(Policy::unitary_only());
      continue;
    }
    const std::string prefix = "collapse_at:";
    if (token.rfind(prefix, 0) == 0) {
      const std::string agent = token.substr(prefix.size());
      if (agent.empty()) {
        raise(ErrorCode::InvalidScenario, "collapse_at needs at least one agent");
      }
      policies.push_back(Policy::collapse_at({agent}));
      continue;
    }
    // Bare name: continues the preceding collapse_at agent list.
    if (!policies.empty() && policies.back().kind == Policy::Kind::CollapseAt) {
      policies.back().agents.push_back(token);
      continue;
    }
    raise(ErrorCode::InvalidScenario, "unknown policy '" + token + "'");
  }
  if (policies.empty()) {
    raise(ErrorCode::InvalidScenario, "empty policy list");
  }
  return policies;
}

}  // namespace wignerlab
