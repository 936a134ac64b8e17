#pragma once

#include <string>
#include <vector>

namespace wignerlab {

// State-reduction policy: the configurable Heisenberg cut.
//   UnitaryOnly  no measurement ever reduces the state; agents keep (traced)
//                restrictions of the global pure state
//   CollapseAt   measurements by the named agents project and sample
struct Policy {
  enum class Kind { UnitaryOnly, CollapseAt };

  Kind kind = Kind::UnitaryOnly;
  std::vector<std::string> agents;  // CollapseAt only, nonempty

  static Policy unitary_only() { return {Kind::UnitaryOnly, {}}; }
  static Policy collapse_at(std::vector<std::string> agents) {
    return {Kind::CollapseAt, std::move(agents)};
  }

  bool collapses_for(const std::string& agent) const;

  bool operator==(const Policy&) const = default;
};

// "unitary_only" or "collapse_at:A,B".
std::string to_string(const Policy& policy);

// Parses a single policy token. Errors: InvalidScenario.
Policy parse_policy(const std::string& text);

// Parses a comma-separated policy list. A bare name after a collapse_at
// item extends that item's agent set, so "unitary_only,collapse_at:A,B"
// reads as two policies, the second collapsing at A and B.
std::vector<Policy> parse_policy_list(const std::string& text);

}  // namespace wignerlab
