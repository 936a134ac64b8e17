// Randomized valid scenarios for round-trip and property tests.
#pragma once

#include <string>
#include <vector>

#include "test_support.hpp"
#include "wignerlab/scenario.hpp"

namespace testsupport {

using namespace wignerlab;

inline Scenario random_scenario(RandomStream& rng, int tag) {
  Scenario s;
  s.name = "generated_" + std::to_string(tag);

  // 1-5 subsystems of dim 2 or 3.
  const std::size_t n_subs = 1 + static_cast<std::size_t>(rng.next_u64() % 5);
  std::vector<Subsystem> subs;
  for (std::size_t k = 0; k < n_subs; ++k) {
    subs.push_back({"Q" + std::to_string(k), rng.next_u64() % 2 == 0 ? 2u : 3u});
  }
  s.reg = make_register(subs);

  std::vector<std::string> all_labels;
  for (const auto& sub : subs) all_labels.push_back(sub.label);

  // First agent sees everything so checks stay valid; up to two more see
  // random prefixes.
  s.agents.push_back({"Omni", all_labels});
  const std::size_t extra_agents = rng.next_u64() % 3;
  for (std::size_t a = 0; a < extra_agents; ++a) {
    const std::size_t count = 1 + rng.next_u64() % n_subs;
    s.agents.push_back({"Ag" + std::to_string(a),
                        std::vector<std::string>(all_labels.begin(),
                                                 all_labels.begin() + static_cast<long>(count))});
  }

  // Initial state: groups of 1-2 subsystems in declaration order.
  std::size_t covered = 0;
  while (covered < n_subs) {
    std::size_t size = 1 + rng.next_u64() % 2;
    if (covered + size > n_subs) size = 1;
    StateGroup group;
    std::size_t dim = 1;
    for (std::size_t k = 0; k < size; ++k) {
      group.labels.push_back(all_labels[covered + k]);
      dim *= subs[covered + k].dim;
    }
    group.amps = random_amplitudes(rng, dim);
    s.initial_groups.push_back(std::move(group));
    covered += size;
  }

  // Up to 10 events; track recorded computational measurements for signals.
  struct Recorded {
    std::string record;
    std::size_t first_dim;
  };
  std::vector<Recorded> records;
  const std::size_t n_events = rng.next_u64() % 11;
  for (std::size_t e = 0; e < n_events; ++e) {
    const std::size_t pick = rng.next_u64() % 5;
    const std::size_t target_index = rng.next_u64() % n_subs;
    const std::string& target = all_labels[target_index];
    const std::size_t dim = subs[target_index].dim;
    if (pick == 0) {
      s.events.push_back(UnitaryEvent{UnitarySpec::named("FLIP"), {target}});
    } else if (pick == 1) {
      s.events.push_back(
          UnitaryEvent{UnitarySpec::literal(random_unitary(rng, dim)), {target}});
    } else if (pick == 2 && dim == 2) {
      s.events.push_back(UnitaryEvent{UnitarySpec::named("HADAMARD"), {target}});
    } else if (pick == 3) {
      MeasureEvent measure;
      measure.agent = "Omni";
      measure.basis = dim == 2 && rng.next_u64() % 2 == 0 ? BasisSpec::spin(uniform(rng, 0, 3))
                                                          : BasisSpec::computational();
      measure.targets = {target};
      measure.record = "m" + std::to_string(e);
      records.push_back({measure.record, dim});
      s.events.push_back(std::move(measure));
    } else if (pick == 4 && !records.empty()) {
      const Recorded& source = records[rng.next_u64() % records.size()];
      SignalEvent signal;
      signal.record = source.record;
      signal.outcome = std::to_string(rng.next_u64() % source.first_dim);
      signal.action = UnitarySpec::named("FLIP");
      signal.targets = {target};
      s.events.push_back(std::move(signal));
    } else {
      s.events.push_back(NoopEvent{});
    }
  }

  // 0-2 checks against the all-seeing agent.
  const std::size_t n_checks = rng.next_u64() % 3;
  for (std::size_t c = 0; c < n_checks; ++c) {
    Check check;
    const std::size_t target_index = rng.next_u64() % n_subs;
    check.targets = {all_labels[target_index]};
    check.agents = {"Omni"};
    check.tolerance = 1e-9;
    if (rng.next_u64() % 2 == 0) {
      check.kind = CheckKind::Outcome;
      check.basis = BasisSpec::computational();
      check.outcome = std::to_string(rng.next_u64() % subs[target_index].dim);
    } else {
      check.kind = CheckKind::Distribution;
      check.basis = BasisSpec::computational();
    }
    s.checks.push_back(std::move(check));
  }

  if (rng.next_u64() % 2 == 0) s.policies.push_back(Policy::unitary_only());
  if (rng.next_u64() % 3 == 0) s.policies.push_back(Policy::collapse_at({"Omni"}));

  return s;
}

}  // namespace testsupport
