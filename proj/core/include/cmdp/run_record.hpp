#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmdp/mdp.hpp"

namespace cmdp {

/// Policy (and optionally value estimate) in force from `step` onwards.
struct Snapshot {
  std::size_t step = 0;
  StochasticPolicy policy;
  std::optional<ValueEstimate> values;

  bool operator==(const Snapshot&) const = default;
};

/// One sampled interaction, attributed to the snapshot whose policy chose
/// the action.
struct Experience {
  std::size_t step = 0;
  std::size_t episode = 0;
  std::size_t snapshot = 0;
  StateId state = 0;
  ActionId action = 0;
  StateId next = 0;
  double reward = 0.0;

  bool operator==(const Experience&) const = default;
};

/// A learning (or scripted) run: evolving policies plus the experience they
/// generated. Refers to its MDP by label when serialized.
struct RunRecord {
  std::string algorithm;
  std::optional<std::uint64_t> seed;
  std::vector<StateId> starts;
  std::vector<Snapshot> snapshots;
  std::vector<Experience> experience;

  bool operator==(const RunRecord&) const = default;
};

/// Snapshot steps strictly increasing, every policy/value/experience entry
/// valid for `mdp`, experience steps strictly increasing and attributed to
/// an existing snapshot.
ValidationResult validate_run(const TabularMdp& mdp, const RunRecord& run);

}  // namespace cmdp
