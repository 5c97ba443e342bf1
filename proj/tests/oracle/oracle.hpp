#pragma once

// Brute-force reference implementations of the creative-system definitions.
// Deliberately naive and independent of the production algorithms. Concepts
// are plain index tuples and sets come from exhaustive enumeration. Only the
// MDP and policy types are shared with production code.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cmdp/mdp.hpp"
#include "cmdp/run_record.hpp"

namespace cmdp::oracle {

/// State: {s}. Transition: {s, a, s'}. Trajectory: {s, a, s', a, s', ...}.
using Tuple = std::vector<std::size_t>;
using TupleSet = std::set<Tuple>;

enum class Mapping { state, transition, trajectory };

inline constexpr std::size_t kMaxEntries = 1'000'000;

std::set<StateId> bfs_reachable(const TabularMdp& mdp, const StochasticPolicy& policy,
                                const std::vector<StateId>& starts);

/// Every trajectory of exactly `horizon` steps from `start` (including
/// zero-probability ones) with its probability. Throws std::length_error
/// above kMaxEntries.
std::vector<std::pair<Trajectory, double>> enumerate_trajectories(const TabularMdp& mdp,
                                                                  const StochasticPolicy& policy,
                                                                  StateId start, std::size_t horizon);

/// (x - min) / (max - min), 0.5 everywhere for constant input.
std::vector<double> min_max(const std::vector<double>& xs);

struct Problem {
  Mapping mapping = Mapping::transition;
  const TabularMdp* mdp = nullptr;
  const StochasticPolicy* policy = nullptr;
  /// Required for the state and trajectory mappings.
  const std::vector<double>* values = nullptr;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<StateId> starts;
  /// Trajectory mapping only.
  std::size_t horizon = 0;
};

struct Classification {
  TupleSet conceptual_space;
  TupleSet reachable;
  TupleSet aberrations;
  std::string aberration_class;  // none | perfect | productive | pointless
  bool generative = false;
  bool conceptual = false;
  std::optional<bool> hopeless;
};

/// Acceptability of a tuple under the problem's mapping.
double acceptability(const Problem& problem, const Tuple& item);
/// Evaluation of a tuple under the problem's mapping.
double evaluation(const Problem& problem, const Tuple& item);

/// All definitions applied literally by exhaustive enumeration. The initial
/// concepts are the start states (state mapping), the positive-probability
/// transitions out of the start states (transition mapping) or the empty
/// trajectories at the start states (trajectory mapping, horizon-bounded).
Classification classify_by_definition(const Problem& problem);

/// "none", "q-only" or "n-and-q".
std::string transformation_kind(const Problem& before, const StochasticPolicy& after);

/// Concepts reachable or conceptual after switching to `after` that were
/// neither before.
TupleSet admitted_concepts(const Problem& before, const StochasticPolicy& after);

/// Whether switching to `after` admits new concepts valued under the
/// evaluation of `before`.
bool transformation_valued(const Problem& before, const StochasticPolicy& after);

struct Discovery {
  std::size_t step;
  Tuple item;
};

/// Replays the experience of a run and lists first occurrences of concepts
/// valued above beta under their snapshot. Initial concepts count as seen.
std::vector<Discovery> replay_discoveries(Mapping mapping, const TabularMdp& mdp, const RunRecord& run,
                                          double beta);

}  // namespace cmdp::oracle
