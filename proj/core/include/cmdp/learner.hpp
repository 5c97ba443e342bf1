#pragma once

// Tabular solvers that produce evolving policies and value estimates for
// the analyzer to inspect.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cmdp/mdp.hpp"
#include "cmdp/run_record.hpp"

namespace cmdp {

struct LearnerConfig {
  enum class Algorithm { value_iteration, tabular_td };

  Algorithm algorithm = Algorithm::tabular_td;
  double gamma = 0.9;
  /// Sup-norm Bellman residual at which value iteration stops.
  double tolerance = 1e-10;
  std::size_t max_iterations = 100'000;
  std::size_t episodes = 500;
  std::size_t max_episode_steps = 20;
  double epsilon = 0.1;
  /// Initial step size; the step for a state-action pair visited n times is
  /// learning_rate / n^0.7.
  double learning_rate = 1.0;
  /// Snapshot every this many episodes (TD) or sweeps (value iteration).
  std::size_t snapshot_every = 10;
  std::uint64_t seed = 0;
  /// Episode start states, drawn uniformly. Defaults to the first state.
  std::vector<StateId> starts;
};

std::string to_string(LearnerConfig::Algorithm algorithm);
LearnerConfig::Algorithm parse_algorithm(const std::string& name);

/// Throws DomainError for out-of-range settings.
void validate_config(const TabularMdp& mdp, const LearnerConfig& cfg);

struct ValueIterationResult {
  ValueEstimate values;
  StochasticPolicy greedy;
  std::size_t iterations = 0;
};

/// Q(s,a) = sum_s' T_a(s,s') (R(s,a,s') + gamma V(s')).
std::vector<double> action_values(const TabularMdp& mdp, const ValueEstimate& values, double gamma);

/// Deterministic greedy policy; ties go to the lowest action index.
StochasticPolicy greedy_policy(const TabularMdp& mdp, const ValueEstimate& values, double gamma);

/// Most probable action per state, lowest index on ties.
std::vector<ActionId> greedy_actions(const StochasticPolicy& policy);

/// Runs Bellman optimality sweeps until the residual drops below the
/// tolerance. Throws DomainError for gamma >= 1 or when max_iterations is
/// exhausted.
ValueIterationResult value_iteration(const TabularMdp& mdp, const LearnerConfig& cfg);

/// Value iteration as a run: a uniform-policy snapshot, then the greedy
/// policy and value estimate every `snapshot_every` sweeps and at
/// convergence. No experience.
RunRecord value_iteration_run(const TabularMdp& mdp, const LearnerConfig& cfg);

/// Episodic Q-learning. The acting policy is epsilon-greedy with respect to
/// the estimates as of the latest snapshot, so every experience entry was
/// generated by the policy of the snapshot it is attributed to.
RunRecord td_learn(const TabularMdp& mdp, const LearnerConfig& cfg);

/// Dispatches on cfg.algorithm.
RunRecord learn(const TabularMdp& mdp, const LearnerConfig& cfg);

}  // namespace cmdp
