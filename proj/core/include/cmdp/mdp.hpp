#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cmdp {

using StateId = std::size_t;
using ActionId = std::size_t;

/// Caller-owned random source. All sampling in the library is a pure
/// function of its inputs and the state of this engine.
using Rng = std::mt19937_64;

/// Tolerance on row sums of transition and policy tables.
inline constexpr double kRowSumTolerance = 1e-9;

/// Ordered, duplicate-free set of string labels mapped to dense indices.
class LabelIndex {
 public:
  LabelIndex() = default;
  explicit LabelIndex(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t index) const { return labels_.at(index); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<std::size_t> find(std::string_view label) const;
  /// Throws DomainError naming the label when it is unknown.
  std::size_t at(std::string_view label) const;

  bool operator==(const LabelIndex& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

/// Finite discrete-time MDP (S, A, T, R).
///
/// `transition` is laid out [action][state][next-state]; `reward_mean` and the
/// optional `reward_noise` are laid out [state][action][next-state]. The
/// constructor checks shapes only. Probability and noise invariants are
/// reported by validate_mdp() so that malformed tables can still be inspected.
class TabularMdp {
 public:
  TabularMdp(std::vector<std::string> states, std::vector<std::string> actions,
             std::vector<double> transition, std::vector<double> reward_mean,
             std::optional<std::vector<double>> reward_noise = std::nullopt);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_actions() const { return actions_.size(); }
  const LabelIndex& states() const { return states_; }
  const LabelIndex& actions() const { return actions_; }

  double transition(ActionId a, StateId s, StateId next) const {
    return transition_[(a * num_states() + s) * num_states() + next];
  }
  std::span<const double> transition_row(ActionId a, StateId s) const {
    return {transition_.data() + (a * num_states() + s) * num_states(), num_states()};
  }
  double reward(StateId s, ActionId a, StateId next) const {
    return reward_mean_[reward_offset(s, a, next)];
  }
  bool has_reward_noise() const { return reward_noise_.has_value(); }
  double reward_noise(StateId s, ActionId a, StateId next) const {
    return reward_noise_ ? (*reward_noise_)[reward_offset(s, a, next)] : 0.0;
  }

  const std::vector<double>& transition_table() const { return transition_; }
  const std::vector<double>& reward_table() const { return reward_mean_; }
  const std::optional<std::vector<double>>& reward_noise_table() const { return reward_noise_; }

  bool operator==(const TabularMdp&) const = default;

 private:
  std::size_t reward_offset(StateId s, ActionId a, StateId next) const {
    return (s * num_actions() + a) * num_states() + next;
  }

  LabelIndex states_;
  LabelIndex actions_;
  std::vector<double> transition_;
  std::vector<double> reward_mean_;
  std::optional<std::vector<double>> reward_noise_;
};

/// Per-state action distribution pi(a | s), laid out [state][action].
class StochasticPolicy {
 public:
  StochasticPolicy(std::size_t num_states, std::size_t num_actions, std::vector<double> probs);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_actions() const { return num_actions_; }
  double prob(StateId s, ActionId a) const { return probs_[s * num_actions_ + a]; }
  std::span<const double> row(StateId s) const {
    return {probs_.data() + s * num_actions_, num_actions_};
  }
  const std::vector<double>& table() const { return probs_; }

  bool operator==(const StochasticPolicy&) const = default;

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  std::vector<double> probs_;
};

StochasticPolicy uniform_policy(const TabularMdp& mdp);
/// One action per state with probability one.
StochasticPolicy deterministic_policy(const TabularMdp& mdp, std::span<const ActionId> actions);

/// Per-state scalar estimate V(s).
struct ValueEstimate {
  std::vector<double> value;
  bool operator==(const ValueEstimate&) const = default;
};

struct Step {
  ActionId action = 0;
  StateId next = 0;
  auto operator<=>(const Step&) const = default;
};

/// (s, a, s', ..., s_last). A trajectory without steps is the empty
/// trajectory anchored at `start`.
struct Trajectory {
  StateId start = 0;
  std::vector<Step> steps;

  std::size_t length() const { return steps.size(); }
  StateId last_state() const { return steps.empty() ? start : steps.back().next; }
  /// State from which step `i` is taken.
  StateId state_before(std::size_t i) const { return i == 0 ? start : steps[i - 1].next; }

  auto operator<=>(const Trajectory&) const = default;
};

struct Violation {
  std::string path;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationResult validate_mdp(const TabularMdp& mdp);
ValidationResult validate_policy(const TabularMdp& mdp, const StochasticPolicy& policy);
ValidationResult validate_values(const TabularMdp& mdp, const ValueEstimate& values);

/// Copy of a valid MDP whose transition rows are rescaled to sum to one.
TabularMdp renormalized(const TabularMdp& mdp);
StochasticPolicy renormalized(const StochasticPolicy& policy);

/// Draws an index with probability proportional to `probs` (which must sum
/// to one). Zero-probability entries are never returned.
std::size_t sample_index(std::span<const double> probs, Rng& rng);

struct SampledStep {
  ActionId action;
  StateId next;
  double reward;
};

/// One interaction step. The reward is the mean reward plus Gaussian noise
/// with the tabulated standard deviation, or exactly the mean without noise.
SampledStep sample_step(const TabularMdp& mdp, const StochasticPolicy& policy, StateId s, Rng& rng);

Trajectory rollout(const TabularMdp& mdp, const StochasticPolicy& policy, StateId start,
                   std::size_t horizon, Rng& rng);

}  // namespace cmdp
