#include "cmdp/mdp.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cmdp/errors.hpp"

namespace cmdp {

namespace {

std::string format_number(double x) {
  std::ostringstream out;
  out.precision(10);
  out << x;
  return out.str();
}

double row_sum(std::span<const double> row) { return std::accumulate(row.begin(), row.end(), 0.0); }

}  // namespace

LabelIndex::LabelIndex(std::vector<std::string> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!lookup_.emplace(labels_[i], i).second) {
      throw DomainError("duplicate label '" + labels_[i] + "'");
    }
  }
}

std::optional<std::size_t> LabelIndex::find(std::string_view label) const {
  auto it = lookup_.find(std::string(label));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t LabelIndex::at(std::string_view label) const {
  if (auto index = find(label)) return *index;
  throw DomainError("unknown label '" + std::string(label) + "'");
}

TabularMdp::TabularMdp(std::vector<std::string> states, std::vector<std::string> actions,
                       std::vector<double> transition, std::vector<double> reward_mean,
                       std::optional<std::vector<double>> reward_noise)
    : states_(std::move(states)),
      actions_(std::move(actions)),
      transition_(std::move(transition)),
      reward_mean_(std::move(reward_mean)),
      reward_noise_(std::move(reward_noise)) {
  if (states_.size() == 0) throw DomainError("an MDP needs at least one state");
  if (actions_.size() == 0) throw DomainError("an MDP needs at least one action");
  const std::size_t cells = states_.size() * actions_.size() * states_.size();
  if (transition_.size() != cells) throw DomainError("transition table has the wrong shape");
  if (reward_mean_.size() != cells) throw DomainError("reward table has the wrong shape");
  if (reward_noise_ && reward_noise_->size() != cells) {
    throw DomainError("reward_noise table has the wrong shape");
  }
}

StochasticPolicy::StochasticPolicy(std::size_t num_states, std::size_t num_actions,
                                   std::vector<double> probs)
    : num_states_(num_states), num_actions_(num_actions), probs_(std::move(probs)) {
  if (probs_.size() != num_states_ * num_actions_) {
    throw DomainError("policy table has the wrong shape");
  }
}

StochasticPolicy uniform_policy(const TabularMdp& mdp) {
  const double p = 1.0 / static_cast<double>(mdp.num_actions());
  return {mdp.num_states(), mdp.num_actions(),
          std::vector<double>(mdp.num_states() * mdp.num_actions(), p)};
}

StochasticPolicy deterministic_policy(const TabularMdp& mdp, std::span<const ActionId> actions) {
  if (actions.size() != mdp.num_states()) throw DomainError("one action per state is required");
  std::vector<double> probs(mdp.num_states() * mdp.num_actions(), 0.0);
  for (StateId s = 0; s < actions.size(); ++s) {
    if (actions[s] >= mdp.num_actions()) throw std::out_of_range("action index out of range");
    probs[s * mdp.num_actions() + actions[s]] = 1.0;
  }
  return {mdp.num_states(), mdp.num_actions(), std::move(probs)};
}

ValidationResult validate_mdp(const TabularMdp& mdp) {
  ValidationResult result;
  auto report = [&](std::string path, std::string message) {
    result.violations.push_back({std::move(path), std::move(message)});
  };
  const auto& S = mdp.states();
  const auto& A = mdp.actions();

  for (ActionId a = 0; a < mdp.num_actions(); ++a) {
    for (StateId s = 0; s < mdp.num_states(); ++s) {
      const std::string row_path = "transitions." + A.label(a) + "." + S.label(s);
      bool entries_ok = true;
      for (StateId next = 0; next < mdp.num_states(); ++next) {
        const double p = mdp.transition(a, s, next);
        const std::string path = row_path + "[" + std::to_string(next) + "]";
        if (!std::isfinite(p)) {
          report(path, "non-finite probability");
          entries_ok = false;
        } else if (p < 0.0) {
          report(path, "negative probability " + format_number(p));
          entries_ok = false;
        } else if (p > 1.0) {
          report(path, "probability " + format_number(p) + " exceeds 1");
          entries_ok = false;
        }
      }
      const double sum = row_sum(mdp.transition_row(a, s));
      if (entries_ok && std::abs(sum - 1.0) > kRowSumTolerance) {
        report(row_path, "row (" + A.label(a) + "," + S.label(s) + ") sums to " + format_number(sum));
      }
    }
  }

  for (StateId s = 0; s < mdp.num_states(); ++s) {
    for (ActionId a = 0; a < mdp.num_actions(); ++a) {
      for (StateId next = 0; next < mdp.num_states(); ++next) {
        const std::string path =
            S.label(s) + "." + A.label(a) + "[" + std::to_string(next) + "]";
        if (!std::isfinite(mdp.reward(s, a, next))) report("rewards." + path, "non-finite reward");
        if (mdp.has_reward_noise()) {
          const double sd = mdp.reward_noise(s, a, next);
          if (!std::isfinite(sd) || sd < 0.0) {
            report("reward_noise." + path, "noise must be a finite value >= 0");
          }
        }
      }
    }
  }
  return result;
}

ValidationResult validate_policy(const TabularMdp& mdp, const StochasticPolicy& policy) {
  ValidationResult result;
  if (policy.num_states() != mdp.num_states() || policy.num_actions() != mdp.num_actions()) {
    result.violations.push_back({"policy", "policy shape does not match the MDP"});
    return result;
  }
  for (StateId s = 0; s < policy.num_states(); ++s) {
    const std::string row_path = "policy." + mdp.states().label(s);
    bool entries_ok = true;
    for (ActionId a = 0; a < policy.num_actions(); ++a) {
      const double p = policy.prob(s, a);
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        result.violations.push_back(
            {row_path + "[" + std::to_string(a) + "]", "probability outside [0,1]"});
        entries_ok = false;
      }
    }
    const double sum = row_sum(policy.row(s));
    if (entries_ok && std::abs(sum - 1.0) > kRowSumTolerance) {
      result.violations.push_back(
          {row_path, "row (" + mdp.states().label(s) + ") sums to " + format_number(sum)});
    }
  }
  return result;
}

ValidationResult validate_values(const TabularMdp& mdp, const ValueEstimate& values) {
  ValidationResult result;
  if (values.value.size() != mdp.num_states()) {
    result.violations.push_back({"values", "value vector does not match the MDP's states"});
    return result;
  }
  for (StateId s = 0; s < values.value.size(); ++s) {
    if (!std::isfinite(values.value[s])) {
      result.violations.push_back({"values." + mdp.states().label(s), "non-finite value"});
    }
  }
  return result;
}

TabularMdp renormalized(const TabularMdp& mdp) {
  std::vector<double> transition = mdp.transition_table();
  const std::size_t n = mdp.num_states();
  for (std::size_t row = 0; row < transition.size() / n; ++row) {
    const std::span<double> cells(transition.data() + row * n, n);
    const double sum = row_sum(cells);
    for (double& p : cells) p /= sum;
  }
  return {mdp.states().labels(), mdp.actions().labels(), std::move(transition),
          mdp.reward_table(), mdp.reward_noise_table()};
}

StochasticPolicy renormalized(const StochasticPolicy& policy) {
  std::vector<double> probs = policy.table();
  const std::size_t n = policy.num_actions();
  for (std::size_t s = 0; s < policy.num_states(); ++s) {
    const std::span<double> cells(probs.data() + s * n, n);
    const double sum = row_sum(cells);
    for (double& p : cells) p /= sum;
  }
  return {policy.num_states(), policy.num_actions(), std::move(probs)};
}

std::size_t sample_index(std::span<const double> probs, Rng& rng) {
  // 53 random mantissa bits; independent of the standard library's
  // distribution implementations.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double cumulative = 0.0;
  std::size_t last_positive = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = i;
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  if (last_positive == probs.size()) throw DomainError("cannot sample from an all-zero distribution");
  return last_positive;
}

SampledStep sample_step(const TabularMdp& mdp, const StochasticPolicy& policy, StateId s, Rng& rng) {
  if (s >= mdp.num_states()) throw std::out_of_range("state index out of range");
  if (policy.num_states() != mdp.num_states() || policy.num_actions() != mdp.num_actions()) {
    throw DomainError("policy shape does not match the MDP");
  }
  const ActionId a = sample_index(policy.row(s), rng);
  const StateId next = sample_index(mdp.transition_row(a, s), rng);
  double reward = mdp.reward(s, a, next);
  const double sd = mdp.reward_noise(s, a, next);
  if (sd > 0.0) reward += std::normal_distribution<double>(0.0, sd)(rng);
  return {a, next, reward};
}

Trajectory rollout(const TabularMdp& mdp, const StochasticPolicy& policy, StateId start,
                   std::size_t horizon, Rng& rng) {
  if (start >= mdp.num_states()) throw std::out_of_range("start state index out of range");
  Trajectory trajectory{start, {}};
  trajectory.steps.reserve(horizon);
  StateId s = start;
  for (std::size_t t = 0; t < horizon; ++t) {
    const SampledStep step = sample_step(mdp, policy, s, rng);
    trajectory.steps.push_back({step.action, step.next});
    s = step.next;
  }
  return trajectory;
}

}  // namespace cmdp
