#include "cmdp/learner.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"

namespace cmdp {

namespace {

ActionId argmax(std::span<const double> xs) {
  ActionId best = 0;
  for (ActionId a = 1; a < xs.size(); ++a) {
    if (xs[a] > xs[best]) best = a;
  }
  return best;
}

StochasticPolicy epsilon_greedy(const TabularMdp& mdp, const std::vector<double>& q, double epsilon) {
  const std::size_t nA = mdp.num_actions();
  std::vector<double> probs(mdp.num_states() * nA, epsilon / static_cast<double>(nA));
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    probs[s * nA + argmax({q.data() + s * nA, nA})] += 1.0 - epsilon;
  }
  return {mdp.num_states(), nA, std::move(probs)};
}

ValueEstimate state_values(const TabularMdp& mdp, const std::vector<double>& q) {
  const std::size_t nA = mdp.num_actions();
  ValueEstimate v{std::vector<double>(mdp.num_states())};
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    v.value[s] = *std::max_element(q.begin() + s * nA, q.begin() + (s + 1) * nA);
  }
  return v;
}

std::vector<StateId> effective_starts(const LearnerConfig& cfg) {
  return cfg.starts.empty() ? std::vector<StateId>{0} : cfg.starts;
}

}  // namespace

std::string to_string(LearnerConfig::Algorithm algorithm) {
  return algorithm == LearnerConfig::Algorithm::value_iteration ? "value-iteration" : "tabular-td";
}

LearnerConfig::Algorithm parse_algorithm(const std::string& name) {
  if (name == "value-iteration" || name == "value_iteration" || name == "vi") {
    return LearnerConfig::Algorithm::value_iteration;
  }
  if (name == "tabular-td" || name == "tabular_td" || name == "td") return LearnerConfig::Algorithm::tabular_td;
  throw DomainError("unknown algorithm '" + name + "'");
}

void validate_config(const TabularMdp& mdp, const LearnerConfig& cfg) {
  if (!(cfg.gamma >= 0.0 && cfg.gamma < 1.0)) throw DomainError("gamma must lie in [0,1)");
  if (!(cfg.tolerance > 0.0)) throw DomainError("tolerance must be positive");
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon <= 1.0)) throw DomainError("epsilon must lie in [0,1]");
  if (!(cfg.learning_rate > 0.0 && cfg.learning_rate <= 1.0)) {
    throw DomainError("learning rate must lie in (0,1]");
  }
  if (cfg.snapshot_every == 0) throw DomainError("snapshot cadence must be at least 1");
  if (cfg.max_episode_steps == 0) throw DomainError("episodes need at least one step");
  for (StateId s : cfg.starts) {
    if (s >= mdp.num_states()) throw DomainError("start state out of range");
  }
}

std::vector<double> action_values(const TabularMdp& mdp, const ValueEstimate& values, double gamma) {
  const std::size_t nA = mdp.num_actions();
  std::vector<double> q(mdp.num_states() * nA, 0.0);
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    for (ActionId a = 0; a < nA; ++a) {
      double total = 0.0;
      for (StateId next = 0; next < mdp.num_states(); ++next) {
        const double p = mdp.transition(a, s, next);
        if (p > 0.0) total += p * (mdp.reward(s, a, next) + gamma * values.value[next]);
      }
      q[s * nA + a] = total;
    }
  }
  return q;
}

StochasticPolicy greedy_policy(const TabularMdp& mdp, const ValueEstimate& values, double gamma) {
  return epsilon_greedy(mdp, action_values(mdp, values, gamma), 0.0);
}

std::vector<ActionId> greedy_actions(const StochasticPolicy& policy) {
  std::vector<ActionId> out(policy.num_states());
  for (StateId s = 0; s < policy.num_states(); ++s) out[s] = argmax(policy.row(s));
  return out;
}

ValueIterationResult value_iteration(const TabularMdp& mdp, const LearnerConfig& cfg) {
  validate_config(mdp, cfg);
  detail::require_valid(validate_mdp(mdp));
  ValueEstimate v{std::vector<double>(mdp.num_states(), 0.0)};
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    const ValueEstimate next = state_values(mdp, action_values(mdp, v, cfg.gamma));
    double residual = 0.0;
    for (StateId s = 0; s < mdp.num_states(); ++s) {
      residual = std::max(residual, std::abs(next.value[s] - v.value[s]));
    }
    v = next;
    if (residual < cfg.tolerance) return {v, greedy_policy(mdp, v, cfg.gamma), it};
  }
  throw DomainError("value iteration did not converge within " + std::to_string(cfg.max_iterations) +
                    " iterations");
}

RunRecord value_iteration_run(const TabularMdp& mdp, const LearnerConfig& cfg) {
  validate_config(mdp, cfg);
  detail::require_valid(validate_mdp(mdp));
  RunRecord run;
  run.algorithm = to_string(LearnerConfig::Algorithm::value_iteration);
  run.starts = effective_starts(cfg);
  ValueEstimate v{std::vector<double>(mdp.num_states(), 0.0)};
  run.snapshots.push_back({0, uniform_policy(mdp), v});
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    const ValueEstimate next = state_values(mdp, action_values(mdp, v, cfg.gamma));
    double residual = 0.0;
    for (StateId s = 0; s < mdp.num_states(); ++s) {
      residual = std::max(residual, std::abs(next.value[s] - v.value[s]));
    }
    v = next;
    const bool done = residual < cfg.tolerance;
    if (done || it % cfg.snapshot_every == 0) {
      run.snapshots.push_back({it, greedy_policy(mdp, v, cfg.gamma), v});
    }
    if (done) return run;
  }
  throw DomainError("value iteration did not converge within " + std::to_string(cfg.max_iterations) +
                    " iterations");
}

RunRecord td_learn(const TabularMdp& mdp, const LearnerConfig& cfg) {
  validate_config(mdp, cfg);
  detail::require_valid(validate_mdp(mdp));
  const std::size_t nA = mdp.num_actions();
  std::vector<double> q(mdp.num_states() * nA, 0.0);
  std::vector<std::size_t> visits(q.size(), 0);
  Rng rng(cfg.seed);

  RunRecord run;
  run.algorithm = to_string(LearnerConfig::Algorithm::tabular_td);
  run.seed = cfg.seed;
  run.starts = effective_starts(cfg);
  run.snapshots.push_back({0, epsilon_greedy(mdp, q, cfg.epsilon), state_values(mdp, q)});

  const std::vector<double> start_weights(run.starts.size(), 1.0 / static_cast<double>(run.starts.size()));
  std::size_t step = 0;
  for (std::size_t episode = 0; episode < cfg.episodes; ++episode) {
    const std::size_t snapshot = run.snapshots.size() - 1;
    const StochasticPolicy& acting = run.snapshots.back().policy;
    StateId s = run.starts[run.starts.size() == 1 ? 0 : sample_index(start_weights, rng)];
    for (std::size_t t = 0; t < cfg.max_episode_steps; ++t, ++step) {
      const SampledStep sampled = sample_step(mdp, acting, s, rng);
      const std::size_t cell = s * nA + sampled.action;
      const double target =
          sampled.reward + cfg.gamma * *std::max_element(q.begin() + sampled.next * nA,
                                                         q.begin() + (sampled.next + 1) * nA);
      ++visits[cell];
      const double rate = cfg.learning_rate / std::pow(static_cast<double>(visits[cell]), 0.7);
      q[cell] += rate * (target - q[cell]);
      run.experience.push_back({step, episode, snapshot, s, sampled.action, sampled.next, sampled.reward});
      s = sampled.next;
    }
    if ((episode + 1) % cfg.snapshot_every == 0 || episode + 1 == cfg.episodes) {
      run.snapshots.push_back({step, epsilon_greedy(mdp, q, cfg.epsilon), state_values(mdp, q)});
    }
  }
  return run;
}

RunRecord learn(const TabularMdp& mdp, const LearnerConfig& cfg) {
  return cfg.algorithm == LearnerConfig::Algorithm::value_iteration ? value_iteration_run(mdp, cfg)
                                                                     : td_learn(mdp, cfg);
}

}  // namespace cmdp
