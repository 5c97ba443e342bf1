#include "cmdp/mapping_trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "detail.hpp"

namespace cmdp {

namespace {

struct TrajectoryModel {
  TabularMdp mdp;
  StochasticPolicy policy;
  std::vector<double> normalized_values;
  std::vector<StateId> starts;
  std::size_t horizon;

  bool valid(const Trajectory& tau) const {
    if (tau.start >= mdp.num_states()) return false;
    return std::all_of(tau.steps.begin(), tau.steps.end(), [&](const Step& step) {
      return step.action < mdp.num_actions() && step.next < mdp.num_states();
    });
  }
};

double step_probability(const TabularMdp& mdp, const StochasticPolicy& policy, StateId s, const Step& step) {
  return policy.prob(s, step.action) * mdp.transition(step.action, s, step.next);
}

void check_indices(const TabularMdp& mdp, const Trajectory& tau) {
  if (tau.start >= mdp.num_states()) throw std::out_of_range("trajectory start out of range");
  for (const Step& step : tau.steps) {
    if (step.action >= mdp.num_actions() || step.next >= mdp.num_states()) {
      throw std::out_of_range("trajectory step out of range");
    }
  }
}

void check_config(const MtauConfig& cfg, const std::vector<StateId>& starts, const TabularMdp& mdp) {
  validate_thresholds(cfg.alpha, cfg.beta);
  if (cfg.horizon == 0) throw DomainError("horizon required (must be >= 1)");
  if (starts.empty()) throw DomainError("the trajectory mapping needs at least one start state");
  for (StateId s : starts) {
    if (s >= mdp.num_states()) throw DomainError("start state out of range");
  }
}

// Depth-first over all extensions of `tau` in Concept order. `keep` decides
// whether a trajectory with probability p is emitted and extended.
template <class Keep>
void extend(const TrajectoryModel& m, Trajectory& tau, double p, const Keep& keep,
            std::vector<Concept>& out) {
  if (!keep(p)) return;
  out.emplace_back(tau);
  if (tau.length() == m.horizon) return;
  const StateId s = tau.last_state();
  for (ActionId a = 0; a < m.mdp.num_actions(); ++a) {
    for (StateId next = 0; next < m.mdp.num_states(); ++next) {
      tau.steps.push_back({a, next});
      extend(m, tau, p * step_probability(m.mdp, m.policy, s, tau.steps.back()), keep, out);
      tau.steps.pop_back();
    }
  }
}

std::size_t domain_size(const TabularMdp& mdp, std::size_t horizon, std::size_t num_starts) {
  const double branching = static_cast<double>(mdp.num_states() * mdp.num_actions());
  double total = 0.0;
  double level = 1.0;
  for (std::size_t k = 0; k <= horizon; ++k) {
    total += level;
    level *= branching;
  }
  total *= static_cast<double>(num_starts);
  return total > static_cast<double>(std::numeric_limits<std::size_t>::max())
             ? std::numeric_limits<std::size_t>::max()
             : static_cast<std::size_t>(total);
}

}  // namespace

double trajectory_acceptability(const TabularMdp& mdp, const StochasticPolicy& policy, const Trajectory& tau) {
  check_indices(mdp, tau);
  double p = 1.0;
  for (std::size_t i = 0; i < tau.length(); ++i) {
    p = p * step_probability(mdp, policy, tau.state_before(i), tau.steps[i]);
  }
  return p;
}

double conditional_trajectory_acceptability(const TabularMdp& mdp, const StochasticPolicy& policy,
                                            const Trajectory& prefix, const Trajectory& tau) {
  check_indices(mdp, tau);
  if (prefix.start != tau.start || prefix.length() > tau.length() ||
      !std::equal(prefix.steps.begin(), prefix.steps.end(), tau.steps.begin())) {
    throw DomainError("conditioning trajectory is not a prefix");
  }
  double p = 1.0;
  for (std::size_t i = prefix.length(); i < tau.length(); ++i) {
    p = p * step_probability(mdp, policy, tau.state_before(i), tau.steps[i]);
  }
  return p;
}

LogProbabilityParts decompose_log_probability(const TabularMdp& mdp, const StochasticPolicy& policy,
                                              const Trajectory& tau) {
  check_indices(mdp, tau);
  LogProbabilityParts parts;
  for (std::size_t i = 0; i < tau.length(); ++i) {
    const StateId s = tau.state_before(i);
    parts.policy += std::log(policy.prob(s, tau.steps[i].action));
    parts.transition += std::log(mdp.transition(tau.steps[i].action, s, tau.steps[i].next));
  }
  return parts;
}

EcsInstance build_mtau(const TabularMdp& mdp, const StochasticPolicy& policy, const ValueEstimate& values,
                       const MtauConfig& cfg, const std::vector<StateId>& starts) {
  check_config(cfg, starts, mdp);
  detail::require_valid(validate_mdp(mdp));
  detail::require_valid(validate_policy(mdp, policy));
  detail::require_valid(validate_values(mdp, values));

  std::vector<StateId> sorted_starts = starts;
  std::sort(sorted_starts.begin(), sorted_starts.end());
  sorted_starts.erase(std::unique(sorted_starts.begin(), sorted_starts.end()), sorted_starts.end());

  auto model = std::make_shared<const TrajectoryModel>(TrajectoryModel{
      mdp, policy, normalize(values.value, cfg.normalization), std::move(sorted_starts), cfg.horizon});

  EcsInstance ecs;
  ecs.mapping = MappingKind::trajectory;
  ecs.alpha = cfg.alpha;
  ecs.beta = cfg.beta;
  ecs.horizon = cfg.horizon;
  ecs.growing_concepts = true;

  ecs.enumerate = [model] {
    if (domain_size(model->mdp, model->horizon, model->starts.size()) > kMaxEnumeratedTrajectories) {
      throw DomainError("trajectory domain exceeds " + std::to_string(kMaxEnumeratedTrajectories) +
                        " entries; lower the horizon");
    }
    std::vector<Concept> out;
    for (StateId s : model->starts) {
      Trajectory tau{s, {}};
      extend(*model, tau, 1.0, [](double) { return true; }, out);
    }
    return out;
  };
  // p is nonincreasing along extensions, so a prefix at or below alpha
  // rules out its whole subtree.
  ecs.enumerate_above = [model](double alpha) {
    std::vector<Concept> out;
    for (StateId s : model->starts) {
      Trajectory tau{s, {}};
      extend(*model, tau, 1.0, [alpha](double p) { return p > alpha; }, out);
    }
    return ConceptSet(out);
  };
  // Every state is the final state of its own empty trajectory, and the
  // evaluation only looks at the final state.
  std::vector<Concept> witnesses;
  for (StateId s = 0; s < mdp.num_states(); ++s) witnesses.emplace_back(Trajectory{s, {}});
  ecs.subuniverse_witnesses = std::move(witnesses);

  ecs.acceptability = [model](const Concept& c) {
    const auto* tau = std::get_if<Trajectory>(&c);
    return tau != nullptr && model->valid(*tau) ? trajectory_acceptability(model->mdp, model->policy, *tau) : 0.0;
  };
  ecs.evaluation = [model](const Concept& c) {
    const auto* tau = std::get_if<Trajectory>(&c);
    return tau != nullptr && model->valid(*tau) ? model->normalized_values[tau->last_state()] : 0.0;
  };
  ecs.successors = [model](const Concept& c) {
    const auto& tau = std::get<Trajectory>(c);
    const StateId s = tau.last_state();
    std::vector<Concept> out;
    for (ActionId a = 0; a < model->mdp.num_actions(); ++a) {
      if (model->policy.prob(s, a) <= 0.0) continue;
      for (StateId next = 0; next < model->mdp.num_states(); ++next) {
        if (model->mdp.transition(a, s, next) <= 0.0) continue;
        Trajectory extended = tau;
        extended.steps.push_back({a, next});
        out.emplace_back(std::move(extended));
      }
    }
    return out;
  };
  ecs.traverse = [model](const std::vector<Concept>& tuple, Rng& rng) {
    std::vector<Concept> out;
    out.reserve(tuple.size());
    for (const Concept& c : tuple) {
      Trajectory extended = std::get<Trajectory>(c);
      const SampledStep step = sample_step(model->mdp, model->policy, extended.last_state(), rng);
      extended.steps.push_back({step.action, step.next});
      out.emplace_back(std::move(extended));
    }
    return out;
  };
  ecs.resolve_initial = [model](const std::vector<Concept>& initial) {
    std::vector<Concept> out;
    for (const Concept& c : initial) {
      if (std::holds_alternative<EmptyConcept>(c)) {
        for (StateId s : model->starts) out.emplace_back(Trajectory{s, {}});
        continue;
      }
      const auto* tau = std::get_if<Trajectory>(&c);
      if (tau == nullptr || !model->valid(*tau)) {
        throw DomainError("the trajectory mapping starts from ⊤ or valid trajectories");
      }
      out.push_back(c);
    }
    return out;
  };
  return ecs;
}

std::vector<Concept> mtau_initial() { return {EmptyConcept{}}; }

TransformationKind mtau_transformation_kind(const TabularMdp& mdp, const StochasticPolicy& before,
                                            const StochasticPolicy& after, const ValueEstimate& values,
                                            const MtauConfig& cfg, const std::vector<StateId>& starts) {
  detail::require_same_shape(before, after);
  if (before == after) return TransformationKind::none;
  const bool space_changed = conceptual_space(build_mtau(mdp, before, values, cfg, starts)) !=
                             conceptual_space(build_mtau(mdp, after, values, cfg, starts));
  return space_changed ? TransformationKind::n_and_q : TransformationKind::q_only;
}

bool mtau_transformation_valued(const TabularMdp& mdp, const StochasticPolicy& before,
                                const StochasticPolicy& after, const ValueEstimate& values,
                                const MtauConfig& cfg, const std::vector<StateId>& starts) {
  if (mtau_transformation_kind(mdp, before, after, values, cfg, starts) == TransformationKind::none) {
    throw DomainError("policies are identical; there is no transformation to value");
  }
  const EcsInstance old_ecs = build_mtau(mdp, before, values, cfg, starts);
  const EcsInstance new_ecs = build_mtau(mdp, after, values, cfg, starts);
  return admits_new_valued_concepts(old_ecs, mtau_initial(), new_ecs, mtau_initial(),
                                    StepBound::bounded(cfg.horizon), old_ecs.evaluation, cfg.beta);
}

UninspirationFlags mtau_uninspiration(const TabularMdp& mdp, const StochasticPolicy& policy,
                                      const ValueEstimate& values, const MtauConfig& cfg,
                                      const std::vector<StateId>& starts) {
  const EcsInstance ecs = build_mtau(mdp, policy, values, cfg, starts);
  const std::vector<double> normalized = normalize(values.value, cfg.normalization);
  auto is_valued = [&](StateId s) { return normalized[s] > cfg.beta; };

  // States reachable within the horizon under the policy's support.
  std::vector<bool> seen(mdp.num_states(), false);
  std::vector<StateId> frontier;
  for (StateId s : starts) {
    if (!seen[s]) {
      seen[s] = true;
      frontier.push_back(s);
    }
  }
  for (std::size_t depth = 0; depth < cfg.horizon && !frontier.empty(); ++depth) {
    std::vector<StateId> next_frontier;
    for (StateId s : frontier) {
      for (ActionId a = 0; a < mdp.num_actions(); ++a) {
        if (policy.prob(s, a) <= 0.0) continue;
        for (StateId next = 0; next < mdp.num_states(); ++next) {
          if (mdp.transition(a, s, next) > 0.0 && !seen[next]) {
            seen[next] = true;
            next_frontier.push_back(next);
          }
        }
      }
    }
    frontier = std::move(next_frontier);
  }

  UninspirationFlags flags;
  flags.generative = true;
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    if (seen[s] && is_valued(s)) flags.generative = false;
  }
  flags.conceptual = true;
  for (const Concept& c : conceptual_space(ecs)) {
    if (is_valued(std::get<Trajectory>(c).last_state())) {
      flags.conceptual = false;
      break;
    }
  }
  bool any_valued = false;
  for (StateId s = 0; s < mdp.num_states(); ++s) any_valued = any_valued || is_valued(s);
  flags.hopeless = !any_valued;
  return flags;
}

}  // namespace cmdp
