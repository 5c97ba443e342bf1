#include "cmdp/mapping_transition.hpp"

#include <memory>
#include <stdexcept>

#include "detail.hpp"

namespace cmdp {

namespace {

struct TransitionModel {
  TabularMdp mdp;
  StochasticPolicy policy;
  std::vector<double> normalized_rewards;  // [s][a][s'], Concept order

  std::size_t offset(const TransitionConcept& t) const {
    return (t.state * mdp.num_actions() + t.action) * mdp.num_states() + t.next;
  }
  bool in_range(const TransitionConcept& t) const {
    return t.state < mdp.num_states() && t.action < mdp.num_actions() && t.next < mdp.num_states();
  }
};

void append_supported(const TabularMdp& mdp, const StochasticPolicy& policy, StateId s,
                      std::vector<Concept>& out) {
  for (ActionId a = 0; a < mdp.num_actions(); ++a) {
    if (policy.prob(s, a) <= 0.0) continue;
    for (StateId next = 0; next < mdp.num_states(); ++next) {
      if (mdp.transition(a, s, next) > 0.0) out.emplace_back(TransitionConcept{s, a, next});
    }
  }
}

}  // namespace

double transition_acceptability(const TabularMdp& mdp, const StochasticPolicy& policy,
                                const TransitionConcept& delta) {
  if (delta.state >= mdp.num_states() || delta.action >= mdp.num_actions() ||
      delta.next >= mdp.num_states()) {
    throw std::out_of_range("transition index out of range");
  }
  return mdp.transition(delta.action, delta.state, delta.next) * policy.prob(delta.state, delta.action);
}

EcsInstance build_msas(const TabularMdp& mdp, const StochasticPolicy& policy, const MsasConfig& cfg) {
  validate_thresholds(cfg.alpha, cfg.beta);
  detail::require_valid(validate_mdp(mdp));
  detail::require_valid(validate_policy(mdp, policy));

  auto model = std::make_shared<const TransitionModel>(
      TransitionModel{mdp, policy, normalize(mdp.reward_table(), cfg.normalization)});

  EcsInstance ecs;
  ecs.mapping = MappingKind::transition;
  ecs.alpha = cfg.alpha;
  ecs.beta = cfg.beta;
  ecs.enumerate = [model] {
    const auto& m = model->mdp;
    std::vector<Concept> out;
    out.reserve(m.num_states() * m.num_actions() * m.num_states());
    for (StateId s = 0; s < m.num_states(); ++s) {
      for (ActionId a = 0; a < m.num_actions(); ++a) {
        for (StateId next = 0; next < m.num_states(); ++next) out.emplace_back(TransitionConcept{s, a, next});
      }
    }
    return out;
  };
  ecs.subuniverse_witnesses = ecs.enumerate();
  ecs.acceptability = [model](const Concept& c) {
    const auto* t = std::get_if<TransitionConcept>(&c);
    return t != nullptr && model->in_range(*t) ? transition_acceptability(model->mdp, model->policy, *t) : 0.0;
  };
  ecs.evaluation = [model](const Concept& c) {
    const auto* t = std::get_if<TransitionConcept>(&c);
    return t != nullptr && model->in_range(*t) ? model->normalized_rewards[model->offset(*t)] : 0.0;
  };
  ecs.successors = [model](const Concept& c) {
    std::vector<Concept> out;
    append_supported(model->mdp, model->policy, std::get<TransitionConcept>(c).next, out);
    return out;
  };
  ecs.traverse = [model](const std::vector<Concept>& tuple, Rng& rng) {
    std::vector<Concept> out;
    out.reserve(tuple.size());
    for (const Concept& c : tuple) {
      const StateId s = std::get<TransitionConcept>(c).next;
      const SampledStep step = sample_step(model->mdp, model->policy, s, rng);
      out.emplace_back(TransitionConcept{s, step.action, step.next});
    }
    return out;
  };
  ecs.resolve_initial = [model](const std::vector<Concept>& initial) {
    for (const Concept& c : initial) {
      const auto* t = std::get_if<TransitionConcept>(&c);
      if (t == nullptr) throw DomainError("the transition mapping needs explicit start transitions");
      if (!model->in_range(*t)) throw DomainError("start transition out of range");
    }
    return initial;
  };
  return ecs;
}

std::vector<Concept> msas_initial(const TabularMdp& mdp, const StochasticPolicy& policy,
                                  const std::vector<StateId>& starts) {
  std::vector<Concept> out;
  for (StateId s : starts) {
    if (s >= mdp.num_states()) throw DomainError("start state out of range");
    append_supported(mdp, policy, s, out);
  }
  return out;
}

TransformationKind msas_transformation_kind(const TabularMdp& mdp, const StochasticPolicy& before,
                                            const StochasticPolicy& after, const MsasConfig& cfg) {
  detail::require_same_shape(before, after);
  if (before == after) return TransformationKind::none;
  const bool space_changed =
      conceptual_space(build_msas(mdp, before, cfg)) != conceptual_space(build_msas(mdp, after, cfg));
  return space_changed ? TransformationKind::n_and_q : TransformationKind::q_only;
}

bool msas_transformation_valued(const TabularMdp& mdp, const StochasticPolicy& before,
                                const StochasticPolicy& after, const MsasConfig& cfg,
                                const std::vector<StateId>& starts) {
  if (msas_transformation_kind(mdp, before, after, cfg) == TransformationKind::none) {
    throw DomainError("policies are identical; there is no transformation to value");
  }
  const EcsInstance old_ecs = build_msas(mdp, before, cfg);
  const EcsInstance new_ecs = build_msas(mdp, after, cfg);
  return admits_new_valued_concepts(old_ecs, msas_initial(mdp, before, starts), new_ecs,
                                    msas_initial(mdp, after, starts), StepBound::fixpoint(),
                                    old_ecs.evaluation, cfg.beta);
}

}  // namespace cmdp
