#include "cmdp/mapping_state.hpp"

#include <memory>

#include "detail.hpp"

namespace cmdp {

using detail::require_valid;

namespace {

struct StateModel {
  TabularMdp mdp;
  StochasticPolicy policy;
  std::vector<double> normalized_values;
};

}  // namespace

double state_membership(const TabularMdp& mdp, const Concept& c) {
  const auto* s = std::get_if<StateConcept>(&c);
  return s != nullptr && s->state < mdp.num_states() ? 1.0 : 0.0;
}

EcsInstance build_ms(const TabularMdp& mdp, const StochasticPolicy& policy, const ValueEstimate& values,
                     const MsConfig& cfg) {
  validate_thresholds(cfg.alpha, cfg.beta);
  require_valid(validate_mdp(mdp));
  require_valid(validate_policy(mdp, policy));
  require_valid(validate_values(mdp, values));

  auto model = std::make_shared<const StateModel>(
      StateModel{mdp, policy, normalize(values.value, cfg.normalization)});

  EcsInstance ecs;
  ecs.mapping = MappingKind::state;
  ecs.alpha = cfg.alpha;
  ecs.beta = cfg.beta;
  ecs.enumerate = [model] {
    std::vector<Concept> out;
    for (StateId s = 0; s < model->mdp.num_states(); ++s) out.emplace_back(StateConcept{s});
    return out;
  };
  // P is the union of all conceivable state spaces; only S can be listed.
  ecs.subuniverse_witnesses = std::nullopt;
  ecs.acceptability = [model](const Concept& c) { return state_membership(model->mdp, c); };
  ecs.evaluation = [model](const Concept& c) {
    const auto* s = std::get_if<StateConcept>(&c);
    return s != nullptr && s->state < model->mdp.num_states() ? model->normalized_values[s->state] : 0.0;
  };
  ecs.successors = [model](const Concept& c) {
    const auto& [s] = std::get<StateConcept>(c);
    std::vector<Concept> out;
    for (StateId next = 0; next < model->mdp.num_states(); ++next) {
      for (ActionId a = 0; a < model->mdp.num_actions(); ++a) {
        if (model->policy.prob(s, a) > 0.0 && model->mdp.transition(a, s, next) > 0.0) {
          out.emplace_back(StateConcept{next});
          break;
        }
      }
    }
    return out;
  };
  ecs.traverse = [model](const std::vector<Concept>& tuple, Rng& rng) {
    std::vector<Concept> out;
    out.reserve(tuple.size());
    for (const Concept& c : tuple) {
      const StateId s = std::get<StateConcept>(c).state;
      out.emplace_back(StateConcept{sample_step(model->mdp, model->policy, s, rng).next});
    }
    return out;
  };
  ecs.resolve_initial = [model](const std::vector<Concept>& initial) {
    for (const Concept& c : initial) {
      const auto* s = std::get_if<StateConcept>(&c);
      if (s == nullptr) throw DomainError("the state mapping needs explicit start states");
      if (s->state >= model->mdp.num_states()) throw DomainError("start state out of range");
    }
    return initial;
  };
  return ecs;
}

std::vector<Concept> ms_initial(const std::vector<StateId>& starts) {
  std::vector<Concept> out;
  for (StateId s : starts) out.emplace_back(StateConcept{s});
  return out;
}

TransformationKind ms_transformation_kind(const StochasticPolicy& before, const StochasticPolicy& after) {
  detail::require_same_shape(before, after);
  return before == after ? TransformationKind::none : TransformationKind::q_only;
}

}  // namespace cmdp
