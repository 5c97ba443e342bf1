#pragma once

// Concepts are transitions (s, a, s'). Acceptability is the occurrence
// probability T_a(s,s') * pi(a|s); evaluation is the normalized expected
// reward.

#include <vector>

#include "cmdp/csf.hpp"
#include "cmdp/mdp.hpp"
#include "cmdp/normalization.hpp"

namespace cmdp {

struct MsasConfig {
  double alpha = 0.05;
  double beta = 0.5;
  Normalization normalization;
};

/// T_a(s,s') * pi(a|s). Throws std::out_of_range for invalid indices.
double transition_acceptability(const TabularMdp& mdp, const StochasticPolicy& policy,
                                const TransitionConcept& delta);

EcsInstance build_msas(const TabularMdp& mdp, const StochasticPolicy& policy, const MsasConfig& cfg);

/// Transitions with nonzero probability out of the start states: the
/// concepts a first rollout step can produce.
std::vector<Concept> msas_initial(const TabularMdp& mdp, const StochasticPolicy& policy,
                                  const std::vector<StateId>& starts);

TransformationKind msas_transformation_kind(const TabularMdp& mdp, const StochasticPolicy& before,
                                            const StochasticPolicy& after, const MsasConfig& cfg);

/// True iff the change admits a transition with normalized reward > beta
/// that was neither reachable from the start states nor in the conceptual
/// space under `before`. Throws DomainError when the policies are equal.
bool msas_transformation_valued(const TabularMdp& mdp, const StochasticPolicy& before,
                                const StochasticPolicy& after, const MsasConfig& cfg,
                                const std::vector<StateId>& starts);

}  // namespace cmdp
