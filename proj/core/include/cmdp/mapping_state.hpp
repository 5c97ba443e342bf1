#pragma once

// Concepts are states. Acceptability is membership of the state space, so
// the conceptual space is S for alpha < 1 and empty for alpha = 1.

#include <vector>

#include "cmdp/csf.hpp"
#include "cmdp/mdp.hpp"
#include "cmdp/normalization.hpp"

namespace cmdp {

struct MsConfig {
  double alpha = 0.05;
  double beta = 0.5;
  Normalization normalization;
};

/// Membership function of S: 1 for states of the MDP, 0 for anything else.
double state_membership(const TabularMdp& mdp, const Concept& c);

/// Throws DomainError if the values or policy do not match the MDP.
EcsInstance build_ms(const TabularMdp& mdp, const StochasticPolicy& policy, const ValueEstimate& values,
                     const MsConfig& cfg);

/// Start states as an initial tuple.
std::vector<Concept> ms_initial(const std::vector<StateId>& starts);

/// Any policy change is a Q-transformation; an N-transformation cannot occur
/// because acceptability does not depend on the policy.
TransformationKind ms_transformation_kind(const StochasticPolicy& before, const StochasticPolicy& after);

}  // namespace cmdp
