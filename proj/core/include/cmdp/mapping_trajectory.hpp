#pragma once

// Concepts are finite trajectories (s, a, s', ..., s_last) anchored at
// declared start states. Acceptability is the trajectory probability given
// its start; evaluation is the normalized value of the final state.

#include <cstddef>
#include <vector>

#include "cmdp/csf.hpp"
#include "cmdp/mdp.hpp"
#include "cmdp/normalization.hpp"

namespace cmdp {

struct MtauConfig {
  double alpha = 0.05;
  double beta = 0.5;
  /// Longest trajectory enumerated. Must be at least 1.
  std::size_t horizon = 1;
  Normalization normalization;
};

/// Upper bound on trajectories materialized by a full domain enumeration.
inline constexpr std::size_t kMaxEnumeratedTrajectories = 1'000'000;

/// Product of pi(a|s) * T_a(s,s') along the trajectory; 1 for the empty
/// trajectory. Throws std::out_of_range for invalid indices.
double trajectory_acceptability(const TabularMdp& mdp, const StochasticPolicy& policy, const Trajectory& tau);

/// Probability of the steps of `tau` after `prefix`, i.e. p(tau) / p(prefix)
/// for supported prefixes. Throws DomainError if `prefix` is not a prefix of
/// `tau`.
double conditional_trajectory_acceptability(const TabularMdp& mdp, const StochasticPolicy& policy,
                                            const Trajectory& prefix, const Trajectory& tau);

/// Extension diagnostic: log p(tau) split into the policy's and the
/// dynamics' contributions. Either part is -inf when a factor is zero.
struct LogProbabilityParts {
  double policy = 0.0;
  double transition = 0.0;
};
LogProbabilityParts decompose_log_probability(const TabularMdp& mdp, const StochasticPolicy& policy,
                                              const Trajectory& tau);

/// The sub-universe is restricted to trajectories of length <= horizon from
/// `starts`. Throws DomainError for an empty start list or horizon 0.
EcsInstance build_mtau(const TabularMdp& mdp, const StochasticPolicy& policy, const ValueEstimate& values,
                       const MtauConfig& cfg, const std::vector<StateId>& starts);

/// The blank canvas: resolves to the empty trajectory at each start state.
std::vector<Concept> mtau_initial();

TransformationKind mtau_transformation_kind(const TabularMdp& mdp, const StochasticPolicy& before,
                                            const StochasticPolicy& after, const ValueEstimate& values,
                                            const MtauConfig& cfg, const std::vector<StateId>& starts);

/// Like msas_transformation_valued, over horizon-bounded trajectory sets and
/// with the final-state evaluation of `values` held fixed.
bool mtau_transformation_valued(const TabularMdp& mdp, const StochasticPolicy& before,
                                const StochasticPolicy& after, const ValueEstimate& values,
                                const MtauConfig& cfg, const std::vector<StateId>& starts);

/// Uninspiration computed on states rather than trajectories: the
/// evaluation only depends on s_last, so generative uninspiration reduces to
/// the states reachable within the horizon and hopeless uninspiration to the
/// normalized values over S.
UninspirationFlags mtau_uninspiration(const TabularMdp& mdp, const StochasticPolicy& policy,
                                      const ValueEstimate& values, const MtauConfig& cfg,
                                      const std::vector<StateId>& starts);

}  // namespace cmdp
