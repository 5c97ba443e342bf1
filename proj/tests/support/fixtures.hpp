#pragma once

#include <cstdint>
#include <vector>

#include "cmdp/mdp.hpp"
#include "cmdp/run_record.hpp"

namespace cmdp::testing {

/// Two states, two actions. a0@s0 = (0.9, 0.1), a1@s0 = (0.2, 0.8), s1 is
/// absorbing; reward 1 for every arrival in s1.
TabularMdp chain2();
/// s0: (a0 0.25, a1 0.75); s1: (a0 1, a1 0).
StochasticPolicy chain2_pi_ref();
StochasticPolicy chain2_always(ActionId a);
/// V = (0, 10).
ValueEstimate chain2_values();
/// chain2 with every reward zero.
TabularMdp chain2_zero_rewards();

/// Random MDP with probabilities in multiples of 1/8 (so products hit the
/// thresholds 0.25 / 0.5 exactly and strictness matters), some zero entries
/// and small integer rewards.
TabularMdp random_mdp(Rng& rng, std::size_t max_states, std::size_t max_actions);
StochasticPolicy random_policy(Rng& rng, const TabularMdp& mdp);
ValueEstimate random_values(Rng& rng, const TabularMdp& mdp);
std::vector<StateId> random_starts(Rng& rng, const TabularMdp& mdp);

/// One run with snapshots [before, after], sampling `episodes` episodes of
/// `steps` steps under each policy from the run's start states.
RunRecord scripted_run(const TabularMdp& mdp, const StochasticPolicy& before, const StochasticPolicy& after,
                       std::size_t episodes, std::size_t steps, std::uint64_t seed,
                       std::vector<StateId> starts = {0});

}  // namespace cmdp::testing
