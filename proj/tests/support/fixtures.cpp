#include "fixtures.hpp"

#include <algorithm>

namespace cmdp::testing {

namespace {

std::size_t uniform(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

/// Distribution over n outcomes in eighths, with at least one nonzero entry.
std::vector<double> eighths(Rng& rng, std::size_t n) {
  std::vector<int> counts(n, 0);
  for (int unit = 0; unit < 8; ++unit) {
    // Bias towards a few outcomes so that zero entries are common.
    const std::size_t pick = uniform(rng, 3) == 0 ? uniform(rng, n) : uniform(rng, (n + 1) / 2);
    ++counts[pick];
  }
  std::vector<double> out;
  for (int c : counts) out.push_back(c / 8.0);
  return out;
}

}  // namespace

TabularMdp chain2() {
  // transition[a][s][s']
  std::vector<double> t = {0.9, 0.1, 0.0, 1.0,   // a0
                           0.2, 0.8, 0.0, 1.0};  // a1
  // reward[s][a][s']: 1 when arriving in s1
  std::vector<double> r = {0, 1, 0, 1, 0, 1, 0, 1};
  return {{"s0", "s1"}, {"a0", "a1"}, t, r};
}

StochasticPolicy chain2_pi_ref() { return {2, 2, {0.25, 0.75, 1.0, 0.0}}; }

StochasticPolicy chain2_always(ActionId a) {
  std::vector<double> p(4, 0.0);
  p[a] = 1.0;
  p[2 + a] = 1.0;
  return {2, 2, p};
}

ValueEstimate chain2_values() { return {{0.0, 10.0}}; }

TabularMdp chain2_zero_rewards() {
  const TabularMdp base = chain2();
  return {base.states().labels(), base.actions().labels(), base.transition_table(),
          std::vector<double>(8, 0.0)};
}

TabularMdp random_mdp(Rng& rng, std::size_t max_states, std::size_t max_actions) {
  const std::size_t nS = 1 + uniform(rng, max_states);
  const std::size_t nA = 1 + uniform(rng, max_actions);
  std::vector<std::string> states;
  std::vector<std::string> actions;
  for (std::size_t s = 0; s < nS; ++s) states.push_back("s" + std::to_string(s));
  for (std::size_t a = 0; a < nA; ++a) actions.push_back("a" + std::to_string(a));
  std::vector<double> t;
  for (std::size_t row = 0; row < nA * nS; ++row) {
    auto dist = eighths(rng, nS);
    // Shuffle which successors carry the mass.
    std::rotate(dist.begin(), dist.begin() + static_cast<long>(uniform(rng, nS)), dist.end());
    t.insert(t.end(), dist.begin(), dist.end());
  }
  std::vector<double> r;
  for (std::size_t i = 0; i < nS * nA * nS; ++i) r.push_back(static_cast<double>(uniform(rng, 3)));
  return {states, actions, t, r};
}

StochasticPolicy random_policy(Rng& rng, const TabularMdp& mdp) {
  std::vector<double> p;
  for (std::size_t s = 0; s < mdp.num_states(); ++s) {
    auto dist = eighths(rng, mdp.num_actions());
    std::rotate(dist.begin(), dist.begin() + static_cast<long>(uniform(rng, mdp.num_actions())), dist.end());
    p.insert(p.end(), dist.begin(), dist.end());
  }
  return {mdp.num_states(), mdp.num_actions(), p};
}

ValueEstimate random_values(Rng& rng, const TabularMdp& mdp) {
  ValueEstimate v;
  for (std::size_t s = 0; s < mdp.num_states(); ++s) v.value.push_back(static_cast<double>(uniform(rng, 5)));
  return v;
}

std::vector<StateId> random_starts(Rng& rng, const TabularMdp& mdp) {
  std::vector<StateId> starts{uniform(rng, mdp.num_states())};
  if (mdp.num_states() > 1 && uniform(rng, 3) == 0) {
    const StateId other = uniform(rng, mdp.num_states());
    if (other != starts[0]) starts.push_back(other);
  }
  return starts;
}

RunRecord scripted_run(const TabularMdp& mdp, const StochasticPolicy& before, const StochasticPolicy& after,
                       std::size_t episodes, std::size_t steps, std::uint64_t seed, std::vector<StateId> starts) {
  RunRecord run;
  run.algorithm = "scripted";
  run.seed = seed;
  run.starts = std::move(starts);
  Rng rng(seed);
  std::size_t step = 0;
  std::size_t episode = 0;
  for (std::size_t phase = 0; phase < 2; ++phase) {
    const StochasticPolicy& policy = phase == 0 ? before : after;
    run.snapshots.push_back({step, policy, std::nullopt});
    for (std::size_t e = 0; e < episodes; ++e, ++episode) {
      StateId s = run.starts[e % run.starts.size()];
      for (std::size_t t = 0; t < steps; ++t, ++step) {
        const SampledStep sampled = sample_step(mdp, policy, s, rng);
        run.experience.push_back({step, episode, phase, s, sampled.action, sampled.next, sampled.reward});
        s = sampled.next;
      }
    }
  }
  return run;
}

}  // namespace cmdp::testing
