#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cmdp/errors.hpp"
#include "cmdp/learner.hpp"
#include "fixtures.hpp"

using namespace cmdp;
using namespace cmdp::testing;

namespace {

// Smallest difference between the best and the runner-up action value.
double action_gap(const TabularMdp& mdp, const ValueEstimate& v, double gamma) {
  auto q = action_values(mdp, v, gamma);
  double gap = INFINITY;
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    std::vector<double> row(q.begin() + static_cast<long>(s * mdp.num_actions()),
                            q.begin() + static_cast<long>((s + 1) * mdp.num_actions()));
    std::sort(row.rbegin(), row.rend());
    if (row.size() > 1) gap = std::min(gap, row[0] - row[1]);
  }
  return gap;
}

}  // namespace

TEST_CASE("value iteration on chain2") {
  LearnerConfig cfg;
  cfg.gamma = 0.9;
  auto result = value_iteration(chain2(), cfg);
  CHECK(std::abs(result.values.value[1] - 10.0) <= 1e-6);
  CHECK(greedy_actions(result.greedy)[0] == 1);
}

TEST_CASE("Bellman optimality holds at the fixpoint") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    auto mdp = random_mdp(rng, 4, 3);
    LearnerConfig cfg;
    auto v = value_iteration(mdp, cfg).values;
    auto q = action_values(mdp, v, cfg.gamma);
    for (StateId s = 0; s < mdp.num_states(); ++s) {
      double best = -INFINITY;
      for (ActionId a = 0; a < mdp.num_actions(); ++a) best = std::max(best, q[s * mdp.num_actions() + a]);
      CHECK(std::abs(best - v.value[s]) <= 1e-8);
    }
  }
}

TEST_CASE("discount zero gives the best one-step reward") {
  LearnerConfig cfg;
  cfg.gamma = 0.0;
  auto v = value_iteration(chain2(), cfg).values;
  CHECK(v.value[0] == doctest::Approx(0.8));
  CHECK(v.value[1] == doctest::Approx(1.0));
}

TEST_CASE("zero rewards give zero values") {
  auto v = value_iteration(chain2_zero_rewards(), LearnerConfig{}).values;
  CHECK(v.value == std::vector<double>{0.0, 0.0});
}

TEST_CASE("invalid configuration") {
  LearnerConfig cfg;
  cfg.gamma = 1.0;
  CHECK_THROWS_AS(value_iteration(chain2(), cfg), DomainError);
  cfg = {};
  cfg.epsilon = 2;
  CHECK_THROWS_AS(td_learn(chain2(), cfg), DomainError);
  cfg = {};
  cfg.starts = {5};
  CHECK_THROWS_AS(td_learn(chain2(), cfg), DomainError);
  cfg = {};
  cfg.max_iterations = 2;
  CHECK_THROWS_AS(value_iteration(chain2(), cfg), DomainError);
  CHECK(parse_algorithm("vi") == LearnerConfig::Algorithm::value_iteration);
  CHECK(parse_algorithm(to_string(LearnerConfig::Algorithm::tabular_td)) == LearnerConfig::Algorithm::tabular_td);
  CHECK_THROWS_AS(parse_algorithm("sarsa"), DomainError);
}

TEST_CASE("value iteration run starts uniform and ends greedy") {
  LearnerConfig cfg;
  cfg.algorithm = LearnerConfig::Algorithm::value_iteration;
  auto run = learn(chain2(), cfg);
  REQUIRE(run.snapshots.size() >= 2);
  CHECK(run.snapshots.front().policy == uniform_policy(chain2()));
  CHECK(run.snapshots.back().policy == value_iteration(chain2(), cfg).greedy);
  CHECK(run.experience.empty());
  CHECK(validate_run(chain2(), run).ok());
}

TEST_CASE("zero episodes yields one snapshot") {
  LearnerConfig cfg;
  cfg.episodes = 0;
  auto run = td_learn(chain2(), cfg);
  CHECK(run.snapshots.size() == 1);
  CHECK(run.experience.empty());
}

TEST_CASE("td is reproducible per seed") {
  LearnerConfig cfg;
  cfg.seed = 7;
  cfg.episodes = 50;
  CHECK(td_learn(chain2(), cfg) == td_learn(chain2(), cfg));
  auto other = cfg;
  other.seed = 8;
  CHECK_FALSE(td_learn(chain2(), cfg) == td_learn(chain2(), other));
}

TEST_CASE("td run structure") {
  LearnerConfig cfg;
  cfg.episodes = 35;
  cfg.snapshot_every = 10;
  auto run = td_learn(chain2(), cfg);
  CHECK(run.snapshots.size() == 5);  // initial, 10, 20, 30, 35
  CHECK(run.experience.size() == 35 * cfg.max_episode_steps);
  CHECK(validate_run(chain2(), run).ok());
  for (const auto& e : run.experience) {
    CHECK(run.snapshots[e.snapshot].step <= e.step);
    if (e.snapshot + 1 < run.snapshots.size()) CHECK(e.step < run.snapshots[e.snapshot + 1].step);
  }
}

TEST_CASE("td final greedy action at s0 is a1 on chain2") {
  LearnerConfig cfg;
  cfg.episodes = 500;
  auto run = td_learn(chain2(), cfg);
  CHECK(greedy_actions(run.snapshots.back().policy)[0] == 1);
}

TEST_CASE("td matches value iteration on 3-state fixtures with a clear action gap") {
  Rng rng(1234);
  int checked = 0;
  while (checked < 10) {
    auto mdp = random_mdp(rng, 3, 3);
    if (mdp.num_states() != 3 || mdp.num_actions() < 2) continue;
    LearnerConfig cfg;
    auto vi = value_iteration(mdp, cfg);
    if (action_gap(mdp, vi.values, cfg.gamma) <= 0.1) continue;
    cfg.episodes = 2000;
    cfg.seed = static_cast<std::uint64_t>(checked);
    cfg.starts = {0, 1, 2};
    auto run = td_learn(mdp, cfg);
    CHECK(greedy_actions(run.snapshots.back().policy) == greedy_actions(vi.greedy));
    ++checked;
  }
}
