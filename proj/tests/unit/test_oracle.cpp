#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace cmdp;
using namespace cmdp::testing;

TEST_CASE("bfs reachability") {
  auto mdp = chain2();
  CHECK(oracle::bfs_reachable(mdp, chain2_pi_ref(), {1}) == std::set<StateId>{1});
  CHECK(oracle::bfs_reachable(mdp, chain2_pi_ref(), {0}) == std::set<StateId>{0, 1});
  CHECK(oracle::bfs_reachable(mdp, chain2_pi_ref(), {}).empty());
}

TEST_CASE("trajectory enumeration") {
  auto mdp = chain2();
  auto zero = oracle::enumerate_trajectories(mdp, chain2_pi_ref(), 0, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].second == 1.0);
  auto one = oracle::enumerate_trajectories(mdp, chain2_pi_ref(), 0, 1);
  std::vector<double> probs;
  for (auto& [tau, p] : one) {
    if (p > 0) probs.push_back(p);
  }
  REQUIRE(probs.size() == 4);
  CHECK(probs[0] == doctest::Approx(0.225));
  CHECK(probs[1] == doctest::Approx(0.025));
  CHECK(probs[2] == doctest::Approx(0.15));
  CHECK(probs[3] == doctest::Approx(0.6));
  for (std::size_t h = 0; h <= 4; ++h) {
    double sum = 0;
    for (auto& [tau, p] : oracle::enumerate_trajectories(mdp, chain2_pi_ref(), 0, h)) sum += p;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("min-max") {
  CHECK(oracle::min_max({0, 10}) == std::vector<double>{0, 1});
  CHECK(oracle::min_max({3, 3}) == std::vector<double>{0.5, 0.5});
}

TEST_CASE("classification of chain2 under the transition mapping") {
  auto mdp = chain2();
  auto pi = chain2_pi_ref();
  oracle::Problem p{oracle::Mapping::transition, &mdp, &pi, nullptr, 0.5, 0.5, {0}, 0};
  auto c = oracle::classify_by_definition(p);
  CHECK(c.conceptual_space == oracle::TupleSet{{0, 1, 1}, {1, 0, 1}});
  CHECK(c.aberrations == oracle::TupleSet{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}});
  CHECK(c.aberration_class == "productive");
  CHECK_FALSE(c.generative);
  CHECK(c.hopeless == false);
}
