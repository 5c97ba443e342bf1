#include <doctest.h>

#include "cmdp/errors.hpp"
#include "cmdp/learner.hpp"
#include "cmdp/mapping_state.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace cmdp;
using namespace cmdp::testing;

namespace {
Concept st(StateId s) { return StateConcept{s}; }
}

TEST_CASE("conceptual space is S for alpha below one") {
  auto mdp = chain2();
  for (double alpha : {0.0, 0.5, 0.99}) {
    auto e = build_ms(mdp, chain2_pi_ref(), chain2_values(), {alpha, 0.5, {}});
    CHECK(conceptual_space(e) == ConceptSet{st(0), st(1)});
  }
  CHECK(conceptual_space(build_ms(mdp, chain2_pi_ref(), chain2_values(), {1.0, 0.5, {}})).empty());
}

TEST_CASE("evaluation is the min-max normalized value") {
  auto e = build_ms(chain2(), chain2_pi_ref(), chain2_values(), {});
  CHECK(e.evaluation(st(0)) == 0.0);
  CHECK(e.evaluation(st(1)) == 1.0);
  CHECK(state_membership(chain2(), st(1)) == 1.0);
  CHECK(state_membership(chain2(), st(5)) == 0.0);
}

TEST_CASE("reachability from s0 and from the absorbing state") {
  auto e = build_ms(chain2(), chain2_pi_ref(), chain2_values(), {0.5, 0.5, {}});
  CHECK(reachable_set(e, ms_initial({0}), StepBound::fixpoint()).concepts == ConceptSet{st(0), st(1)});
  CHECK(reachable_set(e, ms_initial({1}), StepBound::fixpoint()).concepts == ConceptSet{st(1)});
}

TEST_CASE("generative uninspiration is false from s0") {
  auto e = build_ms(chain2(), chain2_pi_ref(), chain2_values(), {0.5, 0.5, {}});
  auto flags = classify_uninspiration(e, ms_initial({0}), StepBound::fixpoint());
  CHECK_FALSE(flags.generative);
  CHECK_FALSE(flags.conceptual);
  CHECK_FALSE(flags.hopeless.has_value());
}

TEST_CASE("aberrations never occur below alpha one") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    auto mdp = random_mdp(rng, 4, 3);
    auto pi = random_policy(rng, mdp);
    auto e = build_ms(mdp, pi, random_values(rng, mdp), {0.9, 0.5, {}});
    CHECK(aberration_set(e, ms_initial(random_starts(rng, mdp)), StepBound::fixpoint()).concepts.empty());
  }
}

TEST_CASE("transformation kind") {
  auto pi = chain2_pi_ref();
  CHECK(ms_transformation_kind(pi, pi) == TransformationKind::none);
  LearnerConfig cfg;
  auto greedy = value_iteration(chain2(), cfg).greedy;
  CHECK(ms_transformation_kind(pi, greedy) == TransformationKind::q_only);
  StochasticPolicy nudged(2, 2, {0.251, 0.749, 1.0, 0.0});
  CHECK(ms_transformation_kind(pi, nudged) == TransformationKind::q_only);
  CHECK_THROWS_AS(ms_transformation_kind(pi, StochasticPolicy(1, 2, {0.5, 0.5})), DomainError);
}

TEST_CASE("non-state start is rejected") {
  auto e = build_ms(chain2(), chain2_pi_ref(), chain2_values(), {});
  CHECK_THROWS_AS(reachable_set(e, {TransitionConcept{0, 0, 0}}, StepBound::fixpoint()), DomainError);
}
