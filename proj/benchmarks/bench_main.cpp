#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "cmdp/csf.hpp"
#include "cmdp/mapping_trajectory.hpp"
#include "cmdp/mapping_transition.hpp"

namespace {

using namespace cmdp;

// Dense random MDP with a random stochastic policy.
struct Instance {
  TabularMdp mdp;
  StochasticPolicy policy;
  ValueEstimate values;
};

std::vector<double> random_rows(Rng& rng, std::size_t rows, std::size_t width) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> out;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<double> row(width);
    double sum = 0.0;
    for (double& x : row) sum += (x = u(rng));
    for (double& x : row) out.push_back(x / sum);
  }
  return out;
}

Instance make_instance(std::size_t nS, std::size_t nA) {
  Rng rng(nS * 131 + nA);
  std::vector<std::string> states;
  std::vector<std::string> actions;
  for (std::size_t s = 0; s < nS; ++s) states.push_back("s" + std::to_string(s));
  for (std::size_t a = 0; a < nA; ++a) actions.push_back("a" + std::to_string(a));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> rewards(nS * nA * nS);
  for (double& r : rewards) r = u(rng);
  std::vector<double> values(nS);
  for (double& v : values) v = u(rng);
  TabularMdp mdp(states, actions, random_rows(rng, nA * nS, nS), rewards);
  StochasticPolicy policy(nS, nA, random_rows(rng, nS, nA));
  return {std::move(mdp), std::move(policy), {values}};
}

void BM_TransitionConceptualSpace(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::size_t>(state.range(0)), 4);
  const EcsInstance ecs = build_msas(inst.mdp, inst.policy, {0.01, 0.5, {}});
  for (auto _ : state) benchmark::DoNotOptimize(conceptual_space(ecs));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TransitionConceptualSpace)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_TransitionReachability(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::size_t>(state.range(0)), 4);
  const EcsInstance ecs = build_msas(inst.mdp, inst.policy, {0.01, 0.5, {}});
  const auto initial = msas_initial(inst.mdp, inst.policy, {0});
  for (auto _ : state) benchmark::DoNotOptimize(reachable_set(ecs, initial, StepBound::fixpoint()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TransitionReachability)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_TrajectoryEnumeration(benchmark::State& state) {
  const auto inst = make_instance(4, 3);
  const std::size_t horizon = static_cast<std::size_t>(state.range(0));
  const EcsInstance ecs = build_mtau(inst.mdp, inst.policy, inst.values, {0.0, 0.5, horizon, {}}, {0});
  for (auto _ : state) benchmark::DoNotOptimize(ecs.enumerate());
}
BENCHMARK(BM_TrajectoryEnumeration)->DenseRange(1, 4);

void BM_TrajectoryConceptualSpacePruned(benchmark::State& state) {
  const auto inst = make_instance(4, 3);
  const std::size_t horizon = static_cast<std::size_t>(state.range(0));
  const EcsInstance ecs = build_mtau(inst.mdp, inst.policy, inst.values, {0.01, 0.5, horizon, {}}, {0});
  for (auto _ : state) benchmark::DoNotOptimize(conceptual_space(ecs));
}
BENCHMARK(BM_TrajectoryConceptualSpacePruned)->DenseRange(1, 6);

}  // namespace
BENCHMARK_MAIN();
