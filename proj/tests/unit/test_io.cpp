#include <doctest.h>

#include <filesystem>

#include "cmdp/analyzer.hpp"
#include "cmdp/errors.hpp"
#include "cmdp/io.hpp"
#include "cmdp/learner.hpp"
#include "fixtures.hpp"

using namespace cmdp;
using namespace cmdp::testing;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("cmdp_io_" + name);
  write_file(path, content);
  return path;
}

}  // namespace

TEST_CASE("mdp round-trip") {
  auto mdp = chain2();
  CHECK(mdp_from_json(mdp_to_json(mdp)) == mdp);
  auto text = mdp_to_json(mdp);
  CHECK(mdp_to_json(mdp_from_json(text)) == text);
}

TEST_CASE("policy and values round-trip") {
  auto mdp = chain2();
  CHECK(policy_from_json(policy_to_json(chain2_pi_ref(), mdp), mdp) == chain2_pi_ref());
  CHECK(values_from_json(values_to_json(chain2_values(), mdp), mdp).value == chain2_values().value);
}

TEST_CASE("run round-trip") {
  LearnerConfig cfg;
  cfg.episodes = 20;
  cfg.seed = 3;
  auto run = td_learn(chain2(), cfg);
  auto text = run_to_json(run, chain2());
  CHECK(run_from_json(text, chain2()) == run);
  CHECK(run_to_json(run_from_json(text, chain2()), chain2()) == text);
}

TEST_CASE("report round-trip for every mapping") {
  auto run = scripted_run(chain2(), chain2_always(0), chain2_pi_ref(), 3, 4, 5);
  for (auto& s : run.snapshots) s.values = chain2_values();
  for (auto mapping : {MappingKind::state, MappingKind::transition, MappingKind::trajectory}) {
    AnalysisConfig cfg;
    cfg.mapping = mapping;
    cfg.alpha = 0.5;
    auto report = analyze(chain2(), run, cfg);
    auto text = report_to_json(report);
    CHECK(report_from_json(text) == report);
    CHECK(report_to_json(report_from_json(text)) == text);
  }
}

TEST_CASE("structural errors name the key path") {
  CHECK_THROWS_WITH_AS(mdp_from_json(R"({"states":["s0"],"actions":["a0"]})"),
                       doctest::Contains("transitions"), DomainError);
  CHECK_THROWS_WITH_AS(policy_from_json(R"({"policy":{"s0":[1,0]}})", chain2()), doctest::Contains("s1"),
                       DomainError);
  CHECK_THROWS_AS(mdp_from_json("{not json"), DomainError);
}

TEST_CASE("loading validates and reports every violation") {
  auto bad = temp_file("bad.json", R"({
    "states": ["s0", "s1"], "actions": ["a0"],
    "transitions": {"a0": {"s0": [0.5, 0.4], "s1": [-0.1, 1.1]}},
    "rewards": {"s0": {"a0": [0, 0]}, "s1": {"a0": [0, 0]}}})");
  try {
    load_mdp(bad);
    FAIL("expected a DomainError");
  } catch (const DomainError& e) {
    const std::string what = e.what();
    CHECK(what.find("row (a0,s0) sums to 0.9") != std::string::npos);
    CHECK(what.find("negative probability") != std::string::npos);
  }
}

TEST_CASE("missing file is an I/O error") {
  CHECK_THROWS_AS(load_mdp("/nonexistent/cmdp/mdp.json"), IoError);
  CHECK_THROWS_AS(write_file("/nonexistent/cmdp/out.json", "x"), IoError);
}

TEST_CASE("run labels must match the MDP") {
  auto run = scripted_run(chain2(), chain2_pi_ref(), chain2_pi_ref(), 1, 2, 1);
  auto text = run_to_json(run, chain2());
  TabularMdp other({"x0", "x1"}, {"a0", "a1"}, chain2().transition_table(), chain2().reward_table());
  CHECK_THROWS_AS(run_from_json(text, other), DomainError);
}
