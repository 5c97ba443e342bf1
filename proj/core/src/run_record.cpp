#include "cmdp/run_record.hpp"

namespace cmdp {

ValidationResult validate_run(const TabularMdp& mdp, const RunRecord& run) {
  ValidationResult result;
  auto report = [&](std::string path, std::string message) {
    result.violations.push_back({std::move(path), std::move(message)});
  };
  if (run.snapshots.empty()) report("snapshots", "a run needs at least one snapshot");
  if (run.starts.empty()) report("start_states", "a run needs at least one start state");
  for (std::size_t i = 0; i < run.starts.size(); ++i) {
    if (run.starts[i] >= mdp.num_states()) report("start_states[" + std::to_string(i) + "]", "unknown state");
  }
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    const std::string path = "snapshots[" + std::to_string(i) + "]";
    const Snapshot& snapshot = run.snapshots[i];
    if (i > 0 && snapshot.step <= run.snapshots[i - 1].step) {
      report(path + ".step", "snapshot steps must be strictly increasing");
    }
    for (const Violation& v : validate_policy(mdp, snapshot.policy).violations) {
      report(path + "." + v.path, v.message);
    }
    if (snapshot.values) {
      for (const Violation& v : validate_values(mdp, *snapshot.values).violations) {
        report(path + "." + v.path, v.message);
      }
    }
  }
  for (std::size_t i = 0; i < run.experience.size(); ++i) {
    const std::string path = "experience[" + std::to_string(i) + "]";
    const Experience& e = run.experience[i];
    if (i > 0 && e.step <= run.experience[i - 1].step) {
      report(path + ".step", "experience steps must be strictly increasing");
    }
    if (e.state >= mdp.num_states() || e.next >= mdp.num_states() || e.action >= mdp.num_actions()) {
      report(path, "state or action out of range");
    }
    if (e.snapshot >= run.snapshots.size()) report(path + ".snapshot", "unknown snapshot");
  }
  return result;
}

}  // namespace cmdp
