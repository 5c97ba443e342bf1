#include "cmdp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "detail.hpp"

namespace cmdp {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

const json& member(const json& object, const std::string& key, const std::string& path) {
  if (!object.is_object()) throw DomainError((path.empty() ? "document" : path) + ": expected an object");
  auto it = object.find(key);
  if (it == object.end()) throw DomainError(join(path, key) + ": missing");
  return *it;
}

double number(const json& value, const std::string& path) {
  if (!value.is_number()) throw DomainError(path + ": expected a number");
  return value.get<double>();
}

std::size_t count(const json& value, const std::string& path) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
    throw DomainError(path + ": expected a non-negative integer");
  }
  return value.get<std::size_t>();
}

std::string text(const json& value, const std::string& path) {
  if (!value.is_string()) throw DomainError(path + ": expected a string");
  return value.get<std::string>();
}

bool boolean(const json& value, const std::string& path) {
  if (!value.is_boolean()) throw DomainError(path + ": expected true or false");
  return value.get<bool>();
}

std::vector<std::string> string_array(const json& value, const std::string& path) {
  if (!value.is_array()) throw DomainError(path + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(text(value[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

void append_numbers(const json& value, std::size_t expected, const std::string& path, std::vector<double>& out) {
  if (!value.is_array() || value.size() != expected) {
    throw DomainError(path + ": expected an array of " + std::to_string(expected) + " numbers");
  }
  for (std::size_t i = 0; i < expected; ++i) out.push_back(number(value[i], path + "[" + std::to_string(i) + "]"));
}

std::size_t label_index(const LabelIndex& index, const json& value, const std::string& path) {
  const std::string label = text(value, path);
  if (auto i = index.find(label)) return *i;
  throw DomainError(path + ": unknown label '" + label + "'");
}

void check_labels(const json& root, const std::string& key, const LabelIndex& expected) {
  auto it = root.find(key);
  if (it == root.end()) return;
  if (string_array(*it, key) != expected.labels()) {
    throw DomainError(key + ": labels do not match the MDP");
  }
}

std::vector<double> read_policy_table(const json& object, const TabularMdp& mdp, const std::string& path) {
  std::vector<double> probs;
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    const std::string& label = mdp.states().label(s);
    append_numbers(member(object, label, path), mdp.num_actions(), join(path, label), probs);
  }
  return probs;
}

std::vector<double> read_value_table(const json& object, const TabularMdp& mdp, const std::string& path) {
  std::vector<double> values;
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    const std::string& label = mdp.states().label(s);
    values.push_back(number(member(object, label, path), join(path, label)));
  }
  return values;
}

ordered_json policy_object(const StochasticPolicy& policy, const TabularMdp& mdp) {
  ordered_json out = ordered_json::object();
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    out[mdp.states().label(s)] = std::vector<double>(policy.row(s).begin(), policy.row(s).end());
  }
  return out;
}

ordered_json value_object(const ValueEstimate& values, const TabularMdp& mdp) {
  ordered_json out = ordered_json::object();
  for (StateId s = 0; s < mdp.num_states(); ++s) out[mdp.states().label(s)] = values.value.at(s);
  return out;
}

template <class T>
ordered_json optional_json(const std::optional<T>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& value, const std::string& path) {
  if (value.is_null()) return std::nullopt;
  if constexpr (std::is_same_v<T, double>) {
    return number(value, path);
  } else {
    return static_cast<T>(count(value, path));
  }
}

std::string dump(const ordered_json& document) { return document.dump(2) + "\n"; }

std::string format_violations(const std::string& file, const ValidationResult& result) {
  std::string message = file + ": invalid";
  for (const Violation& v : result.violations) message += "\n  " + v.path + ": " + v.message;
  return message;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

TabularMdp mdp_from_json(std::string_view document) {
  const json root = parse(document);
  const LabelIndex states(string_array(member(root, "states", ""), "states"));
  const LabelIndex actions(string_array(member(root, "actions", ""), "actions"));
  const std::size_t nS = states.size();

  std::vector<double> transition;
  const json& transitions = member(root, "transitions", "");
  for (const std::string& a : actions.labels()) {
    const json& per_state = member(transitions, a, "transitions");
    for (const std::string& s : states.labels()) {
      append_numbers(member(per_state, s, "transitions." + a), nS, "transitions." + a + "." + s, transition);
    }
  }

  auto read_sas = [&](const std::string& key) {
    std::vector<double> table;
    const json& by_state = member(root, key, "");
    for (const std::string& s : states.labels()) {
      const json& by_action = member(by_state, s, key);
      for (const std::string& a : actions.labels()) {
        append_numbers(member(by_action, a, key + "." + s), nS, key + "." + s + "." + a, table);
      }
    }
    return table;
  };
  std::vector<double> rewards = read_sas("rewards");
  std::optional<std::vector<double>> noise;
  if (root.contains("reward_noise")) noise = read_sas("reward_noise");
  return {states.labels(), actions.labels(), std::move(transition), std::move(rewards), std::move(noise)};
}

std::string mdp_to_json(const TabularMdp& mdp) {
  ordered_json root;
  root["states"] = mdp.states().labels();
  root["actions"] = mdp.actions().labels();
  ordered_json transitions = ordered_json::object();
  for (ActionId a = 0; a < mdp.num_actions(); ++a) {
    ordered_json per_state = ordered_json::object();
    for (StateId s = 0; s < mdp.num_states(); ++s) {
      const auto row = mdp.transition_row(a, s);
      per_state[mdp.states().label(s)] = std::vector<double>(row.begin(), row.end());
    }
    transitions[mdp.actions().label(a)] = per_state;
  }
  root["transitions"] = transitions;
  auto write_sas = [&](auto value_of) {
    ordered_json by_state = ordered_json::object();
    for (StateId s = 0; s < mdp.num_states(); ++s) {
      ordered_json by_action = ordered_json::object();
      for (ActionId a = 0; a < mdp.num_actions(); ++a) {
        std::vector<double> row;
        for (StateId next = 0; next < mdp.num_states(); ++next) row.push_back(value_of(s, a, next));
        by_action[mdp.actions().label(a)] = row;
      }
      by_state[mdp.states().label(s)] = by_action;
    }
    return by_state;
  };
  root["rewards"] = write_sas([&](StateId s, ActionId a, StateId n) { return mdp.reward(s, a, n); });
  if (mdp.has_reward_noise()) {
    root["reward_noise"] = write_sas([&](StateId s, ActionId a, StateId n) { return mdp.reward_noise(s, a, n); });
  }
  return dump(root);
}

StochasticPolicy policy_from_json(std::string_view document, const TabularMdp& mdp) {
  const json root = parse(document);
  return {mdp.num_states(), mdp.num_actions(), read_policy_table(member(root, "policy", ""), mdp, "policy")};
}

std::string policy_to_json(const StochasticPolicy& policy, const TabularMdp& mdp) {
  ordered_json root;
  root["policy"] = policy_object(policy, mdp);
  return dump(root);
}

ValueEstimate values_from_json(std::string_view document, const TabularMdp& mdp) {
  const json root = parse(document);
  return {read_value_table(member(root, "values", ""), mdp, "values")};
}

std::string values_to_json(const ValueEstimate& values, const TabularMdp& mdp) {
  ordered_json root;
  root["values"] = value_object(values, mdp);
  return dump(root);
}

RunRecord run_from_json(std::string_view document, const TabularMdp& mdp) {
  const json root = parse(document);
  const std::string schema = text(member(root, "schema", ""), "schema");
  if (schema != kRunSchema) throw DomainError("schema: unsupported run schema '" + schema + "'");
  check_labels(root, "states", mdp.states());
  check_labels(root, "actions", mdp.actions());

  RunRecord run;
  run.algorithm = text(member(root, "algorithm", ""), "algorithm");
  run.seed = optional_from<std::uint64_t>(member(root, "seed", ""), "seed");
  const json& starts = member(root, "start_states", "");
  if (!starts.is_array()) throw DomainError("start_states: expected an array of strings");
  for (std::size_t i = 0; i < starts.size(); ++i) {
    run.starts.push_back(label_index(mdp.states(), starts[i], "start_states[" + std::to_string(i) + "]"));
  }
  const json& snapshots = member(root, "snapshots", "");
  if (!snapshots.is_array()) throw DomainError("snapshots: expected an array");
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    const std::string path = "snapshots[" + std::to_string(i) + "]";
    const json& item = snapshots[i];
    Snapshot snapshot{count(member(item, "step", path), path + ".step"),
                      {mdp.num_states(), mdp.num_actions(),
                       read_policy_table(member(item, "policy", path), mdp, path + ".policy")},
                      std::nullopt};
    if (item.contains("values") && !item["values"].is_null()) {
      snapshot.values = ValueEstimate{read_value_table(item["values"], mdp, path + ".values")};
    }
    run.snapshots.push_back(std::move(snapshot));
  }
  const json& experience = member(root, "experience", "");
  if (!experience.is_array()) throw DomainError("experience: expected an array");
  for (std::size_t i = 0; i < experience.size(); ++i) {
    const std::string path = "experience[" + std::to_string(i) + "]";
    const json& item = experience[i];
    run.experience.push_back({count(member(item, "step", path), path + ".step"),
                              count(member(item, "episode", path), path + ".episode"),
                              count(member(item, "snapshot", path), path + ".snapshot"),
                              label_index(mdp.states(), member(item, "state", path), path + ".state"),
                              label_index(mdp.actions(), member(item, "action", path), path + ".action"),
                              label_index(mdp.states(), member(item, "next", path), path + ".next"),
                              number(member(item, "reward", path), path + ".reward")});
  }
  return run;
}

std::string run_to_json(const RunRecord& run, const TabularMdp& mdp) {
  ordered_json root;
  root["schema"] = kRunSchema;
  root["algorithm"] = run.algorithm;
  root["seed"] = optional_json(run.seed);
  root["states"] = mdp.states().labels();
  root["actions"] = mdp.actions().labels();
  ordered_json starts = ordered_json::array();
  for (StateId s : run.starts) starts.push_back(mdp.states().label(s));
  root["start_states"] = starts;
  ordered_json snapshots = ordered_json::array();
  for (const Snapshot& snapshot : run.snapshots) {
    ordered_json item;
    item["step"] = snapshot.step;
    item["policy"] = policy_object(snapshot.policy, mdp);
    if (snapshot.values) item["values"] = value_object(*snapshot.values, mdp);
    snapshots.push_back(item);
  }
  root["snapshots"] = snapshots;
  ordered_json experience = ordered_json::array();
  for (const Experience& e : run.experience) {
    ordered_json item;
    item["step"] = e.step;
    item["episode"] = e.episode;
    item["snapshot"] = e.snapshot;
    item["state"] = mdp.states().label(e.state);
    item["action"] = mdp.actions().label(e.action);
    item["next"] = mdp.states().label(e.next);
    item["reward"] = e.reward;
    experience.push_back(item);
  }
  root["experience"] = experience;
  return dump(root);
}

std::string report_to_json(const CreativityReport& report) {
  ordered_json root;
  root["schema"] = report.schema;
  root["mapping"] = to_string(report.mapping);

  const ReportConfig& c = report.config;
  ordered_json config;
  config["alpha"] = c.alpha;
  config["beta"] = c.beta;
  config["horizon"] = optional_json(c.horizon);
  ordered_json normalization;
  normalization["kind"] = std::string(to_string(c.normalization.kind));
  normalization["scale"] = c.normalization.scale;
  normalization["offset"] = c.normalization.offset;
  normalization["center"] = c.normalization.center;
  normalization["slope"] = c.normalization.slope;
  config["normalization"] = normalization;
  config["seed"] = optional_json(c.seed);
  config["algorithm"] = c.algorithm;
  config["starts"] = c.starts;
  config["novelty"] = c.novelty;
  root["config"] = config;

  ordered_json snapshots = ordered_json::array();
  for (const SnapshotReport& s : report.snapshots) {
    ordered_json item;
    item["index"] = s.index;
    item["step"] = s.step;
    item["conceptual_space_size"] = s.conceptual_space.size();
    item["conceptual_space_hash"] = s.conceptual_space_hash;
    item["conceptual_space"] = s.conceptual_space;
    item["reachable_size"] = s.reachable_size;
    item["reachable_bound"] = optional_json(s.reachable_bound);
    ordered_json uninspiration;
    uninspiration["generative"] = s.uninspiration.generative;
    uninspiration["conceptual"] = s.uninspiration.conceptual;
    uninspiration["hopeless"] =
        s.uninspiration.hopeless ? ordered_json(*s.uninspiration.hopeless) : ordered_json("indeterminate");
    item["uninspiration"] = uninspiration;
    ordered_json aberration;
    aberration["class"] = to_string(s.aberration_class);
    aberration["size"] = s.aberrations.size();
    aberration["members"] = s.aberrations;
    item["aberration"] = aberration;
    ordered_json experienced = ordered_json::array();
    for (const ExperiencedAberration& a : s.experienced_aberrations) {
      ordered_json entry;
      entry["step"] = a.step;
      entry["concept"] = a.concept_label;
      entry["acceptability"] = a.acceptability;
      if (report.mapping == MappingKind::trajectory) {
        ordered_json parts;
        parts["policy"] = optional_json(a.log_policy);
        parts["transition"] = optional_json(a.log_transition);
        entry["extension_log_probability"] = parts;
      }
      experienced.push_back(entry);
    }
    item["experienced_aberrations"] = experienced;
    snapshots.push_back(item);
  }
  root["snapshots"] = snapshots;

  ordered_json transformations = ordered_json::array();
  for (const TransformationEvent& t : report.transformations) {
    ordered_json item;
    item["from"] = t.from;
    item["to"] = t.to;
    item["kind"] = to_string(t.kind);
    item["valued"] = t.valued;
    transformations.push_back(item);
  }
  root["transformations"] = transformations;

  ordered_json events = ordered_json::array();
  for (const ExploratoryEvent& e : report.exploratory_events) {
    ordered_json item;
    item["step"] = e.step;
    item["snapshot"] = e.snapshot;
    item["concept"] = e.concept_label;
    item["evaluation"] = e.evaluation;
    item["in_conceptual_space"] = e.in_conceptual_space;
    events.push_back(item);
  }
  root["exploratory_events"] = events;
  return dump(root);
}

CreativityReport report_from_json(std::string_view document) {
  const json root = parse(document);
  CreativityReport report;
  report.schema = text(member(root, "schema", ""), "schema");
  if (report.schema != kReportSchema) throw DomainError("schema: unsupported report schema '" + report.schema + "'");
  report.mapping = parse_mapping_kind(text(member(root, "mapping", ""), "mapping"));

  const json& config = member(root, "config", "");
  ReportConfig& c = report.config;
  c.alpha = number(member(config, "alpha", "config"), "config.alpha");
  c.beta = number(member(config, "beta", "config"), "config.beta");
  c.horizon = optional_from<std::size_t>(member(config, "horizon", "config"), "config.horizon");
  const json& normalization = member(config, "normalization", "config");
  const std::string np = "config.normalization";
  c.normalization.kind = parse_normalization_kind(text(member(normalization, "kind", np), np + ".kind"));
  c.normalization.scale = number(member(normalization, "scale", np), np + ".scale");
  c.normalization.offset = number(member(normalization, "offset", np), np + ".offset");
  c.normalization.center = number(member(normalization, "center", np), np + ".center");
  c.normalization.slope = number(member(normalization, "slope", np), np + ".slope");
  c.seed = optional_from<std::uint64_t>(member(config, "seed", "config"), "config.seed");
  c.algorithm = text(member(config, "algorithm", "config"), "config.algorithm");
  c.starts = string_array(member(config, "starts", "config"), "config.starts");
  c.novelty = text(member(config, "novelty", "config"), "config.novelty");

  const json& snapshots = member(root, "snapshots", "");
  if (!snapshots.is_array()) throw DomainError("snapshots: expected an array");
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    const std::string path = "snapshots[" + std::to_string(i) + "]";
    const json& item = snapshots[i];
    SnapshotReport s;
    s.index = count(member(item, "index", path), path + ".index");
    s.step = count(member(item, "step", path), path + ".step");
    s.conceptual_space = string_array(member(item, "conceptual_space", path), path + ".conceptual_space");
    s.conceptual_space_hash = text(member(item, "conceptual_space_hash", path), path + ".conceptual_space_hash");
    s.reachable_size = count(member(item, "reachable_size", path), path + ".reachable_size");
    s.reachable_bound = optional_from<std::size_t>(member(item, "reachable_bound", path), path + ".reachable_bound");
    const json& un = member(item, "uninspiration", path);
    s.uninspiration.generative = boolean(member(un, "generative", path + ".uninspiration"), path);
    s.uninspiration.conceptual = boolean(member(un, "conceptual", path + ".uninspiration"), path);
    const json& hopeless = member(un, "hopeless", path + ".uninspiration");
    if (!hopeless.is_string()) s.uninspiration.hopeless = boolean(hopeless, path + ".uninspiration.hopeless");
    const json& ab = member(item, "aberration", path);
    s.aberration_class = parse_aberration_class(text(member(ab, "class", path + ".aberration"), path));
    s.aberrations = string_array(member(ab, "members", path + ".aberration"), path + ".aberration.members");
    const json& experienced = member(item, "experienced_aberrations", path);
    for (const json& entry : experienced) {
      ExperiencedAberration a;
      a.step = count(member(entry, "step", path), path + ".step");
      a.concept_label = text(member(entry, "concept", path), path + ".concept");
      a.acceptability = number(member(entry, "acceptability", path), path + ".acceptability");
      if (entry.contains("extension_log_probability")) {
        const json& parts = entry["extension_log_probability"];
        a.log_policy = optional_from<double>(member(parts, "policy", path), path);
        a.log_transition = optional_from<double>(member(parts, "transition", path), path);
      }
      s.experienced_aberrations.push_back(std::move(a));
    }
    report.snapshots.push_back(std::move(s));
  }

  for (const json& item : member(root, "transformations", "")) {
    report.transformations.push_back({count(member(item, "from", "transformations"), "from"),
                                      count(member(item, "to", "transformations"), "to"),
                                      parse_transformation_kind(text(member(item, "kind", "transformations"), "kind")),
                                      boolean(member(item, "valued", "transformations"), "valued")});
  }
  for (const json& item : member(root, "exploratory_events", "")) {
    const std::string path = "exploratory_events";
    report.exploratory_events.push_back({count(member(item, "step", path), path + ".step"),
                                         count(member(item, "snapshot", path), path + ".snapshot"),
                                         text(member(item, "concept", path), path + ".concept"),
                                         number(member(item, "evaluation", path), path + ".evaluation"),
                                         boolean(member(item, "in_conceptual_space", path), path)});
  }
  return report;
}

TabularMdp load_mdp(const std::filesystem::path& path) {
  TabularMdp mdp = mdp_from_json(read_file(path));
  const ValidationResult result = validate_mdp(mdp);
  if (!result.ok()) throw DomainError(format_violations(path.string(), result));
  return renormalized(mdp);
}

StochasticPolicy load_policy(const std::filesystem::path& path, const TabularMdp& mdp) {
  StochasticPolicy policy = policy_from_json(read_file(path), mdp);
  const ValidationResult result = validate_policy(mdp, policy);
  if (!result.ok()) throw DomainError(format_violations(path.string(), result));
  return renormalized(policy);
}

ValueEstimate load_values(const std::filesystem::path& path, const TabularMdp& mdp) {
  ValueEstimate values = values_from_json(read_file(path), mdp);
  const ValidationResult result = validate_values(mdp, values);
  if (!result.ok()) throw DomainError(format_violations(path.string(), result));
  return values;
}

RunRecord load_run(const std::filesystem::path& path, const TabularMdp& mdp) {
  RunRecord run = run_from_json(read_file(path), mdp);
  const ValidationResult result = validate_run(mdp, run);
  if (!result.ok()) throw DomainError(format_violations(path.string(), result));
  return run;
}

}  // namespace cmdp
