#include "cmdp/analyzer.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cmdp/mapping_state.hpp"
#include "cmdp/mapping_transition.hpp"
#include "detail.hpp"

namespace cmdp {

namespace {

const ValueEstimate& require_values(const RunRecord& run, std::size_t snapshot, MappingKind mapping) {
  const auto& values = run.snapshots.at(snapshot).values;
  if (!values) {
    throw DomainError("mapping " + to_string(mapping) + " needs a value estimate in snapshot " +
                      std::to_string(snapshot));
  }
  return *values;
}

std::string fnv1a_hex(const std::vector<std::string>& labels) {
  std::uint64_t hash = 14695981039346656037ull;
  for (const std::string& label : labels) {
    for (unsigned char ch : label) {
      hash ^= ch;
      hash *= 1099511628211ull;
    }
    hash ^= 0x0a;
    hash *= 1099511628211ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

std::vector<std::string> labels_of(const ConceptSet& set, const TabularMdp& mdp) {
  std::vector<std::string> out;
  out.reserve(set.size());
  for (const Concept& c : set) out.push_back(concept_label(c, mdp));
  return out;
}

std::optional<double> finite_or_null(double x) {
  return std::isfinite(x) ? std::optional<double>(x) : std::nullopt;
}

template <class F>
auto with_context(const std::string& context, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw DomainError(context + ": " + e.what());
  }
}

/// Initial concepts marked as already reached before any experience.
ConceptSet seeded_concepts(const RunRecord& run, const AnalysisConfig& cfg) {
  switch (cfg.mapping) {
    case MappingKind::state:
      return ConceptSet(ms_initial(run.starts));
    case MappingKind::transition:
      return {};
    case MappingKind::trajectory: {
      ConceptSet out;
      for (StateId s : run.starts) out.insert(Trajectory{s, {}});
      return out;
    }
  }
  return {};
}

}  // namespace

std::optional<std::size_t> resolved_horizon(const TabularMdp& mdp, const AnalysisConfig& cfg) {
  if (cfg.mapping != MappingKind::trajectory) return std::nullopt;
  return cfg.horizon.value_or(mdp.num_states() * mdp.num_actions());
}

RunRecord single_snapshot_run(const StochasticPolicy& policy, std::optional<ValueEstimate> values,
                              std::vector<StateId> starts) {
  RunRecord run;
  run.algorithm = "static";
  run.starts = std::move(starts);
  run.snapshots.push_back({0, policy, std::move(values)});
  return run;
}

EcsInstance snapshot_ecs(const TabularMdp& mdp, const RunRecord& run, std::size_t snapshot,
                         const AnalysisConfig& cfg, std::optional<std::size_t> evaluation_source) {
  const std::size_t source = evaluation_source.value_or(snapshot);
  const StochasticPolicy& policy = run.snapshots.at(snapshot).policy;
  switch (cfg.mapping) {
    case MappingKind::state:
      return build_ms(mdp, policy, require_values(run, source, cfg.mapping),
                      {cfg.alpha, cfg.beta, cfg.normalization});
    case MappingKind::transition:
      return build_msas(mdp, policy, {cfg.alpha, cfg.beta, cfg.normalization});
    case MappingKind::trajectory:
      return build_mtau(mdp, policy, require_values(run, source, cfg.mapping),
                        {cfg.alpha, cfg.beta, *resolved_horizon(mdp, cfg), cfg.normalization}, run.starts);
  }
  throw DomainError("unknown mapping");
}

std::vector<Concept> snapshot_initial(const TabularMdp& mdp, const RunRecord& run, std::size_t snapshot,
                                      const AnalysisConfig& cfg) {
  switch (cfg.mapping) {
    case MappingKind::state:
      return ms_initial(run.starts);
    case MappingKind::transition:
      return msas_initial(mdp, run.snapshots.at(snapshot).policy, run.starts);
    case MappingKind::trajectory:
      return mtau_initial();
  }
  throw DomainError("unknown mapping");
}

StepBound analysis_bound(const TabularMdp& mdp, const AnalysisConfig& cfg) {
  if (auto h = resolved_horizon(mdp, cfg)) return StepBound::bounded(*h);
  return StepBound::fixpoint();
}

std::vector<Concept> experienced_concepts(const RunRecord& run, MappingKind mapping) {
  std::vector<Concept> out;
  out.reserve(run.experience.size());
  Trajectory prefix;
  std::optional<std::size_t> episode;
  for (const Experience& e : run.experience) {
    switch (mapping) {
      case MappingKind::state:
        out.emplace_back(StateConcept{e.next});
        break;
      case MappingKind::transition:
        out.emplace_back(TransitionConcept{e.state, e.action, e.next});
        break;
      case MappingKind::trajectory:
        if (!episode || *episode != e.episode || prefix.last_state() != e.state) {
          prefix = Trajectory{e.state, {}};
          episode = e.episode;
        }
        prefix.steps.push_back({e.action, e.next});
        out.emplace_back(prefix);
        break;
    }
  }
  return out;
}

std::vector<ExploratoryEvent> detect_exploratory_events(const TabularMdp& mdp, const RunRecord& run,
                                                        const AnalysisConfig& cfg) {
  detail::require_valid(validate_run(mdp, run));
  std::vector<EcsInstance> instances;
  instances.reserve(run.snapshots.size());
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) instances.push_back(snapshot_ecs(mdp, run, i, cfg));

  ConceptSet reached = seeded_concepts(run, cfg);
  const std::vector<Concept> concepts = experienced_concepts(run, cfg.mapping);
  std::vector<ExploratoryEvent> events;
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    const Concept& c = concepts[i];
    if (!reached.insert(c)) continue;
    const Experience& e = run.experience[i];
    const EcsInstance& ecs = instances[e.snapshot];
    const double value = ecs.evaluation(c);
    if (value > cfg.beta) {
      events.push_back({e.step, e.snapshot, concept_label(c, mdp), value, ecs.acceptability(c) > cfg.alpha});
    }
  }
  return events;
}

std::vector<TransformationEvent> detect_transformations(const TabularMdp& mdp, const RunRecord& run,
                                                        const AnalysisConfig& cfg) {
  detail::require_valid(validate_run(mdp, run));
  std::vector<TransformationEvent> events;
  const StepBound bound = analysis_bound(mdp, cfg);
  for (std::size_t i = 0; i + 1 < run.snapshots.size(); ++i) {
    const std::string context = "snapshots " + std::to_string(i) + "->" + std::to_string(i + 1);
    events.push_back(with_context(context, [&] {
      const StochasticPolicy& before = run.snapshots[i].policy;
      const StochasticPolicy& after = run.snapshots[i + 1].policy;
      TransformationEvent event{i, i + 1, TransformationKind::none, false};
      switch (cfg.mapping) {
        case MappingKind::state:
          event.kind = ms_transformation_kind(before, after);
          break;
        case MappingKind::transition:
          event.kind = msas_transformation_kind(mdp, before, after, {cfg.alpha, cfg.beta, cfg.normalization});
          break;
        case MappingKind::trajectory:
          event.kind = mtau_transformation_kind(
              mdp, before, after, require_values(run, i, cfg.mapping),
              {cfg.alpha, cfg.beta, *resolved_horizon(mdp, cfg), cfg.normalization}, run.starts);
          break;
      }
      if (event.kind != TransformationKind::none) {
        const EcsInstance old_ecs = snapshot_ecs(mdp, run, i, cfg);
        const EcsInstance new_ecs = snapshot_ecs(mdp, run, i + 1, cfg, i);
        event.valued = admits_new_valued_concepts(old_ecs, snapshot_initial(mdp, run, i, cfg), new_ecs,
                                                  snapshot_initial(mdp, run, i + 1, cfg), bound,
                                                  old_ecs.evaluation, cfg.beta);
      }
      return event;
    }));
  }
  return events;
}

CreativityReport analyze(const TabularMdp& mdp, const RunRecord& run, const AnalysisConfig& cfg) {
  validate_thresholds(cfg.alpha, cfg.beta);
  detail::require_valid(validate_mdp(mdp));
  detail::require_valid(validate_run(mdp, run));
  if (cfg.mapping == MappingKind::trajectory && cfg.horizon && *cfg.horizon == 0) {
    throw DomainError("horizon must be at least 1");
  }

  CreativityReport report;
  report.mapping = cfg.mapping;
  report.config.alpha = cfg.alpha;
  report.config.beta = cfg.beta;
  report.config.horizon = resolved_horizon(mdp, cfg);
  report.config.normalization = cfg.normalization;
  report.config.seed = run.seed;
  report.config.algorithm = run.algorithm;
  for (StateId s : run.starts) report.config.starts.push_back(mdp.states().label(s));

  const StepBound bound = analysis_bound(mdp, cfg);
  std::vector<EcsInstance> instances;
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    report.snapshots.push_back(with_context("snapshot " + std::to_string(i), [&] {
      instances.push_back(snapshot_ecs(mdp, run, i, cfg));
      const EcsInstance& ecs = instances.back();
      const std::vector<Concept> initial = snapshot_initial(mdp, run, i, cfg);
      SnapshotReport snap;
      snap.index = i;
      snap.step = run.snapshots[i].step;
      const ConceptSet space = conceptual_space(ecs);
      snap.conceptual_space = labels_of(space, mdp);
      snap.conceptual_space_hash = fnv1a_hex(snap.conceptual_space);
      const ReachableSet reachable = reachable_set(ecs, initial, bound);
      snap.reachable_size = reachable.concepts.size();
      snap.reachable_bound = reachable.bound;
      snap.uninspiration = classify_uninspiration(ecs, initial, bound);
      const ConceptSet aberrant = reachable.concepts.set_difference(space);
      snap.aberration_class = classify_aberration(ecs, aberrant);
      snap.aberrations = labels_of(aberrant, mdp);
      return snap;
    }));
  }

  ConceptSet logged;
  const std::vector<Concept> concepts = experienced_concepts(run, cfg.mapping);
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    const Experience& e = run.experience[i];
    const double p = instances[e.snapshot].acceptability(concepts[i]);
    if (p > cfg.alpha || !logged.insert(concepts[i])) continue;
    ExperiencedAberration entry{e.step, concept_label(concepts[i], mdp), p, std::nullopt, std::nullopt};
    if (const auto* tau = std::get_if<Trajectory>(&concepts[i])) {
      const LogProbabilityParts parts =
          decompose_log_probability(mdp, run.snapshots[e.snapshot].policy, *tau);
      entry.log_policy = finite_or_null(parts.policy);
      entry.log_transition = finite_or_null(parts.transition);
    }
    report.snapshots[e.snapshot].experienced_aberrations.push_back(std::move(entry));
  }

  report.transformations = detect_transformations(mdp, run, cfg);
  report.exploratory_events = detect_exploratory_events(mdp, run, cfg);
  return report;
}

std::string summary_line(const CreativityReport& report) {
  std::ostringstream out;
  out << "mapping=" << to_string(report.mapping);
  if (report.snapshots.empty()) return out.str();
  const SnapshotReport& last = report.snapshots.back();
  std::string flags;
  auto add = [&](const char* name) { flags += flags.empty() ? name : std::string("+") + name; };
  if (last.uninspiration.generative) add("generative");
  if (last.uninspiration.conceptual) add("conceptual");
  if (last.uninspiration.hopeless.value_or(false)) add("hopeless");
  std::size_t transformations = 0;
  for (const auto& t : report.transformations) transformations += t.kind != TransformationKind::none;
  out << " C=" << last.conceptual_space.size() << " aberration=" << to_string(last.aberration_class)
      << " uninspiration=" << (flags.empty() ? "none" : flags);
  if (!last.uninspiration.hopeless) out << " hopeless=indeterminate";
  out << " events=" << report.exploratory_events.size() << " transformations=" << transformations;
  return out.str();
}

std::string render_text(const CreativityReport& report) {
  std::ostringstream out;
  out.precision(17);
  auto list = [](const std::vector<std::string>& items) {
    std::string joined;
    for (const auto& item : items) joined += (joined.empty() ? "" : " ") + item;
    return "[" + joined + "]";
  };
  auto opt = [](const auto& value) {
    std::ostringstream s;
    s.precision(17);
    if (value) {
      s << *value;
    } else {
      s << "null";
    }
    return s.str();
  };
  out << "schema: " << report.schema << "\n";
  out << "mapping: " << to_string(report.mapping) << "\n";
  out << "config.alpha: " << report.config.alpha << "\n";
  out << "config.beta: " << report.config.beta << "\n";
  out << "config.horizon: " << opt(report.config.horizon) << "\n";
  out << "config.normalization: " << to_string(report.config.normalization.kind) << "\n";
  out << "config.seed: " << opt(report.config.seed) << "\n";
  out << "config.algorithm: " << report.config.algorithm << "\n";
  out << "config.starts: " << list(report.config.starts) << "\n";
  out << "config.novelty: " << report.config.novelty << "\n";
  for (const SnapshotReport& s : report.snapshots) {
    const std::string p = "snapshot[" + std::to_string(s.index) + "].";
    out << p << "step: " << s.step << "\n";
    out << p << "conceptual_space_size: " << s.conceptual_space.size() << "\n";
    out << p << "conceptual_space_hash: " << s.conceptual_space_hash << "\n";
    out << p << "conceptual_space: " << list(s.conceptual_space) << "\n";
    out << p << "reachable_size: " << s.reachable_size << "\n";
    out << p << "reachable_bound: " << opt(s.reachable_bound) << "\n";
    out << p << "uninspiration.generative: " << (s.uninspiration.generative ? "true" : "false") << "\n";
    out << p << "uninspiration.conceptual: " << (s.uninspiration.conceptual ? "true" : "false") << "\n";
    out << p << "uninspiration.hopeless: "
        << (s.uninspiration.hopeless ? (*s.uninspiration.hopeless ? "true" : "false") : "indeterminate") << "\n";
    out << p << "aberration.class: " << to_string(s.aberration_class) << "\n";
    out << p << "aberration.size: " << s.aberrations.size() << "\n";
    out << p << "aberration.members: " << list(s.aberrations) << "\n";
    for (const auto& a : s.experienced_aberrations) {
      out << p << "experienced_aberration: step=" << a.step << " concept=" << a.concept_label
          << " acceptability=" << a.acceptability << " extension.log_policy=" << opt(a.log_policy)
          << " extension.log_transition=" << opt(a.log_transition) << "\n";
    }
  }
  for (const auto& t : report.transformations) {
    out << "transformation: from=" << t.from << " to=" << t.to << " kind=" << to_string(t.kind)
        << " valued=" << (t.valued ? "true" : "false") << "\n";
  }
  for (const auto& e : report.exploratory_events) {
    out << "exploratory_event: step=" << e.step << " snapshot=" << e.snapshot << " concept=" << e.concept_label
        << " evaluation=" << e.evaluation << " in_conceptual_space=" << (e.in_conceptual_space ? "true" : "false")
        << "\n";
  }
  out << "summary: " << summary_line(report) << "\n";
  return out.str();
}

}  // namespace cmdp
