#pragma once

// Run-level creativity analysis: applies one mapping to every snapshot of a
// run, classifies policy changes between consecutive snapshots and scans the
// sampled experience for exploratory discoveries and experienced
// aberrations.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmdp/csf.hpp"
#include "cmdp/mapping_trajectory.hpp"
#include "cmdp/mdp.hpp"
#include "cmdp/normalization.hpp"
#include "cmdp/run_record.hpp"

namespace cmdp {

inline constexpr const char* kReportSchema = "cmdp.creativity-report/1";
inline constexpr const char* kNoveltyRule = "run-local-first-occurrence";

struct AnalysisConfig {
  MappingKind mapping = MappingKind::transition;
  double alpha = 0.05;
  double beta = 0.5;
  /// Trajectory mapping only; defaults to |S| * |A|.
  std::optional<std::size_t> horizon;
  Normalization normalization;
};

/// Horizon actually used for `cfg` on `mdp` (empty for s and sas).
std::optional<std::size_t> resolved_horizon(const TabularMdp& mdp, const AnalysisConfig& cfg);

/// A sampled concept whose acceptability under its snapshot is <= alpha.
struct ExperiencedAberration {
  std::size_t step = 0;
  std::string concept_label;
  double acceptability = 0.0;
  /// Trajectory mapping only: log p split into policy and dynamics parts
  /// (null when a part is -inf). Labelled as an extension in reports.
  std::optional<double> log_policy;
  std::optional<double> log_transition;

  bool operator==(const ExperiencedAberration&) const = default;
};

struct SnapshotReport {
  std::size_t index = 0;
  std::size_t step = 0;
  std::vector<std::string> conceptual_space;
  /// FNV-1a over the sorted member labels; equal cuts give equal hashes.
  std::string conceptual_space_hash;
  std::size_t reachable_size = 0;
  /// Horizon bound used for reachability (trajectory mapping only).
  std::optional<std::size_t> reachable_bound;
  UninspirationFlags uninspiration;
  AberrationClass aberration_class = AberrationClass::none;
  std::vector<std::string> aberrations;
  std::vector<ExperiencedAberration> experienced_aberrations;

  bool operator==(const SnapshotReport&) const = default;
};

struct TransformationEvent {
  std::size_t from = 0;
  std::size_t to = 0;
  TransformationKind kind = TransformationKind::none;
  bool valued = false;

  bool operator==(const TransformationEvent&) const = default;
};

struct ExploratoryEvent {
  std::size_t step = 0;
  std::size_t snapshot = 0;
  std::string concept_label;
  double evaluation = 0.0;
  bool in_conceptual_space = false;

  bool operator==(const ExploratoryEvent&) const = default;
};

struct ReportConfig {
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<std::size_t> horizon;
  Normalization normalization;
  std::optional<std::uint64_t> seed;
  std::string algorithm;
  std::vector<std::string> starts;
  std::string novelty = kNoveltyRule;

  bool operator==(const ReportConfig&) const = default;
};

struct CreativityReport {
  std::string schema = kReportSchema;
  MappingKind mapping = MappingKind::transition;
  ReportConfig config;
  std::vector<SnapshotReport> snapshots;
  std::vector<TransformationEvent> transformations;
  std::vector<ExploratoryEvent> exploratory_events;

  bool operator==(const CreativityReport&) const = default;
};

/// Wraps a single policy (and optional values) as a one-snapshot run.
RunRecord single_snapshot_run(const StochasticPolicy& policy, std::optional<ValueEstimate> values,
                              std::vector<StateId> starts);

/// Builds the mapping's ECS for one snapshot. The evaluation comes from
/// `evaluation_source` (defaults to the snapshot itself), which lets callers
/// hold the evaluation fixed across a policy change.
EcsInstance snapshot_ecs(const TabularMdp& mdp, const RunRecord& run, std::size_t snapshot,
                         const AnalysisConfig& cfg, std::optional<std::size_t> evaluation_source = {});

/// The mapping's initial tuple for one snapshot.
std::vector<Concept> snapshot_initial(const TabularMdp& mdp, const RunRecord& run, std::size_t snapshot,
                                      const AnalysisConfig& cfg);

/// Step bound standing in for E^infinity under the mapping.
StepBound analysis_bound(const TabularMdp& mdp, const AnalysisConfig& cfg);

/// Concept produced by each experience entry under the mapping, in order.
std::vector<Concept> experienced_concepts(const RunRecord& run, MappingKind mapping);

/// First occurrences of never-before-reached concepts whose evaluation under
/// the attributed snapshot exceeds beta. Initial concepts count as reached.
std::vector<ExploratoryEvent> detect_exploratory_events(const TabularMdp& mdp, const RunRecord& run,
                                                        const AnalysisConfig& cfg);

/// Classifies every consecutive snapshot pair. Valuation holds the earlier
/// snapshot's evaluation fixed.
std::vector<TransformationEvent> detect_transformations(const TabularMdp& mdp, const RunRecord& run,
                                                        const AnalysisConfig& cfg);

/// Full deterministic report. Component errors are rethrown as DomainError
/// with the snapshot context prepended.
CreativityReport analyze(const TabularMdp& mdp, const RunRecord& run, const AnalysisConfig& cfg);

/// "mapping=sas C=2 aberration=none uninspiration=none events=1 transformations=0"
/// for the final snapshot.
std::string summary_line(const CreativityReport& report);

/// Plain-text rendering with one `key: value` line per report field.
std::string render_text(const CreativityReport& report);

}  // namespace cmdp
