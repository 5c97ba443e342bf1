#pragma once

// Mapping-agnostic exploratory creative system machinery. Everything here
// works on opaque concepts; the mapping headers decide what a concept is.

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cmdp/mdp.hpp"

namespace cmdp {

/// The distinguished empty concept (blank canvas).
struct EmptyConcept {
  auto operator<=>(const EmptyConcept&) const = default;
};

struct StateConcept {
  StateId state = 0;
  auto operator<=>(const StateConcept&) const = default;
};

struct TransitionConcept {
  StateId state = 0;
  ActionId action = 0;
  StateId next = 0;
  auto operator<=>(const TransitionConcept&) const = default;
};

/// Structural equality and a total order (variant index first, then
/// lexicographic over indices).
using Concept = std::variant<EmptyConcept, StateConcept, TransitionConcept, Trajectory>;

/// Human-readable form using the MDP's labels: "s0", "(s0,a1,s1)",
/// "(s0,a1,s1,a0,s1)", "(s0)" for an empty trajectory and "⊤" for Empty.
std::string concept_label(const Concept& c, const TabularMdp& mdp);

/// Finite set of concepts kept in Concept order.
class ConceptSet {
 public:
  using const_iterator = std::set<Concept>::const_iterator;

  ConceptSet() = default;
  ConceptSet(std::initializer_list<Concept> items) : items_(items) {}
  explicit ConceptSet(const std::vector<Concept>& items) : items_(items.begin(), items.end()) {}

  bool insert(Concept c) { return items_.insert(std::move(c)).second; }
  bool contains(const Concept& c) const { return items_.contains(c); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }

  ConceptSet set_union(const ConceptSet& other) const;
  ConceptSet set_difference(const ConceptSet& other) const;
  bool is_subset_of(const ConceptSet& other) const;

  bool operator==(const ConceptSet&) const = default;

 private:
  std::set<Concept> items_;
};

/// Flattens a tuple of concepts into the set of its members.
ConceptSet elements(const std::vector<Concept>& tuple);

using ConceptFunction = std::function<double(const Concept&)>;

/// {c in set | f(c) > alpha}. Throws std::domain_error if alpha is outside
/// [0,1] or f leaves [0,1] on any member.
ConceptSet strong_alpha_cut(const ConceptFunction& f, const ConceptSet& set, double alpha);

enum class MappingKind { state, transition, trajectory };

/// "s", "sas" or "tau".
std::string to_string(MappingKind kind);
MappingKind parse_mapping_kind(const std::string& name);

/// One exploratory creative system (P, N, V, Q) with its thresholds.
///
/// The sub-universe P is described by `enumerate`, which lists its finite
/// (or horizon-bounded) part in Concept order. `enumerate_above`, when set,
/// must equal strong_alpha_cut(acceptability, enumerate(), alpha) and lets
/// mappings with monotone acceptability prune the enumeration.
struct EcsInstance {
  MappingKind mapping = MappingKind::state;
  double alpha = 0.0;
  double beta = 0.0;

  std::function<std::vector<Concept>()> enumerate;
  std::function<ConceptSet(double alpha)> enumerate_above;
  /// Set when the enumeration is bounded by a trajectory horizon.
  std::optional<std::size_t> horizon;
  /// True when traversal makes concepts grow without bound, so no fixpoint
  /// exists.
  bool growing_concepts = false;

  /// Concepts that realize every evaluation value attained on P, when P can
  /// be searched for valued concepts at all. Empty optional means P is not
  /// finitely enumerable and hopeless uninspiration is indeterminate.
  std::optional<std::vector<Concept>> subuniverse_witnesses;

  ConceptFunction acceptability;
  ConceptFunction evaluation;

  /// Exact traversal support: every concept a single traversal step can
  /// produce from `c` with nonzero probability, in Concept order.
  std::function<std::vector<Concept>(const Concept&)> successors;
  /// Sampled traversal: maps each concept of the tuple to one successor.
  std::function<std::vector<Concept>(const std::vector<Concept>&, Rng&)> traverse;
  /// Rewrites a user-facing initial tuple into concrete start concepts (for
  /// example the empty concept into empty trajectories). Throws DomainError
  /// for starts the mapping cannot accept.
  std::function<std::vector<Concept>(const std::vector<Concept>&)> resolve_initial;
};

/// Number of traversal applications, or run to a fixpoint.
struct StepBound {
  std::optional<std::size_t> steps;

  static StepBound fixpoint() { return {}; }
  static StepBound bounded(std::size_t m) { return {m}; }
  bool is_fixpoint() const { return !steps.has_value(); }
};

struct ReachableSet {
  ConceptSet concepts;
  /// The set stopped growing within the bound.
  bool converged = false;
  /// Traversal applications performed.
  std::size_t steps = 0;
  /// The bound used when the result is not a fixpoint.
  std::optional<std::size_t> bound;
};

/// Hard limit on concepts materialized by a single reachability query.
inline constexpr std::size_t kMaxReachableConcepts = 2'000'000;

ConceptSet conceptual_space(const EcsInstance& ecs);

/// E^m(initial) by exact support propagation. Throws DomainError for an
/// empty initial tuple, for fixpoint mode on growing concepts, and when the
/// set exceeds kMaxReachableConcepts.
ReachableSet reachable_set(const EcsInstance& ecs, const std::vector<Concept>& initial, StepBound m);

struct AberrationSet {
  ConceptSet concepts;
  /// Set when E^infinity had to be approximated by a bounded E^m.
  std::optional<std::size_t> bound;
};

/// Reachable concepts outside the conceptual space.
AberrationSet aberration_set(const EcsInstance& ecs, const std::vector<Concept>& initial, StepBound m);

enum class AberrationClass { none, perfect, productive, pointless };
std::string to_string(AberrationClass c);
AberrationClass parse_aberration_class(const std::string& name);

AberrationClass classify_aberration(const EcsInstance& ecs, const ConceptSet& aberrant);

struct UninspirationFlags {
  bool generative = false;
  bool conceptual = false;
  /// Empty when the sub-universe cannot be searched.
  std::optional<bool> hopeless;

  bool operator==(const UninspirationFlags&) const = default;
};

UninspirationFlags classify_uninspiration(const EcsInstance& ecs, const std::vector<Concept>& initial,
                                          StepBound m);

/// Throws DomainError unless both thresholds lie in [0,1].
void validate_thresholds(double alpha, double beta);

/// Q-transformation is any change of the traversal strategy; an
/// N-transformation additionally changes the conceptual space and always
/// implies a Q-transformation.
enum class TransformationKind { none, q_only, n_and_q };
std::string to_string(TransformationKind kind);
TransformationKind parse_transformation_kind(const std::string& name);

/// Whether moving from `before` to `after` admits concepts valued by
/// `evaluation` (> beta) that were neither reachable nor in the conceptual
/// space before.
bool admits_new_valued_concepts(const EcsInstance& before, const std::vector<Concept>& initial_before,
                                const EcsInstance& after, const std::vector<Concept>& initial_after,
                                StepBound m, const ConceptFunction& evaluation, double beta);

}  // namespace cmdp
