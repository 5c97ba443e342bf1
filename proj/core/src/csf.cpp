#include "cmdp/csf.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

#include "detail.hpp"

namespace cmdp {

namespace {

using detail::Overloaded;

void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0,1]");
  }
}

ConceptSet valued(const EcsInstance& ecs, const ConceptSet& set) {
  return strong_alpha_cut(ecs.evaluation, set, ecs.beta);
}

}  // namespace

std::string concept_label(const Concept& c, const TabularMdp& mdp) {
  const auto& S = mdp.states();
  const auto& A = mdp.actions();
  return std::visit(
      Overloaded{
          [](const EmptyConcept&) { return std::string("⊤"); },
          [&](const StateConcept& s) { return S.label(s.state); },
          [&](const TransitionConcept& t) {
            return "(" + S.label(t.state) + "," + A.label(t.action) + "," + S.label(t.next) + ")";
          },
          [&](const Trajectory& t) {
            std::string out = "(" + S.label(t.start);
            for (const Step& step : t.steps) out += "," + A.label(step.action) + "," + S.label(step.next);
            return out + ")";
          },
      },
      c);
}

ConceptSet ConceptSet::set_union(const ConceptSet& other) const {
  ConceptSet out = *this;
  out.items_.insert(other.items_.begin(), other.items_.end());
  return out;
}

ConceptSet ConceptSet::set_difference(const ConceptSet& other) const {
  ConceptSet out;
  std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                      std::inserter(out.items_, out.items_.end()));
  return out;
}

bool ConceptSet::is_subset_of(const ConceptSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

ConceptSet elements(const std::vector<Concept>& tuple) { return ConceptSet(tuple); }

ConceptSet strong_alpha_cut(const ConceptFunction& f, const ConceptSet& set, double alpha) {
  check_unit_interval(alpha, "threshold");
  ConceptSet out;
  for (const Concept& c : set) {
    const double value = f(c);
    check_unit_interval(value, "concept function value");
    if (value > alpha) out.insert(c);
  }
  return out;
}

std::string to_string(MappingKind kind) {
  switch (kind) {
    case MappingKind::state:
      return "s";
    case MappingKind::transition:
      return "sas";
    case MappingKind::trajectory:
      return "tau";
  }
  return "unknown";
}

MappingKind parse_mapping_kind(const std::string& name) {
  if (name == "s") return MappingKind::state;
  if (name == "sas") return MappingKind::transition;
  if (name == "tau") return MappingKind::trajectory;
  throw DomainError("unknown mapping '" + name + "' (expected s, sas or tau)");
}

ConceptSet conceptual_space(const EcsInstance& ecs) {
  check_unit_interval(ecs.alpha, "alpha");
  if (ecs.growing_concepts && !ecs.horizon) throw DomainError("horizon required");
  if (ecs.enumerate_above) return ecs.enumerate_above(ecs.alpha);
  return strong_alpha_cut(ecs.acceptability, ConceptSet(ecs.enumerate()), ecs.alpha);
}

ReachableSet reachable_set(const EcsInstance& ecs, const std::vector<Concept>& initial, StepBound m) {
  if (initial.empty()) throw DomainError("reachability needs a non-empty initial tuple");
  if (m.is_fixpoint() && ecs.growing_concepts) {
    throw DomainError("fixpoint undefined on growing concepts; supply horizon");
  }
  const std::vector<Concept> starts = ecs.resolve_initial ? ecs.resolve_initial(initial) : initial;

  ReachableSet result;
  result.bound = m.steps;
  std::vector<Concept> frontier;
  for (const Concept& c : starts) {
    if (result.concepts.insert(c)) frontier.push_back(c);
  }
  // A concept belongs to E^m iff its shortest traversal distance from the
  // initial tuple is at most m, so a depth-limited breadth-first search
  // computes the union of Q^n for n <= m.
  while (!frontier.empty()) {
    if (m.steps && result.steps == *m.steps) break;
    std::vector<Concept> next_frontier;
    for (const Concept& c : frontier) {
      for (Concept& successor : ecs.successors(c)) {
        if (result.concepts.contains(successor)) continue;
        result.concepts.insert(successor);
        next_frontier.push_back(std::move(successor));
        if (result.concepts.size() > kMaxReachableConcepts) {
          throw DomainError("reachable set exceeds " + std::to_string(kMaxReachableConcepts) +
                            " concepts; lower the horizon");
        }
      }
    }
    ++result.steps;
    frontier = std::move(next_frontier);
  }
  result.converged = frontier.empty();
  return result;
}

AberrationSet aberration_set(const EcsInstance& ecs, const std::vector<Concept>& initial, StepBound m) {
  const ReachableSet reachable = reachable_set(ecs, initial, m);
  return {reachable.concepts.set_difference(conceptual_space(ecs)), reachable.bound};
}

void validate_thresholds(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0,1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0,1]");
}

std::string to_string(TransformationKind kind) {
  switch (kind) {
    case TransformationKind::none:
      return "none";
    case TransformationKind::q_only:
      return "q-only";
    case TransformationKind::n_and_q:
      return "n-and-q";
  }
  return "unknown";
}

TransformationKind parse_transformation_kind(const std::string& name) {
  for (auto k : {TransformationKind::none, TransformationKind::q_only, TransformationKind::n_and_q}) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("unknown transformation kind '" + name + "'");
}

std::string to_string(AberrationClass c) {
  switch (c) {
    case AberrationClass::none:
      return "none";
    case AberrationClass::perfect:
      return "perfect";
    case AberrationClass::productive:
      return "productive";
    case AberrationClass::pointless:
      return "pointless";
  }
  return "unknown";
}

AberrationClass parse_aberration_class(const std::string& name) {
  for (auto c : {AberrationClass::none, AberrationClass::perfect, AberrationClass::productive,
                 AberrationClass::pointless}) {
    if (to_string(c) == name) return c;
  }
  throw DomainError("unknown aberration class '" + name + "'");
}

AberrationClass classify_aberration(const EcsInstance& ecs, const ConceptSet& aberrant) {
  if (aberrant.empty()) return AberrationClass::none;
  const ConceptSet rewarded = valued(ecs, aberrant);
  if (rewarded.size() == aberrant.size()) return AberrationClass::perfect;
  if (rewarded.empty()) return AberrationClass::pointless;
  return AberrationClass::productive;
}

UninspirationFlags classify_uninspiration(const EcsInstance& ecs, const std::vector<Concept>& initial,
                                          StepBound m) {
  UninspirationFlags flags;
  flags.generative = valued(ecs, reachable_set(ecs, initial, m).concepts).empty();
  flags.conceptual = valued(ecs, conceptual_space(ecs)).empty();
  if (ecs.subuniverse_witnesses) {
    flags.hopeless = valued(ecs, ConceptSet(*ecs.subuniverse_witnesses)).empty();
  }
  return flags;
}

bool admits_new_valued_concepts(const EcsInstance& before, const std::vector<Concept>& initial_before,
                                const EcsInstance& after, const std::vector<Concept>& initial_after,
                                StepBound m, const ConceptFunction& evaluation, double beta) {
  const ConceptSet old_concepts =
      reachable_set(before, initial_before, m).concepts.set_union(conceptual_space(before));
  const ConceptSet new_concepts =
      reachable_set(after, initial_after, m).concepts.set_union(conceptual_space(after));
  return !strong_alpha_cut(evaluation, new_concepts.set_difference(old_concepts), beta).empty();
}

}  // namespace cmdp
