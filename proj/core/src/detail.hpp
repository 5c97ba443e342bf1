#pragma once

#include "cmdp/errors.hpp"
#include "cmdp/mdp.hpp"

namespace cmdp::detail {

/// Throws DomainError carrying the first violation.
inline void require_valid(const ValidationResult& result) {
  if (!result.ok()) {
    throw DomainError(result.violations.front().path + ": " + result.violations.front().message);
  }
}

inline void require_same_shape(const StochasticPolicy& a, const StochasticPolicy& b) {
  if (a.num_states() != b.num_states() || a.num_actions() != b.num_actions()) {
    throw DomainError("policies have different shapes");
  }
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace cmdp::detail
