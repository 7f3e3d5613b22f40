#pragma once

#include <optional>

#include "numberless/automaton.hpp"

namespace numberless {

// Probabilistic Buchi automaton: the final states of `automaton` are the
// Buchi-accepting states. Reductions also record their sharp letter and sink.
struct BuchiAutomaton {
  ProbAutomaton automaton;
  std::optional<LetterId> sharp;
  std::optional<StateId> sink;

  bool is_accepting(StateId s) const { return automaton.is_final(s); }
};

// Adds a letter '#' leading from every final state to the initial state and
// from every other state to a fresh rejecting sink. Throws AlphabetClash.
BuchiAutomaton buchi_reduction(const ProbAutomaton& a);

}  // namespace numberless
