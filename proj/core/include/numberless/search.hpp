#pragma once

#include <cstddef>

#include "numberless/automaton.hpp"

namespace numberless {

struct SearchBudget {
  std::size_t max_word_length = 8;
  std::size_t beam_width = 0;  // 0 keeps every distinct distribution
  std::size_t max_distribution_states = 2'000'000;
};

struct SearchResult {
  Word word;
  Rational probability;
  std::size_t explored = 0;  // distinct distributions visited
};

// Breadth-first search over reachable distributions (belief states), keeping
// the best word seen. In exhaustive mode the result is the exact maximum of
// the acceptance probability over all words of length <= max_word_length.
// Ties keep the shortest, then lexicographically smallest, word.
// Throws BudgetExceeded when more than max_distribution_states distinct
// distributions are visited.
SearchResult value_lower_bound(const ProbAutomaton& pa, const SearchBudget& budget);

// States from which some final state is reachable in the transition graph
// (final states included).
std::vector<bool> coreachable_to_final(const ProbAutomaton& pa);

}  // namespace numberless
