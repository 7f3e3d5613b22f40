#pragma once

#include <cstdint>
#include <vector>

#include "numberless/automaton.hpp"

namespace numberless {

// One application of the transition function, extended linearly to `d`.
// Throws UnknownLetter / UnknownState.
Distribution step(const ProbAutomaton& pa, const Distribution& d,
                  LetterId letter);

// Folds step over `word`.
Distribution run(const ProbAutomaton& pa, Distribution d, const Word& word);

Rational accept_prob(const ProbAutomaton& pa, const Word& word);

// Probability of reaching a state in `targets` from `source` reading `word`.
Rational reach_prob(const ProbAutomaton& pa, StateId source, const Word& word,
                    const std::vector<StateId>& targets);

struct WordEvalTrace {
  Word word;
  std::vector<Distribution> prefixes;  // prefixes[i]: after i letters
  Rational acceptance;
};

WordEvalTrace trace(const ProbAutomaton& pa, const Word& word);

// (q, a, p) is kept exactly when delta(q, a)(p) > 0.
NumberlessAutomaton support_abstraction(const ProbAutomaton& pa);

// Builds npa[spec]. Throws InconsistentSupport naming the first violating
// triple and whether the edge is missing from or extra to the support.
ProbAutomaton instantiate(const NumberlessAutomaton& npa, DeltaSpec spec);

// Fraction of `samples` sampled runs ending in a final state. Deterministic
// for a given seed.
double monte_carlo_accept(const ProbAutomaton& pa, const Word& word,
                          std::uint64_t samples, std::uint64_t seed);

}  // namespace numberless
