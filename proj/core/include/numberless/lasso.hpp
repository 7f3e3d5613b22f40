#pragma once

#include "numberless/buchi.hpp"

namespace numberless {

// The ultimately periodic word stem . cycle^omega.
struct LassoWord {
  Word stem;
  Word cycle;
};

// Exact probability that the run on stem . cycle^omega visits accepting
// states infinitely often. One step of the induced Markov chain reads the
// whole cycle; a bottom component of that chain is accepting when some
// cycle traversal inside it can pass through an accepting state. The result
// is the absorption probability into accepting bottom components.
// Throws EmptyCycle or UnknownLetter.
Rational lasso_prob(const BuchiAutomaton& ba, const LassoWord& w);

// Solves A x = b exactly. Throws ValidationError for a singular system.
std::vector<Rational> solve_linear_system(std::vector<std::vector<Rational>> a,
                                          std::vector<Rational> b);

}  // namespace numberless
