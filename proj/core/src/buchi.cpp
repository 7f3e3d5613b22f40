#include "numberless/buchi.hpp"

#include "numberless/errors.hpp"
#include "numberless/fair_coin.hpp"

namespace numberless {

BuchiAutomaton buchi_reduction(const ProbAutomaton& a) {
  if (a.alphabet().contains(kSharpName))
    throw AlphabetClash(std::string("alphabet already contains '") + kSharpName + "'");
  NameTable states = a.states();
  const StateId sink = states.add(states.fresh("sink"));
  NameTable alphabet = a.alphabet();
  const LetterId sharp = alphabet.add(kSharpName);

  const std::size_t letters = alphabet.size();
  DeltaSpec delta;
  delta.reserve(states.size() * letters);
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (LetterId c = 0; c < a.num_letters(); ++c) delta.push_back(a.delta(q, c));
    delta.push_back(Distribution::point(a.is_final(q) ? a.initial() : sink));
  }
  for (LetterId c = 0; c < letters; ++c) delta.push_back(Distribution::point(sink));

  return BuchiAutomaton{ProbAutomaton(std::move(states), std::move(alphabet), a.initial(),
                                      std::move(delta), a.final_states()),
                        sharp, sink};
}

}  // namespace numberless
