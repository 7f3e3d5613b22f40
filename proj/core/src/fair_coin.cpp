#include "numberless/fair_coin.hpp"

#include <algorithm>

#include "numberless/errors.hpp"

namespace numberless {

namespace {

void require_open_unit(const Rational& lambda, const char* what) {
  if (sgn(lambda) <= 0 || lambda >= 1)
    throw DomainError(std::string(what) + " = " + to_string(lambda) +
                      " is outside (0, 1)");
}

}  // namespace

Rational commit_probability(const Rational& lambda, unsigned long k) {
  require_open_unit(lambda, "lambda");
  const Rational stay = 1 - 2 * lambda * (1 - lambda);
  return 1 - pow(stay, k);
}

Word encode_word(const Word& u, unsigned long k, LetterId sharp) {
  Word out;
  out.reserve(u.size() * (2 * k + 1));
  for (LetterId a : u) {
    out.push_back(a);
    out.insert(out.end(), 2 * k, sharp);
  }
  return out;
}

Word erase_sharps(const Word& w, LetterId sharp) {
  Word out;
  std::copy_if(w.begin(), w.end(), std::back_inserter(out),
               [sharp](LetterId a) { return a != sharp; });
  return out;
}

bool FairCoinStructure::is_final(StateId s) const {
  return std::binary_search(final_.begin(), final_.end(), s);
}

StateId FairCoinStructure::gadget(StateId q, LetterId a) const {
  return static_cast<StateId>(num_original_ + 3 * (q * num_source_letters_ + a));
}
StateId FairCoinStructure::gadget_left(StateId q, LetterId a) const {
  return gadget(q, a) + 1;
}
StateId FairCoinStructure::gadget_right(StateId q, LetterId a) const {
  return gadget(q, a) + 2;
}

ProbAutomaton FairCoinStructure::instantiate(const Rational& lambda) const {
  require_open_unit(lambda, "lambda");
  const Rational co_lambda = 1 - lambda;
  DeltaSpec delta;
  delta.reserve(edges_.size());
  for (const CoinEdge& e : edges_) {
    if (e.deterministic())
      delta.push_back(Distribution::point(e.on_lambda));
    else
      delta.push_back(Distribution::make({{e.on_lambda, lambda}, {e.on_co_lambda, co_lambda}}));
  }
  return ProbAutomaton(states_, alphabet_, initial_, std::move(delta), final_);
}

FairCoinStructure fair_coin_structure(const ProbAutomaton& simple) {
  if (!simple.is_simple())
    throw NotSimple("transition probabilities must lie in {0, 1/2, 1}");
  if (simple.alphabet().contains(kSharpName))
    throw AlphabetClash(std::string("source alphabet already contains '") +
                        kSharpName + "'");

  const std::size_t n = simple.num_states();
  const std::size_t m = simple.num_letters();

  FairCoinStructure b;
  b.num_original_ = n;
  b.num_source_letters_ = m;
  b.states_ = simple.states();
  for (StateId q = 0; q < n; ++q) {
    for (LetterId a = 0; a < m; ++a) {
      const std::string base = simple.states().name(q) + "|" + simple.alphabet().name(a);
      b.states_.add(base);
      b.states_.add(base + "|L");
      b.states_.add(base + "|R");
    }
  }
  const StateId sink = b.states_.add(b.states_.fresh("bot"));
  b.alphabet_ = simple.alphabet();
  const LetterId sharp = b.alphabet_.add(kSharpName);
  b.initial_ = simple.initial();
  b.final_ = simple.final_states();

  const std::size_t letters = m + 1;
  auto det = [](StateId t) { return CoinEdge{t, t}; };
  b.edges_.assign(b.states_.size() * letters, det(sink));
  auto set = [&](StateId s, LetterId c, CoinEdge e) { b.edges_[s * letters + c] = e; };

  for (StateId q = 0; q < n; ++q) {
    set(q, sharp, det(q));
    for (LetterId a = 0; a < m; ++a) {
      const auto& d = simple.delta(q, a);
      // r takes the left branch, s the right one; r == s for deterministic
      // source transitions.
      const StateId r = d.entries().front().first;
      const StateId s = d.entries().back().first;
      const StateId qa = b.gadget(q, a);
      const StateId left = b.gadget_left(q, a);
      const StateId right = b.gadget_right(q, a);
      set(q, a, det(qa));
      set(qa, sharp, CoinEdge{left, right});
      set(left, sharp, CoinEdge{qa, r});
      set(right, sharp, CoinEdge{s, qa});
      // Source letters from gadget states already lead to the sink.
    }
  }
  return b;
}

FairCoinOutput fair_coin(const ProbAutomaton& simple, const Rational& lambda) {
  FairCoinStructure structure = fair_coin_structure(simple);
  ProbAutomaton automaton = structure.instantiate(lambda);
  return FairCoinOutput{std::move(automaton), std::move(structure)};
}

}  // namespace numberless
