#pragma once

#include <string>
#include <vector>

#include "numberless/automaton.hpp"

namespace numberless {

inline constexpr const char* kSharpName = "#";

// Probability that one fair-coin gadget commits to a successor within k
// rounds of two sharps: 1 - (1 - 2*lambda*(1 - lambda))^k.
// Throws DomainError unless 0 < lambda < 1.
Rational commit_probability(const Rational& lambda, unsigned long k);

// [u]^k: every letter is followed by 2k sharps.
Word encode_word(const Word& u, unsigned long k, LetterId sharp);

// Removes every occurrence of `sharp`.
Word erase_sharps(const Word& w, LetterId sharp);

// A transition of the fair-coin automaton, independent of lambda: the
// successor taken with probability lambda and the one taken with 1 - lambda.
// Equal targets mean a deterministic transition.
struct CoinEdge {
  StateId on_lambda;
  StateId on_co_lambda;
  bool deterministic() const { return on_lambda == on_co_lambda; }
  friend bool operator==(const CoinEdge&, const CoinEdge&) = default;
};

// The lambda-free shape shared by every B_lambda. Original states keep their
// ids; gadget states for (q, a) follow, then the sink. Letters of the source
// alphabet keep their ids and the sharp letter comes last.
class FairCoinStructure {
 public:
  const NameTable& states() const { return states_; }
  const NameTable& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_letters() const { return alphabet_.size(); }
  StateId initial() const { return initial_; }
  const std::vector<StateId>& final_states() const { return final_; }
  bool is_final(StateId s) const;

  const CoinEdge& edge(StateId s, LetterId b) const {
    return edges_[s * num_letters() + b];
  }

  LetterId sharp() const { return static_cast<LetterId>(num_letters() - 1); }
  std::size_t num_original_states() const { return num_original_; }
  StateId gadget(StateId q, LetterId a) const;        // q_a
  StateId gadget_left(StateId q, LetterId a) const;   // (q_a, L)
  StateId gadget_right(StateId q, LetterId a) const;  // (q_a, R)
  StateId sink() const { return static_cast<StateId>(num_states() - 1); }

  ProbAutomaton instantiate(const Rational& lambda) const;

 private:
  friend FairCoinStructure fair_coin_structure(const ProbAutomaton& simple);

  NameTable states_;
  NameTable alphabet_;
  StateId initial_ = 0;
  std::vector<StateId> final_;
  std::vector<CoinEdge> edges_;
  std::size_t num_original_ = 0;
  std::size_t num_source_letters_ = 0;
};

// Throws NotSimple or AlphabetClash (source alphabet already has "#").
FairCoinStructure fair_coin_structure(const ProbAutomaton& simple);

struct FairCoinOutput {
  ProbAutomaton automaton;
  FairCoinStructure structure;
};

FairCoinOutput fair_coin(const ProbAutomaton& simple, const Rational& lambda);

}  // namespace numberless
