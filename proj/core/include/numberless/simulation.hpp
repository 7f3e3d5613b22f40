#pragma once

#include <string>
#include <utility>
#include <vector>

#include "numberless/automaton.hpp"
#include "numberless/fair_coin.hpp"

namespace numberless {

// Letters of the simulation alphabet. Base and Sharp exist only to name
// fair-coin letters; the simulation alphabet itself never contains them.
struct SimLetter {
  enum class Kind { Base, Sharp, Check, Apply, Dollar, NextTransition, NextWord };
  Kind kind;
  LetterId b = 0;  // Check / Apply / Base
  StateId q = 0;   // Check / Apply
  friend bool operator==(const SimLetter&, const SimLetter&) = default;
};

// Simulation alphabet C = {check(b,q), apply(b,q)} + {$, next_transition,
// next_word} for b over the fair-coin alphabet and q over an enumeration of
// the fair-coin states. Layout: all checks (b-major), all applies, then the
// three control letters.
class SimAlphabet {
 public:
  SimAlphabet(NameTable b_alphabet, NameTable order);

  const NameTable& names() const { return names_; }
  const NameTable& b_alphabet() const { return b_alphabet_; }
  const NameTable& order() const { return order_; }
  std::size_t size() const { return names_.size(); }

  LetterId check(LetterId b, StateId q) const;
  LetterId apply(LetterId b, StateId q) const;
  LetterId dollar() const { return static_cast<LetterId>(2 * block()); }
  LetterId next_transition() const { return dollar() + 1; }
  LetterId next_word() const { return dollar() + 2; }

  SimLetter decode(LetterId c) const;

  // Renders with the base-letter names: check(b,q), apply(b,q), $, ... and
  // '#' for the sharp base letter.
  static std::string render(const SimLetter& l, const NameTable& b_alphabet,
                            const NameTable& order);

 private:
  std::size_t block() const { return b_alphabet_.size() * order_.size(); }

  NameTable b_alphabet_;
  NameTable order_;
  NameTable names_;
};

// The hat morphism: each b becomes check(b,q0) $ apply(b,q0) ...
// check(b,q_{n-1}) $ apply(b,q_{n-1}) next_transition.
Word hat(const SimAlphabet& alphabet, const Word& u);

// Complete DFA over C accepting {hat(u) next_word | u in B*}*.
class FairnessDfa {
 public:
  explicit FairnessDfa(SimAlphabet alphabet);

  const SimAlphabet& alphabet() const { return alphabet_; }
  const NameTable& states() const { return states_; }
  std::size_t num_states() const { return states_.size(); }
  StateId start() const { return 0; }  // also the only accepting state
  StateId sink() const { return 1; }
  StateId between_letters() const { return 2; }

  StateId next(StateId s, LetterId c) const { return next_[s * alphabet_.size() + c]; }
  StateId run(StateId s, const Word& w) const;
  bool accepts(const Word& w) const { return run(start(), w) == start(); }

  // Deterministic ProbAutomaton view (all transitions have probability 1).
  ProbAutomaton as_automaton() const;

 private:
  SimAlphabet alphabet_;
  NameTable states_;
  std::vector<StateId> next_;
};

FairnessDfa fairness_dfa(const SimAlphabet& alphabet);

// The numberless simulation automaton C built from a simple PA. Its only
// probabilistic pair is (q_R, $) with support {s0, s1, s}.
class SimulationNPA {
 public:
  const NumberlessAutomaton& npa() const { return npa_; }
  const SimAlphabet& alphabet() const { return dfa_.alphabet(); }
  const FairCoinStructure& source() const { return source_; }
  const FairnessDfa& checker() const { return dfa_; }

  // Enumeration of the fair-coin states used by hat and the checker.
  const NameTable& order() const { return alphabet().order(); }

  StateId left(StateId p) const { return p; }
  StateId right(StateId p) const { return static_cast<StateId>(source_.num_states() + p); }
  StateId q_r() const { return center_ + 0; }
  StateId s() const { return center_ + 1; }
  StateId s0() const { return center_ + 2; }
  StateId s1() const { return center_ + 3; }
  StateId wait() const { return center_ + 4; }
  StateId checker_state(StateId d) const { return center_ + 5 + d; }
  StateId checker_start() const { return checker_state(dfa_.start()); }
  StateId checker_sink() const { return checker_state(dfa_.sink()); }

 private:
  friend SimulationNPA build_simulation(const ProbAutomaton& simple);
  SimulationNPA(FairCoinStructure source, FairnessDfa dfa, NumberlessAutomaton npa,
                StateId center);

  FairCoinStructure source_;
  FairnessDfa dfa_;
  NumberlessAutomaton npa_;
  StateId center_;
};

// Throws NotSimple.
SimulationNPA build_simulation(const ProbAutomaton& simple);

// C[lambda, theta]: the probabilistic pair gets
// {s0: lambda*theta, s1: (1-lambda)*theta, s: 1-theta}. Throws DomainError.
ProbAutomaton instantiate_simulation(const SimulationNPA& c, const Rational& lambda,
                                     const Rational& theta);

// Inverse parameterization of an instance of C: theta = D(s0) + D(s1),
// lambda = D(s0) / theta.
std::pair<Rational, Rational> recover_parameters(const SimulationNPA& c,
                                                 const ProbAutomaton& instance);

// hat() after checking that `order` matches the stored enumeration.
// Throws OrderMismatch.
Word hat(const SimulationNPA& c, const Word& u, const std::vector<std::string>& order);

}  // namespace numberless
