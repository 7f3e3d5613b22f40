#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "numberless/distribution.hpp"
#include "numberless/names.hpp"

namespace numberless {

// Row-major transition table: entry state * |alphabet| + letter.
using DeltaSpec = std::vector<Distribution>;

// Probabilistic automaton (Q, A, q0, Delta, F) with a total transition
// function.
class ProbAutomaton {
 public:
  // Throws IncompleteAutomaton, UnknownState or ValidationError.
  ProbAutomaton(NameTable states, NameTable alphabet, StateId initial,
                DeltaSpec delta, std::vector<StateId> final_states);

  const NameTable& states() const { return states_; }
  const NameTable& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_letters() const { return alphabet_.size(); }
  StateId initial() const { return initial_; }

  const Distribution& delta(StateId state, LetterId letter) const {
    return delta_[state * num_letters() + letter];
  }
  const DeltaSpec& transitions() const { return delta_; }

  bool is_final(StateId s) const { return is_final_[s]; }
  const std::vector<StateId>& final_states() const { return final_; }

  // Every transition probability lies in {0, 1/2, 1}.
  bool is_simple() const;

  StateId state_id(std::string_view name) const;   // throws UnknownState
  LetterId letter_id(std::string_view name) const;  // throws UnknownLetter

  friend bool operator==(const ProbAutomaton& a, const ProbAutomaton& b);

 private:
  NameTable states_;
  NameTable alphabet_;
  StateId initial_;
  DeltaSpec delta_;
  std::vector<StateId> final_;
  std::vector<bool> is_final_;
};

// Numberless automaton (Q, A, q0, T, F): only the support of each
// transition is known. Successor lists are sorted and non-empty.
class NumberlessAutomaton {
 public:
  NumberlessAutomaton(NameTable states, NameTable alphabet, StateId initial,
                      std::vector<std::vector<StateId>> support,
                      std::vector<StateId> final_states);

  const NameTable& states() const { return states_; }
  const NameTable& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_letters() const { return alphabet_.size(); }
  StateId initial() const { return initial_; }

  const std::vector<StateId>& successors(StateId state, LetterId letter) const {
    return support_[state * num_letters() + letter];
  }
  bool has_edge(StateId from, LetterId letter, StateId to) const;
  const std::vector<std::vector<StateId>>& support() const { return support_; }

  bool is_final(StateId s) const { return is_final_[s]; }
  const std::vector<StateId>& final_states() const { return final_; }

  StateId state_id(std::string_view name) const;
  LetterId letter_id(std::string_view name) const;

  friend bool operator==(const NumberlessAutomaton& a,
                         const NumberlessAutomaton& b);

 private:
  NameTable states_;
  NameTable alphabet_;
  StateId initial_;
  std::vector<std::vector<StateId>> support_;
  std::vector<StateId> final_;
  std::vector<bool> is_final_;
};

// Name-based construction helper. Missing (state, letter) pairs are an
// error at build() unless complete_with_sink() was requested.
class AutomatonBuilder {
 public:
  AutomatonBuilder(std::vector<std::string> states,
                   std::vector<std::string> alphabet);

  AutomatonBuilder& initial(const std::string& state);
  AutomatonBuilder& final_state(const std::string& state);
  AutomatonBuilder& transition(const std::string& from,
                               const std::string& letter,
                               const std::map<std::string, Rational>& to);
  AutomatonBuilder& transition(const std::string& from,
                               const std::string& letter,
                               const std::string& to);
  // Routes every undefined pair to a fresh rejecting sink.
  AutomatonBuilder& complete_with_sink(std::string sink_name = "sink");
  // Routes every undefined pair to a self-loop.
  AutomatonBuilder& complete_with_loops();

  ProbAutomaton build() const;

 private:
  NameTable states_;
  NameTable alphabet_;
  std::optional<StateId> initial_;
  std::vector<StateId> final_;
  std::vector<std::optional<Distribution>> delta_;
  enum class Completion { None, Sink, Loops } completion_ = Completion::None;
  std::string sink_name_;
};

}  // namespace numberless
