#include "numberless/automaton.hpp"

#include <algorithm>

#include "numberless/errors.hpp"

namespace numberless {

namespace {

std::vector<bool> final_mask(std::size_t n, std::vector<StateId>& finals) {
  std::sort(finals.begin(), finals.end());
  finals.erase(std::unique(finals.begin(), finals.end()), finals.end());
  std::vector<bool> mask(n, false);
  for (StateId f : finals) {
    if (f >= n) throw UnknownState("final state id " + std::to_string(f));
    mask[f] = true;
  }
  return mask;
}

void check_skeleton(const NameTable& states, const NameTable& alphabet,
                    StateId initial) {
  if (states.empty()) throw ValidationError("automaton has no states");
  if (alphabet.empty()) throw ValidationError("automaton has an empty alphabet");
  if (initial >= states.size())
    throw UnknownState("initial state id " + std::to_string(initial));
}

}  // namespace

ProbAutomaton::ProbAutomaton(NameTable states, NameTable alphabet,
                             StateId initial, DeltaSpec delta,
                             std::vector<StateId> final_states)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      initial_(initial),
      delta_(std::move(delta)),
      final_(std::move(final_states)) {
  check_skeleton(states_, alphabet_, initial_);
  if (delta_.size() != states_.size() * alphabet_.size())
    throw IncompleteAutomaton("expected " +
                              std::to_string(states_.size() * alphabet_.size()) +
                              " transitions, got " + std::to_string(delta_.size()));
  for (std::size_t i = 0; i < delta_.size(); ++i) {
    const auto& d = delta_[i];
    if (d.size() == 0)
      throw IncompleteAutomaton("no distribution for (" +
                                states_.name(i / alphabet_.size()) + ", " +
                                alphabet_.name(i % alphabet_.size()) + ")");
    for (const auto& [s, p] : d.entries())
      if (s >= states_.size())
        throw UnknownState("successor id " + std::to_string(s));
  }
  is_final_ = final_mask(states_.size(), final_);
}

bool ProbAutomaton::is_simple() const {
  const Rational half(1, 2);
  for (const auto& d : delta_) {
    if (d.size() == 1) continue;
    if (d.size() != 2) return false;
    for (const auto& [s, p] : d.entries())
      if (p != half) return false;
  }
  return true;
}

StateId ProbAutomaton::state_id(std::string_view name) const {
  auto id = states_.find(name);
  if (!id) throw UnknownState("'" + std::string(name) + "'");
  return *id;
}

LetterId ProbAutomaton::letter_id(std::string_view name) const {
  auto id = alphabet_.find(name);
  if (!id) throw UnknownLetter("'" + std::string(name) + "'");
  return *id;
}

bool operator==(const ProbAutomaton& a, const ProbAutomaton& b) {
  return a.states_ == b.states_ && a.alphabet_ == b.alphabet_ &&
         a.initial_ == b.initial_ && a.final_ == b.final_ && a.delta_ == b.delta_;
}

NumberlessAutomaton::NumberlessAutomaton(
    NameTable states, NameTable alphabet, StateId initial,
    std::vector<std::vector<StateId>> support, std::vector<StateId> final_states)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      initial_(initial),
      support_(std::move(support)),
      final_(std::move(final_states)) {
  check_skeleton(states_, alphabet_, initial_);
  if (support_.size() != states_.size() * alphabet_.size())
    throw IncompleteAutomaton("support table has wrong size");
  for (std::size_t i = 0; i < support_.size(); ++i) {
    auto& succ = support_[i];
    if (succ.empty())
      throw IncompleteAutomaton("no support triple for (" +
                                states_.name(i / alphabet_.size()) + ", " +
                                alphabet_.name(i % alphabet_.size()) + ")");
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    if (succ.back() >= states_.size())
      throw UnknownState("successor id " + std::to_string(succ.back()));
  }
  is_final_ = final_mask(states_.size(), final_);
}

bool NumberlessAutomaton::has_edge(StateId from, LetterId letter, StateId to) const {
  const auto& succ = successors(from, letter);
  return std::binary_search(succ.begin(), succ.end(), to);
}

StateId NumberlessAutomaton::state_id(std::string_view name) const {
  auto id = states_.find(name);
  if (!id) throw UnknownState("'" + std::string(name) + "'");
  return *id;
}

LetterId NumberlessAutomaton::letter_id(std::string_view name) const {
  auto id = alphabet_.find(name);
  if (!id) throw UnknownLetter("'" + std::string(name) + "'");
  return *id;
}

bool operator==(const NumberlessAutomaton& a, const NumberlessAutomaton& b) {
  return a.states_ == b.states_ && a.alphabet_ == b.alphabet_ &&
         a.initial_ == b.initial_ && a.final_ == b.final_ &&
         a.support_ == b.support_;
}

AutomatonBuilder::AutomatonBuilder(std::vector<std::string> states,
                                   std::vector<std::string> alphabet)
    : states_(std::move(states)), alphabet_(std::move(alphabet)) {
  delta_.resize(states_.size() * alphabet_.size());
}

AutomatonBuilder& AutomatonBuilder::initial(const std::string& state) {
  auto id = states_.find(state);
  if (!id) throw UnknownState("'" + state + "'");
  initial_ = *id;
  return *this;
}

AutomatonBuilder& AutomatonBuilder::final_state(const std::string& state) {
  auto id = states_.find(state);
  if (!id) throw UnknownState("'" + state + "'");
  final_.push_back(*id);
  return *this;
}

AutomatonBuilder& AutomatonBuilder::transition(
    const std::string& from, const std::string& letter,
    const std::map<std::string, Rational>& to) {
  auto s = states_.find(from);
  if (!s) throw UnknownState("'" + from + "'");
  auto a = alphabet_.find(letter);
  if (!a) throw UnknownLetter("'" + letter + "'");
  std::vector<Distribution::Entry> entries;
  for (const auto& [name, p] : to) {
    auto t = states_.find(name);
    if (!t) throw UnknownState("'" + name + "'");
    entries.emplace_back(*t, p);
  }
  delta_[*s * alphabet_.size() + *a] = Distribution::make(std::move(entries));
  return *this;
}

AutomatonBuilder& AutomatonBuilder::transition(const std::string& from,
                                               const std::string& letter,
                                               const std::string& to) {
  return transition(from, letter, {{to, Rational(1)}});
}

AutomatonBuilder& AutomatonBuilder::complete_with_sink(std::string sink_name) {
  completion_ = Completion::Sink;
  sink_name_ = std::move(sink_name);
  return *this;
}

AutomatonBuilder& AutomatonBuilder::complete_with_loops() {
  completion_ = Completion::Loops;
  return *this;
}

ProbAutomaton AutomatonBuilder::build() const {
  if (!initial_) throw ValidationError("initial state not set");
  NameTable states = states_;
  const std::size_t n_letters = alphabet_.size();
  std::vector<std::optional<Distribution>> delta = delta_;

  bool missing = std::any_of(delta.begin(), delta.end(),
                             [](const auto& d) { return !d.has_value(); });
  if (missing) {
    switch (completion_) {
      case Completion::None: {
        for (std::size_t i = 0; i < delta.size(); ++i)
          if (!delta[i])
            throw IncompleteAutomaton("no transition for (" +
                                      states.name(i / n_letters) + ", " +
                                      alphabet_.name(i % n_letters) + ")");
        break;
      }
      case Completion::Loops:
        for (std::size_t i = 0; i < delta.size(); ++i)
          if (!delta[i]) delta[i] = Distribution::point(i / n_letters);
        break;
      case Completion::Sink: {
        const StateId sink = states.add(states.fresh(sink_name_));
        for (auto& d : delta)
          if (!d) d = Distribution::point(sink);
        for (std::size_t a = 0; a < n_letters; ++a)
          delta.emplace_back(Distribution::point(sink));
        break;
      }
    }
  }
  DeltaSpec table;
  table.reserve(delta.size());
  for (auto& d : delta) table.push_back(std::move(*d));
  return ProbAutomaton(std::move(states), alphabet_, *initial_, std::move(table),
                       final_);
}

}  // namespace numberless
