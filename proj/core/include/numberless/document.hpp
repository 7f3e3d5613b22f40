#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "numberless/automaton.hpp"
#include "numberless/buchi.hpp"
#include "numberless/simulation.hpp"

namespace numberless {

enum class DocumentKind { PA, NPA, PBA };

const char* to_string(DocumentKind kind);

// JSON automaton document. PA and PBA transitions map successors to
// rational strings "num/den"; NPA transitions list successors, or map them to
// weight expressions over the declared parameters.
struct AutomatonDocument {
  struct Transition {
    std::string from;
    std::string letter;
    std::vector<std::string> to;
    std::vector<std::string> weights;  // parallel to `to`; empty for pure support
  };

  DocumentKind kind = DocumentKind::PA;
  std::string name;
  std::vector<std::string> parameters;
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::string initial;
  std::vector<std::string> final_states;
  std::vector<Transition> transitions;

  bool weighted() const;
};

// Throws ParseError (with byte offset) for malformed JSON or structure.
AutomatonDocument parse_document(std::string_view text);

// Canonical rendering: fixed key order, one transition per line.
std::string serialize(const AutomatonDocument& doc);

AutomatonDocument to_document(const ProbAutomaton& pa, const std::string& name = "");
AutomatonDocument to_document(const NumberlessAutomaton& npa, const std::string& name = "");
AutomatonDocument to_document(const BuchiAutomaton& ba, const std::string& name = "");
// Weighted NPA document with parameters lambda and theta.
AutomatonDocument to_document(const SimulationNPA& c, const std::string& name = "");

using AnyAutomaton = std::variant<ProbAutomaton, NumberlessAutomaton, BuchiAutomaton>;

// Validated object for the document kind. Structural problems (completeness,
// distribution sums, support totality, unknown names) raise ValidationError.
AnyAutomaton to_automaton(const AutomatonDocument& doc);
AnyAutomaton parse_automaton(std::string_view text);

using ParameterBindings = std::map<std::string, Rational>;

// Evaluates the weights of a weighted NPA document (or the probabilities of
// a PA/PBA document) into a transition table aligned with to_automaton().
// Throws ValidationError for unbound or undeclared parameters.
DeltaSpec bind_weights(const AutomatonDocument& doc, const ParameterBindings& bindings);

// Probabilistic automaton described by the document: PA and PBA directly,
// weighted NPA documents through bind_weights() and instantiate().
ProbAutomaton to_prob_automaton(const AutomatonDocument& doc, const ParameterBindings& bindings);

std::string export_dot(const ProbAutomaton& pa);
std::string export_dot(const NumberlessAutomaton& npa);
std::string export_dot(const BuchiAutomaton& ba);
std::string export_dot(const AnyAutomaton& automaton);

}  // namespace numberless
