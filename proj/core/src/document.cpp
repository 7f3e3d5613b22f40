#include "numberless/document.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "numberless/errors.hpp"
#include "numberless/expression.hpp"
#include "numberless/semantics.hpp"

namespace numberless {

using Json = nlohmann::ordered_json;

const char* to_string(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::PA: return "pa";
    case DocumentKind::NPA: return "npa";
    case DocumentKind::PBA: return "pba";
  }
  return "?";
}

bool AutomatonDocument::weighted() const {
  return std::any_of(transitions.begin(), transitions.end(),
                     [](const Transition& t) { return !t.weights.empty(); });
}

namespace {

const Json& field(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const Json& v, const char* key) {
  if (!v.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string())
      throw ParseError(std::string("field '") + key + "' must contain strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string quote(const std::string& s) { return Json(s).dump(); }

std::string quoted_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += quote(items[i]);
  }
  return out + "]";
}

}  // namespace

AutomatonDocument parse_document(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!root.is_object()) throw ParseError("document must be a JSON object");

  AutomatonDocument doc;
  const std::string kind = string_field(root, "kind");
  if (kind == "pa")
    doc.kind = DocumentKind::PA;
  else if (kind == "npa")
    doc.kind = DocumentKind::NPA;
  else if (kind == "pba")
    doc.kind = DocumentKind::PBA;
  else
    throw ParseError("unknown kind '" + kind + "'");

  if (auto it = root.find("metadata"); it != root.end()) {
    if (!it->is_object()) throw ParseError("field 'metadata' must be an object");
    if (auto n = it->find("name"); n != it->end()) {
      if (!n->is_string()) throw ParseError("metadata name must be a string");
      doc.name = n->get<std::string>();
    }
  }
  if (auto it = root.find("parameters"); it != root.end())
    doc.parameters = string_list(*it, "parameters");
  doc.states = string_list(field(root, "states"), "states");
  doc.alphabet = string_list(field(root, "alphabet"), "alphabet");
  doc.initial = string_field(root, "initial");
  doc.final_states = string_list(field(root, "final"), "final");

  const Json& transitions = field(root, "transitions");
  if (!transitions.is_array()) throw ParseError("field 'transitions' must be an array");
  for (const auto& t : transitions) {
    if (!t.is_object()) throw ParseError("each transition must be an object");
    AutomatonDocument::Transition tr;
    tr.from = string_field(t, "from");
    tr.letter = string_field(t, "letter");
    const Json& to = field(t, "to");
    if (to.is_array()) {
      if (doc.kind != DocumentKind::NPA)
        throw ParseError("successor lists without probabilities are only allowed in npa documents");
      tr.to = string_list(to, "to");
    } else if (to.is_object()) {
      for (const auto& [state, weight] : to.items()) {
        if (!weight.is_string()) throw ParseError("probabilities must be strings such as \"1/2\"");
        tr.to.push_back(state);
        tr.weights.push_back(weight.get<std::string>());
      }
    } else {
      throw ParseError("field 'to' must be an object or an array");
    }
    doc.transitions.push_back(std::move(tr));
  }
  return doc;
}

std::string serialize(const AutomatonDocument& doc) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"kind\": " << quote(to_string(doc.kind)) << ",\n";
  out << "  \"metadata\": {\"name\": " << quote(doc.name) << "},\n";
  if (!doc.parameters.empty()) out << "  \"parameters\": " << quoted_list(doc.parameters) << ",\n";
  out << "  \"states\": " << quoted_list(doc.states) << ",\n";
  out << "  \"alphabet\": " << quoted_list(doc.alphabet) << ",\n";
  out << "  \"initial\": " << quote(doc.initial) << ",\n";
  out << "  \"final\": " << quoted_list(doc.final_states) << ",\n";
  out << "  \"transitions\": [";
  for (std::size_t i = 0; i < doc.transitions.size(); ++i) {
    const auto& t = doc.transitions[i];
    out << (i ? ",\n" : "\n") << "    {\"from\": " << quote(t.from)
        << ", \"letter\": " << quote(t.letter) << ", \"to\": ";
    if (t.weights.empty()) {
      out << quoted_list(t.to);
    } else {
      out << "{";
      for (std::size_t j = 0; j < t.to.size(); ++j)
        out << (j ? ", " : "") << quote(t.to[j]) << ": " << quote(t.weights[j]);
      out << "}";
    }
    out << "}";
  }
  out << (doc.transitions.empty() ? "]\n" : "\n  ]\n");
  out << "}\n";
  return out.str();
}

namespace {

AutomatonDocument skeleton(DocumentKind kind, const NameTable& states, const NameTable& alphabet,
                           StateId initial, const std::vector<StateId>& finals,
                           const std::string& name) {
  AutomatonDocument doc;
  doc.kind = kind;
  doc.name = name;
  doc.states = states.names();
  doc.alphabet = alphabet.names();
  doc.initial = states.name(initial);
  for (StateId f : finals) doc.final_states.push_back(states.name(f));
  return doc;
}

AutomatonDocument pa_document(DocumentKind kind, const ProbAutomaton& pa, const std::string& name) {
  AutomatonDocument doc =
      skeleton(kind, pa.states(), pa.alphabet(), pa.initial(), pa.final_states(), name);
  for (StateId s = 0; s < pa.num_states(); ++s)
    for (LetterId a = 0; a < pa.num_letters(); ++a) {
      AutomatonDocument::Transition t{pa.states().name(s), pa.alphabet().name(a), {}, {}};
      for (const auto& [q, p] : pa.delta(s, a).entries()) {
        t.to.push_back(pa.states().name(q));
        t.weights.push_back(to_fraction_string(p));
      }
      doc.transitions.push_back(std::move(t));
    }
  return doc;
}

struct Resolved {
  NameTable states;
  NameTable alphabet;
  StateId initial;
  std::vector<StateId> finals;
  // Row-major (state, letter) -> transition index in the document.
  std::vector<long> row_of;
};

Resolved resolve(const AutomatonDocument& doc) {
  try {
    Resolved r{NameTable(doc.states), NameTable(doc.alphabet), 0, {}, {}};
    auto state = [&](const std::string& n) {
      auto id = r.states.find(n);
      if (!id) throw UnknownState("'" + n + "'");
      return *id;
    };
    r.initial = state(doc.initial);
    for (const auto& f : doc.final_states) r.finals.push_back(state(f));
    r.row_of.assign(r.states.size() * r.alphabet.size(), -1);
    for (std::size_t i = 0; i < doc.transitions.size(); ++i) {
      const auto& t = doc.transitions[i];
      auto letter = r.alphabet.find(t.letter);
      if (!letter) throw UnknownLetter("'" + t.letter + "'");
      const std::size_t row = state(t.from) * r.alphabet.size() + *letter;
      if (r.row_of[row] >= 0)
        throw ValidationError("duplicate transition for (" + t.from + ", " + t.letter + ")");
      for (const auto& target : t.to) state(target);
      r.row_of[row] = static_cast<long>(i);
    }
    for (std::size_t row = 0; row < r.row_of.size(); ++row)
      if (r.row_of[row] < 0)
        throw IncompleteAutomaton("no transition for (" + r.states.name(row / r.alphabet.size()) +
                                  ", " + r.alphabet.name(row % r.alphabet.size()) + ")");
    return r;
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
}

void check_parameters(const AutomatonDocument& doc) {
  const std::set<std::string> declared(doc.parameters.begin(), doc.parameters.end());
  for (const auto& t : doc.transitions)
    for (const auto& w : t.weights)
      for (const auto& v : Expression::parse(w).variables())
        if (!declared.contains(v))
          throw ValidationError("undeclared parameter '" + v + "' in weight '" + w + "'");
}

}  // namespace

AutomatonDocument to_document(const ProbAutomaton& pa, const std::string& name) {
  return pa_document(DocumentKind::PA, pa, name);
}

AutomatonDocument to_document(const BuchiAutomaton& ba, const std::string& name) {
  return pa_document(DocumentKind::PBA, ba.automaton, name);
}

AutomatonDocument to_document(const NumberlessAutomaton& npa, const std::string& name) {
  AutomatonDocument doc = skeleton(DocumentKind::NPA, npa.states(), npa.alphabet(),
                                   npa.initial(), npa.final_states(), name);
  for (StateId s = 0; s < npa.num_states(); ++s)
    for (LetterId a = 0; a < npa.num_letters(); ++a) {
      AutomatonDocument::Transition t{npa.states().name(s), npa.alphabet().name(a), {}, {}};
      for (StateId q : npa.successors(s, a)) t.to.push_back(npa.states().name(q));
      doc.transitions.push_back(std::move(t));
    }
  return doc;
}

AutomatonDocument to_document(const SimulationNPA& c, const std::string& name) {
  AutomatonDocument doc = to_document(c.npa(), name);
  doc.parameters = {"lambda", "theta"};
  const auto& npa = c.npa();
  for (std::size_t row = 0; row < doc.transitions.size(); ++row) {
    auto& t = doc.transitions[row];
    if (t.to.size() == 1) {
      t.weights = {"1"};
      continue;
    }
    for (StateId q : npa.support()[row]) {
      if (q == c.s0())
        t.weights.push_back("lambda*theta");
      else if (q == c.s1())
        t.weights.push_back("(1-lambda)*theta");
      else
        t.weights.push_back("1-theta");
    }
  }
  return doc;
}

DeltaSpec bind_weights(const AutomatonDocument& doc, const ParameterBindings& bindings) {
  const Resolved r = resolve(doc);
  try {
    check_parameters(doc);
    for (const auto& p : doc.parameters)
      if (!bindings.contains(p)) throw ValidationError("parameter '" + p + "' is not bound");
    DeltaSpec delta;
    delta.reserve(r.row_of.size());
    for (long index : r.row_of) {
      const auto& t = doc.transitions[static_cast<std::size_t>(index)];
      if (t.weights.empty())
        throw ValidationError("transition (" + t.from + ", " + t.letter +
                              ") has no weights to instantiate");
      std::vector<Distribution::Entry> entries;
      for (std::size_t j = 0; j < t.to.size(); ++j)
        entries.emplace_back(*r.states.find(t.to[j]), Expression::parse(t.weights[j]).evaluate(bindings));
      delta.push_back(Distribution::make(std::move(entries)));
    }
    return delta;
  } catch (const ValidationError&) {
    throw;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
}

AnyAutomaton to_automaton(const AutomatonDocument& doc) {
  const Resolved r = resolve(doc);
  try {
    if (doc.kind == DocumentKind::NPA) {
      check_parameters(doc);
      std::vector<std::vector<StateId>> support;
      support.reserve(r.row_of.size());
      for (long index : r.row_of) {
        const auto& t = doc.transitions[static_cast<std::size_t>(index)];
        std::vector<StateId> succ;
        for (const auto& q : t.to) succ.push_back(*r.states.find(q));
        support.push_back(std::move(succ));
      }
      return NumberlessAutomaton(r.states, r.alphabet, r.initial, std::move(support), r.finals);
    }
    for (const auto& t : doc.transitions)
      for (const auto& w : t.weights) parse_rational(w);
    ProbAutomaton pa(r.states, r.alphabet, r.initial, bind_weights(doc, {}), r.finals);
    if (doc.kind == DocumentKind::PBA) return BuchiAutomaton{std::move(pa), std::nullopt, std::nullopt};
    return pa;
  } catch (const ValidationError&) {
    throw;
  } catch (const ParseError& e) {
    throw ValidationError(e.what());
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
}

AnyAutomaton parse_automaton(std::string_view text) { return to_automaton(parse_document(text)); }

ProbAutomaton to_prob_automaton(const AutomatonDocument& doc, const ParameterBindings& bindings) {
  if (doc.kind != DocumentKind::NPA) {
    AnyAutomaton any = to_automaton(doc);
    if (auto* ba = std::get_if<BuchiAutomaton>(&any)) return ba->automaton;
    return std::get<ProbAutomaton>(any);
  }
  const auto npa = std::get<NumberlessAutomaton>(to_automaton(doc));
  try {
    return instantiate(npa, bind_weights(doc, bindings));
  } catch (const InconsistentSupport& e) {
    throw ValidationError(e.what());
  }
}

namespace {

std::string dot_header(const NameTable& states, StateId initial,
                       const std::function<bool(StateId)>& is_final) {
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n";
  out << "  // initial: " << states.name(initial) << "\n";
  for (StateId s = 0; s < states.size(); ++s) {
    out << "  " << quote(states.name(s)) << " [shape=" << (is_final(s) ? "doublecircle" : "circle");
    if (s == initial) out << ", style=bold";
    out << "];\n";
  }
  return out.str();
}

}  // namespace

std::string export_dot(const ProbAutomaton& pa) {
  std::ostringstream out;
  out << dot_header(pa.states(), pa.initial(), [&](StateId s) { return pa.is_final(s); });
  for (StateId s = 0; s < pa.num_states(); ++s)
    for (LetterId a = 0; a < pa.num_letters(); ++a)
      for (const auto& [t, p] : pa.delta(s, a).entries())
        out << "  " << quote(pa.states().name(s)) << " -> " << quote(pa.states().name(t))
            << " [label=" << quote(pa.alphabet().name(a) + ", " + to_string(p)) << "];\n";
  out << "}\n";
  return out.str();
}

std::string export_dot(const NumberlessAutomaton& npa) {
  std::ostringstream out;
  out << dot_header(npa.states(), npa.initial(), [&](StateId s) { return npa.is_final(s); });
  for (StateId s = 0; s < npa.num_states(); ++s)
    for (LetterId a = 0; a < npa.num_letters(); ++a)
      for (StateId t : npa.successors(s, a))
        out << "  " << quote(npa.states().name(s)) << " -> " << quote(npa.states().name(t))
            << " [label=" << quote(npa.alphabet().name(a)) << "];\n";
  out << "}\n";
  return out.str();
}

std::string export_dot(const BuchiAutomaton& ba) { return export_dot(ba.automaton); }

std::string export_dot(const AnyAutomaton& automaton) {
  return std::visit([](const auto& a) { return export_dot(a); }, automaton);
}

}  // namespace numberless
