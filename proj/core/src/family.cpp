#include "numberless/family.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "numberless/errors.hpp"
#include "numberless/semantics.hpp"

namespace numberless {

namespace {

FamilyTemplate::Exponent parse_exponent(std::string_view text) {
  if (text.empty()) throw ParseError("missing exponent after '^'");
  if (std::all_of(text.begin(), text.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return std::stoul(std::string(text));
  return std::string(text);
}

unsigned long resolve(const FamilyTemplate::Exponent& e, const Bindings& bindings) {
  if (const auto* k = std::get_if<unsigned long>(&e)) return *k;
  const auto& name = std::get<std::string>(e);
  auto it = bindings.find(name);
  if (it == bindings.end()) throw ValidationError("unbound template variable '" + name + "'");
  return it->second;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) tokens.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

// Row s holds the distribution reached from s; composition is the product of
// stochastic matrices.
using LinearMap = std::vector<Distribution>;

Distribution apply_map(const LinearMap& map, const Distribution& d) {
  DistributionAccumulator acc;
  for (const auto& [s, p] : d.entries()) acc.add(map[s], p);
  return acc.finish();
}

LinearMap compose(const LinearMap& first, const LinearMap& second) {
  LinearMap out;
  out.reserve(first.size());
  for (const auto& row : first) out.push_back(apply_map(second, row));
  return out;
}

class Evaluator {
 public:
  Evaluator(const ProbAutomaton& pa, const Bindings& bindings) : pa_(pa), bindings_(bindings) {}

  Distribution apply(const std::vector<FamilyTemplate::Node>& nodes, Distribution d) const {
    for (const auto& node : nodes) d = apply(node, std::move(d));
    return d;
  }

 private:
  Distribution apply_once(const FamilyTemplate::Node& node, Distribution d) const {
    if (node.is_letter) return step(pa_, d, node.letter);
    return apply(node.body, std::move(d));
  }

  Distribution apply(const FamilyTemplate::Node& node, Distribution d) const {
    unsigned long e = resolve(node.exponent, bindings_);
    if (e <= 2 * pa_.num_states()) {
      for (unsigned long i = 0; i < e; ++i) d = apply_once(node, std::move(d));
      return d;
    }
    LinearMap power;
    power.reserve(pa_.num_states());
    for (StateId s = 0; s < pa_.num_states(); ++s)
      power.push_back(apply_once(node, Distribution::point(s)));
    while (e > 0) {
      if (e & 1) d = apply_map(power, d);
      e >>= 1;
      if (e > 0) power = compose(power, power);
    }
    return d;
  }

  const ProbAutomaton& pa_;
  const Bindings& bindings_;
};

void collect_variables(const std::vector<FamilyTemplate::Node>& nodes,
                       std::set<std::string>& out) {
  for (const auto& n : nodes) {
    if (const auto* v = std::get_if<std::string>(&n.exponent)) out.insert(*v);
    collect_variables(n.body, out);
  }
}

void expand_into(const std::vector<FamilyTemplate::Node>& nodes, const Bindings& bindings,
                 Word& out) {
  for (const auto& n : nodes) {
    const unsigned long e = resolve(n.exponent, bindings);
    for (unsigned long i = 0; i < e; ++i) {
      if (n.is_letter)
        out.push_back(n.letter);
      else
        expand_into(n.body, bindings, out);
    }
  }
}

}  // namespace

FamilyTemplate::Node FamilyTemplate::letter(LetterId a, Exponent e) {
  Node n;
  n.is_letter = true;
  n.letter = a;
  n.exponent = std::move(e);
  return n;
}

FamilyTemplate::Node FamilyTemplate::group(std::vector<Node> body, Exponent e) {
  Node n;
  n.is_letter = false;
  n.body = std::move(body);
  n.exponent = std::move(e);
  return n;
}

FamilyTemplate FamilyTemplate::parse(const NameTable& alphabet, std::string_view text) {
  std::vector<std::vector<Node>> stack(1);
  for (const auto& token : tokenize(text)) {
    if (token == "(") {
      stack.emplace_back();
      continue;
    }
    if (token[0] == ')') {
      if (stack.size() < 2) throw ParseError("unbalanced ')' in template");
      Exponent e = 1ul;
      if (token.size() > 1) {
        if (token[1] != '^') throw ParseError("expected ')^' in template, got '" + token + "'");
        e = parse_exponent(std::string_view(token).substr(2));
      }
      auto body = std::move(stack.back());
      stack.pop_back();
      stack.back().push_back(group(std::move(body), std::move(e)));
      continue;
    }
    std::string name = token;
    Exponent e = 1ul;
    if (!alphabet.contains(name)) {
      const auto caret = token.rfind('^');
      if (caret != std::string::npos) {
        name = token.substr(0, caret);
        e = parse_exponent(std::string_view(token).substr(caret + 1));
      }
    }
    auto id = alphabet.find(name);
    if (!id) throw UnknownLetter("'" + name + "'");
    stack.back().push_back(letter(*id, std::move(e)));
  }
  if (stack.size() != 1) throw ParseError("unbalanced '(' in template");
  return FamilyTemplate(std::move(stack.front()));
}

std::set<std::string> FamilyTemplate::variables() const {
  std::set<std::string> out;
  collect_variables(segments_, out);
  return out;
}

Word FamilyTemplate::expand(const Bindings& bindings) const {
  Word out;
  expand_into(segments_, bindings, out);
  return out;
}

Rational family_eval(const ProbAutomaton& pa, const FamilyTemplate& tmpl,
                     const Bindings& bindings) {
  for (const auto& v : tmpl.variables())
    if (!bindings.contains(v)) throw ValidationError("unbound template variable '" + v + "'");
  const Distribution end =
      Evaluator(pa, bindings).apply(tmpl.segments(), Distribution::point(pa.initial()));
  return end.mass([&](StateId s) { return pa.is_final(s); });
}

}  // namespace numberless
