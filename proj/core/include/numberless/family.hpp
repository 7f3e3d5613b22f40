#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "numberless/automaton.hpp"

namespace numberless {

using Bindings = std::map<std::string, unsigned long>;

// A parametric word such as (i a^n f)^m: a sequence of letters and groups,
// each carrying a constant or variable exponent.
class FamilyTemplate {
 public:
  using Exponent = std::variant<unsigned long, std::string>;

  struct Node {
    bool is_letter = true;
    LetterId letter = 0;
    std::vector<Node> body;  // groups only
    Exponent exponent = 1ul;
  };

  FamilyTemplate() = default;
  explicit FamilyTemplate(std::vector<Node> segments) : segments_(std::move(segments)) {}

  // Whitespace-separated tokens: letter names, `name^e` for a repeated
  // letter, `(` to open a group and `)^e` (or `)`) to close it, where e is a
  // count or a variable name. Example: "( i a^n f )^m".
  static FamilyTemplate parse(const NameTable& alphabet, std::string_view text);

  static Node letter(LetterId a, Exponent e = 1ul);
  static Node group(std::vector<Node> body, Exponent e = 1ul);

  const std::vector<Node>& segments() const { return segments_; }
  std::set<std::string> variables() const;

  // Throws ValidationError when a variable is unbound.
  Word expand(const Bindings& bindings) const;

 private:
  std::vector<Node> segments_;
};

// Exact acceptance probability of the expanded word. Large exponents are
// evaluated by repeated squaring of the group's transition map, so the word
// is never materialized.
Rational family_eval(const ProbAutomaton& pa, const FamilyTemplate& tmpl,
                     const Bindings& bindings);

}  // namespace numberless
