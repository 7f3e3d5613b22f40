#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "numberless/rational.hpp"

namespace numberless {

// Arithmetic over rationals and named parameters, e.g. "1-x" or
// "(1-lambda)*theta". Grammar: sums and differences of products and
// quotients of literals, parameters, parenthesized expressions and unary
// minus.
class Expression {
 public:
  static Expression parse(std::string_view text);  // throws ParseError
  static Expression constant(const Rational& value);

  // Throws ValidationError for an unbound parameter or division by zero.
  Rational evaluate(const std::map<std::string, Rational>& bindings = {}) const;
  std::set<std::string> variables() const;
  bool is_constant() const { return variables().empty(); }

  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace numberless
