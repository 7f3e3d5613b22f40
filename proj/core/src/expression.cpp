#include "numberless/expression.hpp"

#include <cctype>
#include <variant>
#include <vector>

#include "numberless/errors.hpp"

namespace numberless {

struct Expression::Node {
  enum class Op { Literal, Variable, Neg, Add, Sub, Mul, Div } op;
  Rational value;
  std::string name;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr n = sum();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in expression '" +
                     std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr sum() {
    NodePtr n = product();
    while (true) {
      if (eat('+'))
        n = make(Op::Add, n, product());
      else if (eat('-'))
        n = make(Op::Sub, n, product());
      else
        return n;
    }
  }

  NodePtr product() {
    NodePtr n = unary();
    while (true) {
      if (eat('*'))
        n = make(Op::Mul, n, unary());
      else if (eat('/'))
        n = make(Op::Div, n, unary());
      else
        return n;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Op::Neg, unary());
    if (eat('+')) return unary();
    return atom();
  }

  NodePtr atom() {
    skip();
    if (eat('(')) {
      NodePtr n = sum();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      auto n = std::make_shared<Expression::Node>();
      n->op = Op::Literal;
      n->value = Rational(mpz_class(std::string(text_.substr(start, pos_ - start)), 10));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      auto n = std::make_shared<Expression::Node>();
      n->op = Op::Variable;
      n->name = std::string(text_.substr(start, pos_ - start));
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Rational eval(const Expression::Node& n, const std::map<std::string, Rational>& bindings) {
  switch (n.op) {
    case Op::Literal: return n.value;
    case Op::Variable: {
      auto it = bindings.find(n.name);
      if (it == bindings.end()) throw ValidationError("unbound parameter '" + n.name + "'");
      return it->second;
    }
    case Op::Neg: return -eval(*n.lhs, bindings);
    case Op::Add: return eval(*n.lhs, bindings) + eval(*n.rhs, bindings);
    case Op::Sub: return eval(*n.lhs, bindings) - eval(*n.rhs, bindings);
    case Op::Mul: return eval(*n.lhs, bindings) * eval(*n.rhs, bindings);
    case Op::Div: {
      const Rational d = eval(*n.rhs, bindings);
      if (sgn(d) == 0) throw ValidationError("division by zero");
      return eval(*n.lhs, bindings) / d;
    }
  }
  return 0;
}

void collect(const Expression::Node& n, std::set<std::string>& out) {
  if (n.op == Op::Variable) out.insert(n.name);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.text_ = std::string(text);
  e.root_ = Parser(text).parse();
  return e;
}

Expression Expression::constant(const Rational& value) {
  return parse(to_fraction_string(value));
}

Rational Expression::evaluate(const std::map<std::string, Rational>& bindings) const {
  return eval(*root_, bindings);
}

std::set<std::string> Expression::variables() const {
  std::set<std::string> out;
  collect(*root_, out);
  return out;
}

}  // namespace numberless
