#include "ttfem/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "ttfem/error.hpp"

namespace ttfem {

namespace {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Tan, Exp, Log, Sqrt };

}  // namespace

struct Expression::Node {
  Op op;
  double value = 0.0;  // Const
  char var = 'x';      // Var
  std::shared_ptr<const Node> a, b;

  Node(Op o, std::shared_ptr<const Node> l = nullptr, std::shared_ptr<const Node> r = nullptr)
      : op(o), a(std::move(l)), b(std::move(r)) {}
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodePtr make_const(double v) {
  auto n = std::make_shared<Node>(Op::Const);
  const_cast<Node*>(n.get())->value = v;
  return n;
}

NodePtr make_var(char c) {
  auto n = std::make_shared<Node>(Op::Var);
  const_cast<Node*>(n.get())->var = c;
  return n;
}

bool is_const(const NodePtr& n, double v) { return n->op == Op::Const && n->value == v; }

NodePtr make(Op op, NodePtr a, NodePtr b = nullptr) {
  // Light simplification keeps symbolic derivatives readable and cheap.
  switch (op) {
    case Op::Add:
      if (is_const(a, 0)) return b;
      if (is_const(b, 0)) return a;
      break;
    case Op::Sub:
      if (is_const(b, 0)) return a;
      break;
    case Op::Mul:
      if (is_const(a, 0) || is_const(b, 0)) return make_const(0);
      if (is_const(a, 1)) return b;
      if (is_const(b, 1)) return a;
      break;
    case Op::Div:
      if (is_const(a, 0)) return make_const(0);
      if (is_const(b, 1)) return a;
      break;
    case Op::Neg:
      if (a->op == Op::Const) return make_const(-a->value);
      break;
    default:
      break;
  }
  return std::make_shared<Node>(op, std::move(a), std::move(b));
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw ConfigError("expression parse error at position " + std::to_string(pos_) + ": " + msg +
                      " in '" + s_ + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr e = term();
    for (;;) {
      if (accept('+'))
        e = make(Op::Add, e, term());
      else if (accept('-'))
        e = make(Op::Sub, e, term());
      else
        return e;
    }
  }

  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      if (accept('*'))
        e = make(Op::Mul, e, factor());
      else if (accept('/'))
        e = make(Op::Div, e, factor());
      else
        return e;
    }
  }

  NodePtr factor() {
    NodePtr base = unary();
    if (accept('^')) return make(Op::Pow, base, factor());  // right associative
    return base;
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Neg, unary());
    if (accept('+')) return unary();
    return primary();
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (accept('(')) {
      NodePtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    fail("unexpected character");
  }

  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("bad number");
    pos_ += static_cast<size_t>(end - begin);
    return make_const(v);
  }

  NodePtr identifier() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "x") return make_var('x');
    if (name == "y") return make_var('y');
    if (name == "pi") return make_const(M_PI);
    Op op;
    if (name == "sin")
      op = Op::Sin;
    else if (name == "cos")
      op = Op::Cos;
    else if (name == "tan")
      op = Op::Tan;
    else if (name == "exp")
      op = Op::Exp;
    else if (name == "log")
      op = Op::Log;
    else if (name == "sqrt")
      op = Op::Sqrt;
    else
      fail("unknown identifier '" + name + "'");
    if (!accept('(')) fail("expected '(' after function name");
    NodePtr arg = expr();
    if (!accept(')')) fail("expected ')'");
    return make(op, arg);
  }
};

double eval_node(const Node* n, double x, double y) {
  switch (n->op) {
    case Op::Const: return n->value;
    case Op::Var: return n->var == 'x' ? x : y;
    case Op::Add: return eval_node(n->a.get(), x, y) + eval_node(n->b.get(), x, y);
    case Op::Sub: return eval_node(n->a.get(), x, y) - eval_node(n->b.get(), x, y);
    case Op::Mul: return eval_node(n->a.get(), x, y) * eval_node(n->b.get(), x, y);
    case Op::Div: return eval_node(n->a.get(), x, y) / eval_node(n->b.get(), x, y);
    case Op::Pow: return std::pow(eval_node(n->a.get(), x, y), eval_node(n->b.get(), x, y));
    case Op::Neg: return -eval_node(n->a.get(), x, y);
    case Op::Sin: return std::sin(eval_node(n->a.get(), x, y));
    case Op::Cos: return std::cos(eval_node(n->a.get(), x, y));
    case Op::Tan: return std::tan(eval_node(n->a.get(), x, y));
    case Op::Exp: return std::exp(eval_node(n->a.get(), x, y));
    case Op::Log: return std::log(eval_node(n->a.get(), x, y));
    case Op::Sqrt: return std::sqrt(eval_node(n->a.get(), x, y));
  }
  return 0.0;
}

NodePtr diff(const NodePtr& n, char v) {
  switch (n->op) {
    case Op::Const: return make_const(0);
    case Op::Var: return make_const(n->var == v ? 1 : 0);
    case Op::Add: return make(Op::Add, diff(n->a, v), diff(n->b, v));
    case Op::Sub: return make(Op::Sub, diff(n->a, v), diff(n->b, v));
    case Op::Mul:
      return make(Op::Add, make(Op::Mul, diff(n->a, v), n->b), make(Op::Mul, n->a, diff(n->b, v)));
    case Op::Div:
      return make(Op::Div,
                  make(Op::Sub, make(Op::Mul, diff(n->a, v), n->b),
                       make(Op::Mul, n->a, diff(n->b, v))),
                  make(Op::Mul, n->b, n->b));
    case Op::Pow: {
      // d(a^b) = a^b * (b' log a + b a'/a); covers constant exponents cleanly.
      NodePtr apow = make(Op::Pow, n->a, n->b);
      NodePtr t1 = make(Op::Mul, diff(n->b, v), make(Op::Log, n->a));
      NodePtr t2 = make(Op::Div, make(Op::Mul, n->b, diff(n->a, v)), n->a);
      return make(Op::Mul, apow, make(Op::Add, t1, t2));
    }
    case Op::Neg: return make(Op::Neg, diff(n->a, v));
    case Op::Sin: return make(Op::Mul, make(Op::Cos, n->a), diff(n->a, v));
    case Op::Cos: return make(Op::Neg, make(Op::Mul, make(Op::Sin, n->a), diff(n->a, v)));
    case Op::Tan: {
      NodePtr sec2 = make(Op::Div, make_const(1),
                          make(Op::Mul, make(Op::Cos, n->a), make(Op::Cos, n->a)));
      return make(Op::Mul, sec2, diff(n->a, v));
    }
    case Op::Exp: return make(Op::Mul, make(Op::Exp, n->a), diff(n->a, v));
    case Op::Log: return make(Op::Div, diff(n->a, v), n->a);
    case Op::Sqrt:
      return make(Op::Div, diff(n->a, v),
                  make(Op::Mul, make_const(2), make(Op::Sqrt, n->a)));
  }
  return make_const(0);
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.root_ = Parser(text).run();
  e.text_ = text;
  return e;
}

Expression Expression::constant(double value) {
  Expression e;
  e.root_ = make_const(value);
  e.text_ = std::to_string(value);
  return e;
}

double Expression::operator()(double x, double y) const {
  if (!root_) return 0.0;
  return eval_node(root_.get(), x, y);
}

Expression Expression::derivative(char var) const {
  Expression e;
  if (root_) {
    e.root_ = diff(root_, var);
    e.text_ = "d/d" + std::string(1, var) + "(" + text_ + ")";
  }
  return e;
}

}  // namespace ttfem
