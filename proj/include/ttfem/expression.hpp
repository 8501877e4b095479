#pragma once

#include <memory>
#include <string>

namespace ttfem {

// Scalar expressions of (x, y) built from +, -, *, /, ^, sin, cos, tan, exp,
// log, sqrt, numeric literals and parentheses. Parsed once, evaluated many
// times; d/dx and d/dy are formed symbolically so analytic velocity fields
// carry exact gradients.
class Expression {
 public:
  Expression() = default;  // empty; evaluates to 0

  static Expression parse(const std::string& text);
  static Expression constant(double value);

  double operator()(double x, double y) const;
  Expression derivative(char var) const;  // var is 'x' or 'y'

  bool empty() const { return !root_; }
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace ttfem
