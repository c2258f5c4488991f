#pragma once

#include <memory>
#include <string>

namespace cmrp {

/// Point of the mixing domain D (one or two coordinates).
struct Theta {
  double x1 = 0.0;
  double x2 = 0.0;
  int dim = 1;
};

std::string to_string(const Theta& t);

/// Scalar function of theta given as a small arithmetic expression.
///
/// Grammar: numbers, `theta` (alias `theta1`), `theta2`, `+ - * / ^`,
/// parentheses, and the functions `exp`, `ln`, `sqrt`. Examples:
/// "theta", "2*theta", "1/theta", "exp(theta)", "theta1/(theta1+theta2)".
class Expr {
 public:
  Expr() = default;

  static Expr parse(const std::string& text);
  static Expr constant(double value);

  double eval(const Theta& theta) const;
  bool valid() const { return root_ != nullptr; }
  const std::string& text() const { return text_; }

 private:
  struct Node;
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace cmrp
