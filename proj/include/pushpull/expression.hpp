#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>

#include "pushpull/errors.hpp"

namespace pushpull {

/// Compiled arithmetic expression in the variables x1..x8.  Supports
/// + - * / ^, parentheses, numeric literals, pi, and the functions
/// sin cos tan exp log sqrt abs sinh cosh tanh asinh atan.
class Expression {
 public:
  struct Node;

  static Expression parse(const std::string& text);

  double eval(const Eigen::VectorXd& x) const;
  const std::string& text() const { return text_; }

 private:
  Expression(std::string text, std::shared_ptr<const Node> root);
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace pushpull
