#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace heatlab {

/**
 * A scalar function of x parsed from text, e.g. "x*(1-x)" or
 * "1 + 0.5*sin(pi*x)". Supports + - * / ^, parentheses, unary minus, the
 * constants pi and e, and the functions sin cos tan exp log sqrt abs sinh
 * cosh tanh.
 */
class Expression {
 public:
  /// Throws InvalidInput with the offending position on a syntax error.
  static Expression parse(std::string_view text);

  double operator()(double x) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  Expression(std::shared_ptr<const Node> root, std::string text)
      : root_(std::move(root)), text_(std::move(text)) {}

  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace heatlab
