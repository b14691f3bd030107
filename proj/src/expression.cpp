#include "heatlab/expression.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "heatlab/error.hpp"

namespace heatlab {

struct Expression::Node {
  std::function<double(double)> eval;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(std::function<double(double)> f) {
  return std::make_shared<Expression::Node>(Expression::Node{std::move(f)});
}

const std::map<std::string, double (*)(double), std::less<>>& functions() {
  static const std::map<std::string, double (*)(double), std::less<>> table = {
      {"sin", [](double v) { return std::sin(v); }},   {"cos", [](double v) { return std::cos(v); }},
      {"tan", [](double v) { return std::tan(v); }},   {"exp", [](double v) { return std::exp(v); }},
      {"log", [](double v) { return std::log(v); }},   {"sqrt", [](double v) { return std::sqrt(v); }},
      {"abs", [](double v) { return std::abs(v); }},   {"sinh", [](double v) { return std::sinh(v); }},
      {"cosh", [](double v) { return std::cosh(v); }}, {"tanh", [](double v) { return std::tanh(v); }},
  };
  return table;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("expression '" + std::string(text_) + "': " + what + " at position " +
                       std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        NodePtr rhs = term();
        lhs = make([lhs, rhs](double x) { return lhs->eval(x) + rhs->eval(x); });
      } else if (accept('-')) {
        NodePtr rhs = term();
        lhs = make([lhs, rhs](double x) { return lhs->eval(x) - rhs->eval(x); });
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        NodePtr rhs = unary();
        lhs = make([lhs, rhs](double x) { return lhs->eval(x) * rhs->eval(x); });
      } else if (accept('/')) {
        NodePtr rhs = unary();
        lhs = make([lhs, rhs](double x) { return lhs->eval(x) / rhs->eval(x); });
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      NodePtr inner = unary();
      return make([inner](double x) { return -inner->eval(x); });
    }
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) {
      NodePtr exponent = unary();
      return make([base, exponent](double x) { return std::pow(base->eval(x), exponent->eval(x)); });
    }
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (accept('(')) {
      NodePtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      const double v = std::stod(std::string(text_.substr(pos_)), &used);
      pos_ += used;
      return make([v](double) { return v; });
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "x") return make([](double x) { return x; });
      if (name == "pi") return make([](double) { return std::numbers::pi; });
      if (name == "e") return make([](double) { return std::numbers::e; });
      const auto it = functions().find(name);
      if (it == functions().end()) {
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
      }
      if (!accept('(')) fail("expected '(' after function name");
      NodePtr arg = expr();
      if (!accept(')')) fail("expected ')'");
      auto fn = it->second;
      return make([fn, arg](double x) { return fn(arg->eval(x)); });
    }
    fail("unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  return {Parser(text).parse(), std::string(text)};
}

double Expression::operator()(double x) const { return root_->eval(x); }

}  // namespace heatlab
