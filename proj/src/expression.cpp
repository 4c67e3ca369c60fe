#include "pushpull/expression.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

namespace pushpull {

struct Expression::Node {
  enum class Kind { kConstant, kVariable, kUnary, kBinary, kCall };
  Kind kind;
  double value = 0.0;                       // constant
  int variable = 0;                         // 0-based index
  char op = 0;                              // unary/binary operator
  double (*fn)(double) = nullptr;           // call
  std::shared_ptr<const Node> left, right;  // operands
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodePtr make_constant(double v) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::kConstant;
  node->value = v;
  return node;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr parse() {
    auto node = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& reason) const {
    throw ConfigError("expression error at offset " + std::to_string(pos_) + " in \"" +
                      text_ + "\": " + reason);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_sum() {
    auto node = parse_product();
    while (true) {
      skip_space();
      if (consume('+') || consume('-')) {
        const char op = text_[pos_ - 1];
        auto rhs = parse_product();
        auto parent = std::make_shared<Node>();
        parent->kind = Node::Kind::kBinary;
        parent->op = op;
        parent->left = node;
        parent->right = rhs;
        node = parent;
      } else {
        return node;
      }
    }
  }

  NodePtr parse_product() {
    auto node = parse_power();
    while (true) {
      skip_space();
      if (consume('*') || consume('/')) {
        const char op = text_[pos_ - 1];
        auto rhs = parse_power();
        auto parent = std::make_shared<Node>();
        parent->kind = Node::Kind::kBinary;
        parent->op = op;
        parent->left = node;
        parent->right = rhs;
        node = parent;
      } else {
        return node;
      }
    }
  }

  NodePtr parse_power() {
    auto base = parse_unary();
    if (consume('^')) {
      auto parent = std::make_shared<Node>();
      parent->kind = Node::Kind::kBinary;
      parent->op = '^';
      parent->left = base;
      parent->right = parse_power();  // right associative
      return parent;
    }
    return base;
  }

  NodePtr parse_unary() {
    if (consume('-')) {
      auto node = std::make_shared<Node>();
      node->kind = Node::Kind::kUnary;
      node->op = '-';
      node->left = parse_unary();
      return node;
    }
    consume('+');
    return parse_primary();
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto node = parse_sum();
      if (!consume(')')) fail("missing closing parenthesis");
      return node;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    size_t end = pos_;
    const char* begin = text_.c_str() + pos_;
    char* parse_end = nullptr;
    const double value = std::strtod(begin, &parse_end);
    if (parse_end == begin) fail("malformed number");
    end = pos_ + static_cast<size_t>(parse_end - begin);
    pos_ = end;
    return make_constant(value);
  }

  NodePtr parse_identifier() {
    size_t end = pos_;
    while (end < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
      ++end;
    }
    const std::string name = text_.substr(pos_, end - pos_);
    pos_ = end;

    if (name == "pi") return make_constant(M_PI);
    if (name.size() >= 2 && name[0] == 'x') {
      bool digits = true;
      for (size_t i = 1; i < name.size(); ++i) {
        digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
      }
      if (digits) {
        const int index = std::stoi(name.substr(1));
        if (index < 1 || index > 8) fail("variable index out of range: " + name);
        auto node = std::make_shared<Node>();
        node->kind = Node::Kind::kVariable;
        node->variable = index - 1;
        return node;
      }
    }

    static const std::map<std::string, double (*)(double)> functions = {
        {"sin", [](double v) { return std::sin(v); }},
        {"cos", [](double v) { return std::cos(v); }},
        {"tan", [](double v) { return std::tan(v); }},
        {"exp", [](double v) { return std::exp(v); }},
        {"log", [](double v) { return std::log(v); }},
        {"sqrt", [](double v) { return std::sqrt(v); }},
        {"abs", [](double v) { return std::abs(v); }},
        {"sinh", [](double v) { return std::sinh(v); }},
        {"cosh", [](double v) { return std::cosh(v); }},
        {"tanh", [](double v) { return std::tanh(v); }},
        {"asinh", [](double v) { return std::asinh(v); }},
        {"atan", [](double v) { return std::atan(v); }},
    };
    auto it = functions.find(name);
    if (it == functions.end()) fail("unknown identifier: " + name);
    if (!consume('(')) fail("function " + name + " requires parentheses");
    auto arg = parse_sum();
    if (!consume(')')) fail("missing closing parenthesis after " + name);
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::kCall;
    node->fn = it->second;
    node->left = arg;
    return node;
  }

  const std::string& text_;
  size_t pos_ = 0;
};

double eval_node(const Node& node, const Eigen::VectorXd& x) {
  switch (node.kind) {
    case Node::Kind::kConstant:
      return node.value;
    case Node::Kind::kVariable:
      if (node.variable >= x.size()) {
        throw ConfigError("expression references x" + std::to_string(node.variable + 1) +
                          " beyond the chart dimension");
      }
      return x[node.variable];
    case Node::Kind::kUnary:
      return -eval_node(*node.left, x);
    case Node::Kind::kCall:
      return node.fn(eval_node(*node.left, x));
    case Node::Kind::kBinary: {
      const double a = eval_node(*node.left, x);
      const double b = eval_node(*node.right, x);
      switch (node.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        case '^': return std::pow(a, b);
      }
      break;
    }
  }
  throw NumericError("corrupt expression tree");
}

}  // namespace

Expression::Expression(std::string text, std::shared_ptr<const Node> root)
    : text_(std::move(text)), root_(std::move(root)) {}

Expression Expression::parse(const std::string& text) {
  Parser parser(text);
  return Expression(text, parser.parse());
}

double Expression::eval(const Eigen::VectorXd& x) const { return eval_node(*root_, x); }

}  // namespace pushpull
