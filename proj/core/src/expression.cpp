#include "vessel1d/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>
#include <vector>

namespace vessel1d {
namespace detail {

enum class NodeKind : unsigned char {
  number,
  var_x,
  var_t,
  neg,
  add,
  sub,
  mul,
  div,
  pow,
  fn_sin,
  fn_cos,
  fn_exp,
  fn_abs,
  fn_max,
  fn_min,
};

struct ExprNode {
  NodeKind kind;
  double value = 0.0;
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

using NodePtr = std::shared_ptr<const ExprNode>;

namespace {

NodePtr make_node(NodeKind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto node = std::make_shared<ExprNode>();
  node->kind = kind;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

NodePtr make_number(double value) {
  auto node = std::make_shared<ExprNode>();
  node->kind = NodeKind::number;
  node->value = value;
  return node;
}

struct FunctionInfo {
  std::string_view name;
  NodeKind kind;
  int arity;
};

constexpr std::array<FunctionInfo, 6> kFunctions{{
    {"sin", NodeKind::fn_sin, 1},
    {"cos", NodeKind::fn_cos, 1},
    {"exp", NodeKind::fn_exp, 1},
    {"abs", NodeKind::fn_abs, 1},
    {"max", NodeKind::fn_max, 2},
    {"min", NodeKind::fn_min, 2},
}};

const FunctionInfo* find_function(std::string_view name) {
  for (const auto& fn : kFunctions) {
    if (fn.name == name) return &fn;
  }
  return nullptr;
}

class Parser {
 public:
  explicit Parser(std::string_view source) : src_(source) {}

  NodePtr parse() {
    if (src_.empty()) throw ParseError("empty expression", 0);
    NodePtr root = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
    return root;
  }

 private:
  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip_ws();
      if (match('+')) {
        lhs = make_node(NodeKind::add, std::move(lhs), parse_term());
      } else if (match('-')) {
        lhs = make_node(NodeKind::sub, std::move(lhs), parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      skip_ws();
      if (match('*')) {
        lhs = make_node(NodeKind::mul, std::move(lhs), parse_factor());
      } else if (match('/')) {
        lhs = make_node(NodeKind::div, std::move(lhs), parse_factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    skip_ws();
    if (match('-')) return make_node(NodeKind::neg, parse_factor());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    skip_ws();
    if (match('^')) {
      // Exponent re-enters at factor level, so "2^-3" parses and the
      // operator associates to the right.
      return make_node(NodeKind::pow, std::move(base), parse_factor());
    }
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) throw ParseError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return make_number(value);
  }

  NodePtr parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    std::string_view name = src_.substr(start, pos_ - start);
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      const FunctionInfo* fn = find_function(name);
      if (!fn) throw ParseError("unknown function '" + std::string(name) + "'", start);
      ++pos_;  // '('
      std::vector<NodePtr> args;
      args.push_back(parse_expr());
      skip_ws();
      while (match(',')) args.push_back(parse_expr());
      expect(')');
      if (static_cast<int>(args.size()) != fn->arity) {
        throw ParseError("function '" + std::string(name) + "' expects " +
                             std::to_string(fn->arity) + " argument(s), got " +
                             std::to_string(args.size()),
                         start);
      }
      if (fn->arity == 1) return make_node(fn->kind, std::move(args[0]));
      return make_node(fn->kind, std::move(args[0]), std::move(args[1]));
    }
    if (name == "x") return make_node(NodeKind::var_x);
    if (name == "t") return make_node(NodeKind::var_t);
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool match(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!match(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double eval_node(const ExprNode& node, double x, double t);

double checked(double v, const char* op) {
  if (!std::isfinite(v)) {
    throw EvalError(std::string("non-finite result in '") + op + "'");
  }
  return v;
}

double eval_node(const ExprNode& node, double x, double t) {
  switch (node.kind) {
    case NodeKind::number:
      return node.value;
    case NodeKind::var_x:
      return x;
    case NodeKind::var_t:
      return t;
    case NodeKind::neg:
      return -eval_node(*node.lhs, x, t);
    case NodeKind::add:
      return checked(eval_node(*node.lhs, x, t) + eval_node(*node.rhs, x, t), "+");
    case NodeKind::sub:
      return checked(eval_node(*node.lhs, x, t) - eval_node(*node.rhs, x, t), "-");
    case NodeKind::mul:
      return checked(eval_node(*node.lhs, x, t) * eval_node(*node.rhs, x, t), "*");
    case NodeKind::div: {
      double denom = eval_node(*node.rhs, x, t);
      if (denom == 0.0) throw EvalError("division by zero");
      return checked(eval_node(*node.lhs, x, t) / denom, "/");
    }
    case NodeKind::pow:
      return checked(std::pow(eval_node(*node.lhs, x, t), eval_node(*node.rhs, x, t)), "^");
    case NodeKind::fn_sin:
      return std::sin(eval_node(*node.lhs, x, t));
    case NodeKind::fn_cos:
      return std::cos(eval_node(*node.lhs, x, t));
    case NodeKind::fn_exp:
      return checked(std::exp(eval_node(*node.lhs, x, t)), "exp");
    case NodeKind::fn_abs:
      return std::fabs(eval_node(*node.lhs, x, t));
    case NodeKind::fn_max:
      return std::fmax(eval_node(*node.lhs, x, t), eval_node(*node.rhs, x, t));
    case NodeKind::fn_min:
      return std::fmin(eval_node(*node.lhs, x, t), eval_node(*node.rhs, x, t));
  }
  throw EvalError("corrupt expression node");
}

bool node_uses(const ExprNode& node, NodeKind var) {
  if (node.kind == var) return true;
  if (node.lhs && node_uses(*node.lhs, var)) return true;
  if (node.rhs && node_uses(*node.rhs, var)) return true;
  return false;
}

// Binding strength used for minimal-parenthesis printing.
int precedence(NodeKind kind) {
  switch (kind) {
    case NodeKind::add:
    case NodeKind::sub:
      return 1;
    case NodeKind::mul:
    case NodeKind::div:
      return 2;
    case NodeKind::neg:
      return 3;
    case NodeKind::pow:
      return 4;
    default:
      return 5;
  }
}

void append_number(std::string& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

void print_node(const ExprNode& node, std::string& out);

void print_child(const ExprNode& child, std::string& out, bool needs_parens) {
  if (needs_parens) {
    out.push_back('(');
    print_node(child, out);
    out.push_back(')');
  } else {
    print_node(child, out);
  }
}

void print_binary(const ExprNode& node, std::string& out, char symbol) {
  int prec = precedence(node.kind);
  // Left-associative: parenthesize an equal-precedence right child so the
  // reparsed tree (and its floating-point evaluation order) is identical.
  print_child(*node.lhs, out, precedence(node.lhs->kind) < prec);
  out.push_back(symbol);
  print_child(*node.rhs, out, precedence(node.rhs->kind) <= prec);
}

void print_node(const ExprNode& node, std::string& out) {
  switch (node.kind) {
    case NodeKind::number:
      append_number(out, node.value);
      return;
    case NodeKind::var_x:
      out.push_back('x');
      return;
    case NodeKind::var_t:
      out.push_back('t');
      return;
    case NodeKind::neg:
      out.push_back('-');
      print_child(*node.lhs, out, precedence(node.lhs->kind) < 3);
      return;
    case NodeKind::add:
      print_binary(node, out, '+');
      return;
    case NodeKind::sub:
      print_binary(node, out, '-');
      return;
    case NodeKind::mul:
      print_binary(node, out, '*');
      return;
    case NodeKind::div:
      print_binary(node, out, '/');
      return;
    case NodeKind::pow:
      // '^' is right-associative and binds tighter than unary minus, so any
      // non-atomic base needs parentheses.
      print_child(*node.lhs, out, precedence(node.lhs->kind) <= 4);
      out.push_back('^');
      print_child(*node.rhs, out, precedence(node.rhs->kind) < 4);
      return;
    case NodeKind::fn_sin:
    case NodeKind::fn_cos:
    case NodeKind::fn_exp:
    case NodeKind::fn_abs: {
      const char* name = node.kind == NodeKind::fn_sin   ? "sin"
                         : node.kind == NodeKind::fn_cos ? "cos"
                         : node.kind == NodeKind::fn_exp ? "exp"
                                                         : "abs";
      out.append(name);
      out.push_back('(');
      print_node(*node.lhs, out);
      out.push_back(')');
      return;
    }
    case NodeKind::fn_max:
    case NodeKind::fn_min:
      out.append(node.kind == NodeKind::fn_max ? "max" : "min");
      out.push_back('(');
      print_node(*node.lhs, out);
      out.push_back(',');
      print_node(*node.rhs, out);
      out.push_back(')');
      return;
  }
}

}  // namespace
}  // namespace detail

Expr::Expr() : root_(detail::make_number(0.0)), source_("0") {}

Expr::Expr(std::shared_ptr<const detail::ExprNode> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {
  uses_x_ = detail::node_uses(*root_, detail::NodeKind::var_x);
  uses_t_ = detail::node_uses(*root_, detail::NodeKind::var_t);
}

double Expr::eval(double x, double t) const { return detail::eval_node(*root_, x, t); }

std::string Expr::str() const {
  std::string out;
  detail::print_node(*root_, out);
  return out;
}

Expr parse_expr(std::string_view source) {
  detail::Parser parser(source);
  return Expr(parser.parse(), std::string(source));
}

double eval_partial_x(const Expr& expr, double x, double t, double h) {
  if (!(h > 0)) throw std::invalid_argument("eval_partial_x: h must be positive");
  if (x - h >= 0.0 && x + h <= 1.0) {
    return (expr.eval(x + h, t) - expr.eval(x - h, t)) / (2.0 * h);
  }
  if (x - h < 0.0) {
    // One-sided second-order stencil at the left end.
    return (-3.0 * expr.eval(x, t) + 4.0 * expr.eval(x + h, t) - expr.eval(x + 2.0 * h, t)) /
           (2.0 * h);
  }
  return (3.0 * expr.eval(x, t) - 4.0 * expr.eval(x - h, t) + expr.eval(x - 2.0 * h, t)) /
         (2.0 * h);
}

}  // namespace vessel1d
