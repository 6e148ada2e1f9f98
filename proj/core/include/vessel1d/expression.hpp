#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vessel1d {

/// Thrown by parse_expr. `position` is the 0-based character offset into the
/// source text where the problem was detected.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Thrown when evaluation produces a non-finite value (division by zero,
/// 0^negative, overflow). Results are never silently NaN.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
struct ExprNode;
}

/// Immutable arithmetic expression over the variables x and t.
///
/// Grammar (whitespace-insensitive):
///
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' factor)?            right-associative
///   atom   := number | 'x' | 't'
///           | func '(' expr (',' expr)* ')'
///           | '(' expr ')'
///   func   := sin | cos | exp | abs | max | min
///
/// Precedence, tightest first: '^', unary '-', '*' '/', '+' '-'.
/// '+', '-', '*', '/' associate to the left, '^' to the right, so
/// "-x^2" is -(x^2) and "2^3^2" is 2^(3^2).
///
/// Values are immutable after parsing and safe to evaluate concurrently.
class Expr {
 public:
  /// A default-constructed expression evaluates to 0.
  Expr();

  /// Evaluates at (x, t). Throws EvalError on any non-finite intermediate.
  double eval(double x, double t) const;
  double operator()(double x, double t) const { return eval(x, t); }

  bool uses_x() const { return uses_x_; }
  bool uses_t() const { return uses_t_; }

  /// Unparses with minimal parentheses; re-parsing yields an expression with
  /// identical evaluation (bit-for-bit, literals printed round-trip exact).
  std::string str() const;

  /// Source text the expression was parsed from ("0" when default-constructed).
  const std::string& source() const { return source_; }

 private:
  friend Expr parse_expr(std::string_view);
  Expr(std::shared_ptr<const detail::ExprNode> root, std::string source);

  std::shared_ptr<const detail::ExprNode> root_;
  std::string source_;
  bool uses_x_ = false;
  bool uses_t_ = false;
};

/// Parses `source`. Throws ParseError with the offending position on syntax
/// errors, unknown identifiers, and wrong function arity.
Expr parse_expr(std::string_view source);

inline double eval_expr(const Expr& expr, double x, double t) { return expr.eval(x, t); }

/// Finite-difference approximation of d(expr)/dx, second order. Uses a
/// central stencil when x +/- h stays inside [0, 1] and a one-sided
/// three-point stencil at the domain ends.
double eval_partial_x(const Expr& expr, double x, double t, double h = 1e-6);

}  // namespace vessel1d
