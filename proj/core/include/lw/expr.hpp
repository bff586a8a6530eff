#pragma once

#include <memory>
#include <string>

#include "lw/errors.hpp"

namespace lw {

namespace detail {
struct ExprNode;
}

/// Immutable expression tree in one real variable.
///
/// Grammar (by loosening precedence): '^' (right-associative) binds tighter
/// than unary minus, which binds tighter than '*','/' (left-associative),
/// which bind tighter than '+','-'. Atoms are numeric literals, a single
/// identifier (the free variable), parenthesized expressions, and calls
/// name(expr) with name in {sin, cos, tan, sinh, cosh, tanh, exp, ln, sqrt}.
class Expr {
 public:
  Expr() = default;

  /// Parse source text; SyntaxError (with byte offset) on malformed input.
  static Expr parse(const std::string& text);

  /// Constant expression.
  static Expr constant(double value);

  /// IEEE evaluation at t. DomainError when a sub-expression leaves the
  /// domain of its function or produces a non-finite value.
  double eval(double t) const;

  /// Exact symbolic derivative with light simplification
  /// (0*x -> 0, x+0 -> x, 1*x -> x).
  Expr differentiate() const;

  /// Canonical printing; parse(to_string(e)) reproduces the tree.
  std::string to_string() const;

  /// Name of the free variable; empty for constant expressions.
  const std::string& variable() const;

  bool is_constant() const;
  bool empty() const { return !node_; }

  // Arithmetic composition (used to assemble derived quantities such as
  // spinor components from parsed data).
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  static Expr sqrt(const Expr& a);
  static Expr negate(const Expr& a);

 private:
  explicit Expr(std::shared_ptr<const detail::ExprNode> node);
  std::shared_ptr<const detail::ExprNode> node_;
};

}  // namespace lw
