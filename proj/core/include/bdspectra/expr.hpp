#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "bdspectra/dual.hpp"

namespace bdspectra {

// Coefficient expressions: arithmetic in the single variable t.
//
// Grammar (whitespace between tokens is ignored):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := base ('^' unary)?
//   base    := number | 't' | func '(' expr ')' | '(' expr ')'
//   func    := 'sqrt' | 'exp' | 'ln'
//   number  := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//
// '^' binds tighter than unary minus and is right-associative, so
// "-t^2" is -(t^2) and "2^3^2" is 2^(3^2).

enum class BinaryOp { add, sub, mul, div, pow };
enum class Func { sqrt, exp, ln };

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

struct ConstNode {
  double value;
};
struct VarNode {};
struct NegNode {
  NodePtr operand;
};
struct BinaryNode {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct FuncNode {
  Func fn;
  NodePtr arg;
};

struct ExprNode {
  std::variant<ConstNode, VarNode, NegNode, BinaryNode, FuncNode> data;
};

/// Immutable parsed expression. Copies share the tree.
class CoeffExpr {
 public:
  /// The constant 0.
  CoeffExpr();

  static CoeffExpr constant(double value);
  static CoeffExpr variable();

  const NodePtr& root() const noexcept { return root_; }
  /// Original text for parsed expressions, canonical form for built ones.
  const std::string& source() const noexcept { return source_; }

  /// Fully parenthesized form; parsing it yields a structurally equal tree.
  std::string canonical() const;

  /// Value and exact first derivative at t. Throws DomainError.
  Dual eval(double t) const;
  double value(double t) const { return eval(t).value; }

  /// True when the root is the numeric literal `v` (structural, not numeric).
  bool is_literal(double v) const;
  bool is_constant() const;

  /// Replace every occurrence of t by `replacement`.
  CoeffExpr substitute(const CoeffExpr& replacement) const;

  friend CoeffExpr operator+(const CoeffExpr& a, const CoeffExpr& b);
  friend CoeffExpr operator-(const CoeffExpr& a, const CoeffExpr& b);
  friend CoeffExpr operator*(const CoeffExpr& a, const CoeffExpr& b);
  friend CoeffExpr operator/(const CoeffExpr& a, const CoeffExpr& b);
  friend CoeffExpr operator-(const CoeffExpr& a);

 private:
  friend CoeffExpr parse_expr(std::string_view source);
  CoeffExpr(NodePtr root, std::string source);
  static CoeffExpr from_node(NodePtr root);

  NodePtr root_;
  std::string source_;
};

/// Throws SyntaxError (with byte offset) or UnknownIdentifier.
CoeffExpr parse_expr(std::string_view source);

/// Forward-mode evaluation of `expr` at t.
inline Dual eval_dual(const CoeffExpr& expr, double t) { return expr.eval(t); }

bool structurally_equal(const NodePtr& a, const NodePtr& b);
inline bool structurally_equal(const CoeffExpr& a, const CoeffExpr& b) {
  return structurally_equal(a.root(), b.root());
}

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

}  // namespace bdspectra
