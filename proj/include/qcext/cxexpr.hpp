#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "qcext/error.hpp"

// Closed-form complex expressions in z and conj(z) with symbolic Wirtinger
// derivatives.
//
// Grammar (whitespace-insensitive):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | '+' unary | power
//   power   := primary ('^' unary)?          (right associative)
//   primary := number ['i'] | 'i' | 'z' | func '(' expr ')' | '(' expr ')'
//   func    := conj | exp | log | sqrt
// Exponents must fold to a constant.

namespace qcext::cx {

enum class Op { literal, var, conj, neg, add, sub, mul, div, pow, exp, log, sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  complex value;  // literal value, or the exponent of a pow node
  NodePtr lhs;
  NodePtr rhs;
};

/// Immutable expression tree. Copies share structure.
class Expr {
 public:
  /// The literal 0.
  Expr();
  Expr(complex value);  // NOLINT: literals convert implicitly
  Expr(double value);   // NOLINT

  static Expr z();
  static Expr parse(std::string_view text);

  /// Principal branches for log, sqrt and non-integer powers.
  complex evaluate(complex z) const;
  complex operator()(complex z) const { return evaluate(z); }

  Expr dz() const;
  Expr dzbar() const;

  /// Prints in the grammar above; parse(str()) evaluates like *this.
  std::string str() const;

  Op op() const { return node_->op; }
  const NodePtr& node() const { return node_; }

  bool is_constant() const { return node_->op == Op::literal; }
  bool is_zero() const { return is_constant() && node_->value == complex{}; }
  complex constant_value() const { return node_->value; }

  /// True when the tree contains no conj node (the expression is analytic
  /// wherever it is defined).
  bool is_holomorphic() const;
  std::size_t size() const;

  explicit Expr(NodePtr node) : node_(std::move(node)) {}

 private:
  NodePtr node_;
};

// Smart constructors; they fold constants and drop 0/1 identities.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, complex exponent);
Expr conj(const Expr& a);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sqrt(const Expr& a);

/// Integer powers by repeated squaring; poles at 0 for negative exponents.
complex ipow(complex base, long long exponent);

}  // namespace qcext::cx
