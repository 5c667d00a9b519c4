#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hyperdec/errors.hpp"
#include "hyperdec/numeric.hpp"

namespace hyperdec {

enum class NodeKind {
  // Elementary function expressions: the class with natural extensions.
  Variable,
  Constant,
  Pi,
  Euler,
  Omega,  // H
  Tau,    // eps = 10^-H
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Pow,    // integer power
  Pow10,  // 10^(k*n + j)
  Exp,
  Log,
  Sin,
  Cos,
  Sqrt,
  Compose,  // args: outer, inner
  // Operators of the expression language that act on whole values.
  Abs,
  Floor,
  StandardPart,
  Nines,
  Derivative,  // d/d<name>(f), evaluated at the bound point
  LimitSeq,    // lim(<name> -> inf, u)
  LimitFun,    // lim(<name> -> point, f); args: f, point
};

/// Immutable expression tree with shared nodes. Equality is structural and
/// ignores source spans.
class Expr {
 public:
  struct Node {
    NodeKind kind;
    Rational value;     // Constant
    long exponent = 0;  // Pow
    std::string name;   // Variable, and the bound variable of Derivative/Limit*
    std::vector<Expr> args;
    Span span;
  };

  explicit Expr(Node node);

  NodeKind kind() const noexcept { return node_->kind; }
  const Rational& value() const noexcept { return node_->value; }
  long exponent() const noexcept { return node_->exponent; }
  const std::string& name() const noexcept { return node_->name; }
  std::span<const Expr> args() const noexcept { return node_->args; }
  const Expr& arg(std::size_t i) const { return node_->args.at(i); }
  Span span() const noexcept { return node_->span; }
  Expr with_span(Span span) const;

  bool is_constant() const noexcept { return kind() == NodeKind::Constant; }
  /// Evaluable without a point: no free variable and no Derivative node
  /// outside a binding context.
  bool is_closed() const;

  friend bool operator==(const Expr& x, const Expr& y);

 private:
  std::shared_ptr<const Node> node_;
};

Expr operator-(Expr a);
Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);

/// Builders. Kept in their own namespace so exp/log/floor do not collide with
/// the numeric overloads.
namespace fx {

Expr var(std::string name = "x");
Expr constant(Rational value);
Expr constant(long value);
Expr pi();
Expr euler();
Expr omega();
Expr tau();
Expr pow(Expr base, long exponent);
Expr pow10(Expr exponent);
Expr exp(Expr a);
Expr log(Expr a);
Expr sin(Expr a);
Expr cos(Expr a);
Expr sqrt(Expr a);
Expr compose(Expr outer, Expr inner);
Expr abs(Expr a);
Expr floor(Expr a);
Expr st(Expr a);
Expr nines(Expr a);
Expr derivative(Expr f, std::string variable = "x");
Expr limit_seq(Expr u, std::string variable = "n");
Expr limit_fun(Expr f, Expr point, std::string variable = "x");

}  // namespace fx

std::string_view function_name(NodeKind kind);

/// Built only from the elementary constructors (Variable .. Compose).
bool is_elementary(const Expr& e);

/// d/dx of an elementary expression, as an expression. Used as an
/// independent oracle for the infinitesimal derivative. Throws NotElementary.
Expr symbolic_derivative(const Expr& e);

/// Fully parenthesized canonical text that the shell parser reads back to the
/// same tree.
std::string to_string(const Expr& e);

}  // namespace hyperdec
