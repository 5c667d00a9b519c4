#include "hyperdec/expr.hpp"

#include <utility>

namespace hyperdec {

namespace {

Expr make(NodeKind kind, std::vector<Expr> args = {}) {
  Expr::Node node{kind, Rational(0), 0, {}, std::move(args), {}};
  return Expr(std::move(node));
}

Expr make_bound(NodeKind kind, std::string name, std::vector<Expr> args) {
  Expr::Node node{kind, Rational(0), 0, std::move(name), std::move(args), {}};
  return Expr(std::move(node));
}

bool closed_under(const Expr& e, bool bound) {
  switch (e.kind()) {
    case NodeKind::Variable: return bound;
    // d/dx(f) is evaluated at the enclosing point, so it needs one.
    case NodeKind::Derivative: return bound && closed_under(e.arg(0), true);
    case NodeKind::LimitSeq: return closed_under(e.arg(0), true);
    case NodeKind::LimitFun: return closed_under(e.arg(0), true) && closed_under(e.arg(1), bound);
    case NodeKind::Compose: return closed_under(e.arg(0), true) && closed_under(e.arg(1), bound);
    default:
      for (const auto& a : e.args()) {
        if (!closed_under(a, bound)) return false;
      }
      return true;
  }
}

}  // namespace

Expr::Expr(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

Expr Expr::with_span(Span span) const {
  Node copy = *node_;
  copy.span = span;
  return Expr(std::move(copy));
}

bool Expr::is_closed() const { return closed_under(*this, false); }

bool operator==(const Expr& x, const Expr& y) {
  if (x.node_ == y.node_) return true;
  if (x.kind() != y.kind() || x.value() != y.value() || x.exponent() != y.exponent() ||
      x.name() != y.name() || x.args().size() != y.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.args().size(); ++i) {
    if (!(x.arg(i) == y.arg(i))) return false;
  }
  return true;
}

Expr operator-(Expr a) { return make(NodeKind::Neg, {std::move(a)}); }
Expr operator+(Expr a, Expr b) { return make(NodeKind::Add, {std::move(a), std::move(b)}); }
Expr operator-(Expr a, Expr b) { return make(NodeKind::Sub, {std::move(a), std::move(b)}); }
Expr operator*(Expr a, Expr b) { return make(NodeKind::Mul, {std::move(a), std::move(b)}); }
Expr operator/(Expr a, Expr b) { return make(NodeKind::Div, {std::move(a), std::move(b)}); }

namespace fx {

Expr var(std::string name) {
  Expr::Node node{NodeKind::Variable, Rational(0), 0, std::move(name), {}, {}};
  return Expr(std::move(node));
}

Expr constant(Rational value) {
  value.canonicalize();
  Expr::Node node{NodeKind::Constant, std::move(value), 0, {}, {}, {}};
  return Expr(std::move(node));
}

Expr constant(long value) { return constant(Rational(value)); }
Expr pi() { return make(NodeKind::Pi); }
Expr euler() { return make(NodeKind::Euler); }
Expr omega() { return make(NodeKind::Omega); }
Expr tau() { return make(NodeKind::Tau); }

Expr pow(Expr base, long exponent) {
  Expr::Node node{NodeKind::Pow, Rational(0), exponent, {}, {std::move(base)}, {}};
  return Expr(std::move(node));
}

Expr pow10(Expr exponent) { return make(NodeKind::Pow10, {std::move(exponent)}); }
Expr exp(Expr a) { return make(NodeKind::Exp, {std::move(a)}); }
Expr log(Expr a) { return make(NodeKind::Log, {std::move(a)}); }
Expr sin(Expr a) { return make(NodeKind::Sin, {std::move(a)}); }
Expr cos(Expr a) { return make(NodeKind::Cos, {std::move(a)}); }
Expr sqrt(Expr a) { return make(NodeKind::Sqrt, {std::move(a)}); }
Expr compose(Expr outer, Expr inner) {
  return make(NodeKind::Compose, {std::move(outer), std::move(inner)});
}
Expr abs(Expr a) { return make(NodeKind::Abs, {std::move(a)}); }
Expr floor(Expr a) { return make(NodeKind::Floor, {std::move(a)}); }
Expr st(Expr a) { return make(NodeKind::StandardPart, {std::move(a)}); }
Expr nines(Expr a) { return make(NodeKind::Nines, {std::move(a)}); }

Expr derivative(Expr f, std::string variable) {
  return make_bound(NodeKind::Derivative, std::move(variable), {std::move(f)});
}

Expr limit_seq(Expr u, std::string variable) {
  return make_bound(NodeKind::LimitSeq, std::move(variable), {std::move(u)});
}

Expr limit_fun(Expr f, Expr point, std::string variable) {
  return make_bound(NodeKind::LimitFun, std::move(variable), {std::move(f), std::move(point)});
}

}  // namespace fx

std::string_view function_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Exp: return "exp";
    case NodeKind::Log: return "log";
    case NodeKind::Sin: return "sin";
    case NodeKind::Cos: return "cos";
    case NodeKind::Sqrt: return "sqrt";
    case NodeKind::Abs: return "abs";
    case NodeKind::Floor: return "floor";
    case NodeKind::StandardPart: return "st";
    case NodeKind::Nines: return "nines";
    case NodeKind::Compose: return "compose";
    default: return "";
  }
}

bool is_elementary(const Expr& e) {
  if (static_cast<int>(e.kind()) > static_cast<int>(NodeKind::Compose)) return false;
  for (const auto& a : e.args()) {
    if (!is_elementary(a)) return false;
  }
  return true;
}

Expr symbolic_derivative(const Expr& e) {
  using namespace fx;
  switch (e.kind()) {
    case NodeKind::Variable: return constant(1);
    case NodeKind::Constant:
    case NodeKind::Pi:
    case NodeKind::Euler:
    case NodeKind::Omega:
    case NodeKind::Tau: return constant(0);
    case NodeKind::Neg: return -symbolic_derivative(e.arg(0));
    case NodeKind::Add: return symbolic_derivative(e.arg(0)) + symbolic_derivative(e.arg(1));
    case NodeKind::Sub: return symbolic_derivative(e.arg(0)) - symbolic_derivative(e.arg(1));
    case NodeKind::Mul: {
      const Expr& f = e.arg(0);
      const Expr& g = e.arg(1);
      return symbolic_derivative(f) * g + f * symbolic_derivative(g);
    }
    case NodeKind::Div: {
      const Expr& f = e.arg(0);
      const Expr& g = e.arg(1);
      return (symbolic_derivative(f) * g - f * symbolic_derivative(g)) / pow(g, 2);
    }
    case NodeKind::Pow: {
      const long k = e.exponent();
      if (k == 0) return constant(0);
      return constant(k) * pow(e.arg(0), k - 1) * symbolic_derivative(e.arg(0));
    }
    case NodeKind::Pow10:
      return e * log(constant(10)) * symbolic_derivative(e.arg(0));
    case NodeKind::Exp: return e * symbolic_derivative(e.arg(0));
    case NodeKind::Log: return symbolic_derivative(e.arg(0)) / e.arg(0);
    case NodeKind::Sin: return cos(e.arg(0)) * symbolic_derivative(e.arg(0));
    case NodeKind::Cos: return -(sin(e.arg(0)) * symbolic_derivative(e.arg(0)));
    case NodeKind::Sqrt: return symbolic_derivative(e.arg(0)) / (constant(2) * e);
    case NodeKind::Compose:
      return compose(symbolic_derivative(e.arg(0)), e.arg(1)) * symbolic_derivative(e.arg(1));
    default:
      throw Error(ErrorKind::NotElementary,
                  "no symbolic derivative for '" + to_string(e) + "'");
  }
}

namespace {

std::string constant_text(const Rational& q) {
  if (sgn(q) >= 0 && is_integer(q)) return to_string(q);
  return "(" + to_string(q) + ")";
}

std::string binary(const Expr& e, const char* op) {
  return "(" + to_string(e.arg(0)) + " " + op + " " + to_string(e.arg(1)) + ")";
}

}  // namespace

std::string to_string(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Variable: return e.name();
    case NodeKind::Constant: return constant_text(e.value());
    case NodeKind::Pi: return "pi";
    case NodeKind::Euler: return "e";
    case NodeKind::Omega: return "H";
    case NodeKind::Tau: return "eps";
    case NodeKind::Neg: return "(-" + to_string(e.arg(0)) + ")";
    case NodeKind::Add: return binary(e, "+");
    case NodeKind::Sub: return binary(e, "-");
    case NodeKind::Mul: return binary(e, "*");
    case NodeKind::Div: return binary(e, "/");
    case NodeKind::Pow: {
      const long k = e.exponent();
      std::string exponent = k < 0 ? "(" + std::to_string(k) + ")" : std::to_string(k);
      return "(" + to_string(e.arg(0)) + "^" + exponent + ")";
    }
    case NodeKind::Pow10: return "(10^" + to_string(e.arg(0)) + ")";
    case NodeKind::Compose:
      return "compose(" + to_string(e.arg(0)) + ", " + to_string(e.arg(1)) + ")";
    case NodeKind::Derivative: return "d/d" + e.name() + "(" + to_string(e.arg(0)) + ")";
    case NodeKind::LimitSeq: return "lim(" + e.name() + " -> inf, " + to_string(e.arg(0)) + ")";
    case NodeKind::LimitFun:
      return "lim(" + e.name() + " -> " + to_string(e.arg(1)) + ", " + to_string(e.arg(0)) + ")";
    default:
      return std::string(function_name(e.kind())) + "(" + to_string(e.arg(0)) + ")";
  }
}

}  // namespace hyperdec
