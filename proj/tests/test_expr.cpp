#include <gtest/gtest.h>

#include "hyperdec/errors.hpp"
#include "hyperdec/expr.hpp"
#include "hyperdec/transfer.hpp"
#include "support/polynomials.hpp"

using namespace hyperdec;
using namespace hyperdec::fx;
namespace ht = hyperdec::testing;

namespace {

TEST(ExprTest, CanonicalText) {
  Expr x = var();
  EXPECT_EQ(to_string(pow(x, 2) - constant(1)), "((x^2) - 1)");
  EXPECT_EQ(to_string(constant(Rational(-3, 4)) * x), "((-3/4) * x)");
  EXPECT_EQ(to_string(pow(x, -2)), "(x^(-2))");
  EXPECT_EQ(to_string(pow10(-var("n"))), "(10^(-n))");
  EXPECT_EQ(to_string(log(x) + sin(x)), "(log(x) + sin(x))");
  EXPECT_EQ(to_string(compose(exp(x), pow(x, 2))), "compose(exp(x), (x^2))");
  EXPECT_EQ(to_string(derivative(pow(x, 3))), "d/dx((x^3))");
  EXPECT_EQ(to_string(limit_seq(var("n") / (var("n") + constant(1)))), "lim(n -> inf, (n / (n + 1)))");
  EXPECT_EQ(to_string(limit_fun(x, constant(5))), "lim(x -> 5, x)");
  EXPECT_EQ(to_string(nines(omega()) - tau() + pi() * euler()), "((nines(H) - eps) + (pi * e))");
}

TEST(ExprTest, EqualityIsStructuralAndIgnoresSpans) {
  Expr a = var() + constant(1);
  Expr b = (var() + constant(1)).with_span({3, 9});
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == var() + constant(2));
  EXPECT_FALSE(pow(var(), 2) == pow(var(), 3));
  EXPECT_FALSE(var("x") == var("n"));
}

TEST(ExprTest, Closedness) {
  EXPECT_TRUE((constant(1) + omega()).is_closed());
  EXPECT_FALSE((var() + constant(1)).is_closed());
  EXPECT_TRUE(limit_seq(var("n")).is_closed());
  EXPECT_TRUE(limit_fun(var(), constant(1)).is_closed());
  EXPECT_FALSE(limit_fun(var(), var()).is_closed());
  EXPECT_FALSE(derivative(pow(var(), 2)).is_closed());
  EXPECT_TRUE(compose(sin(var()), constant(0)).is_closed());
}

TEST(ExprTest, ElementaryClass) {
  EXPECT_TRUE(is_elementary(compose(exp(var()), sqrt(var()) / pow10(var()))));
  EXPECT_FALSE(is_elementary(floor(var())));
  EXPECT_FALSE(is_elementary(var() + st(var())));
  EXPECT_THROW(symbolic_derivative(abs(var())), Error);
}

TEST(ExprTest, SymbolicDerivativeOfPolynomialsMatchesCoefficientRule) {
  std::mt19937_64 rng(11);
  ContextPtr ctx = exact_context();
  for (int i = 0; i < 100; ++i) {
    ht::Polynomial p = ht::random_polynomial(rng);
    Expr d = symbolic_derivative(p.expr());
    Rational x0 = ht::random_rational(rng);
    HyperValue v = eval_star(d, HyperValue::constant(ctx, x0));
    ASSERT_TRUE(v.is_standard());
    ASSERT_EQ(standard_part(v).rational(), p.derivative(x0)) << to_string(p.expr());
  }
}

TEST(ExprTest, SymbolicDerivativeRules) {
  Expr x = var();
  EXPECT_EQ(symbolic_derivative(constant(7)), constant(0));
  EXPECT_EQ(symbolic_derivative(x), constant(1));
  EXPECT_EQ(symbolic_derivative(exp(x)), exp(x) * constant(1));
  EXPECT_EQ(symbolic_derivative(log(x)), constant(1) / x);
  EXPECT_EQ(symbolic_derivative(compose(sin(x), pow(x, 2))),
            compose(cos(x) * constant(1), pow(x, 2)) *
                (constant(2) * pow(x, 1) * constant(1)));
}

}  // namespace
