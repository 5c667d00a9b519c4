// Unit tests for the ordered-field kernel: worked examples, error paths, and
// dictionary/convolution oracles that never touch the series code.

#include <map>
#include <utility>

#include <gtest/gtest.h>

#include "hyperdec/errors.hpp"
#include "hyperdec/hyper_value.hpp"
#include "hyperdec/serialize.hpp"

using namespace hyperdec;

namespace {

using Key = std::pair<Rational, Rational>;  // (b, a)
using Dict = std::map<Key, Rational>;

Dict to_dict(const HyperValue& x) {
  Dict d;
  for (const auto& t : x.terms()) d[{t.exponent.b, t.exponent.a}] = t.coeff.rational();
  return d;
}

Dict dict_add(const Dict& x, const Dict& y) {
  Dict out = x;
  for (const auto& [k, c] : y) out[k] += c;
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

Dict dict_mul(const Dict& x, const Dict& y) {
  Dict out;
  for (const auto& [kx, cx] : x) {
    for (const auto& [ky, cy] : y) {
      out[{Rational(kx.first + ky.first), Rational(kx.second + ky.second)}] += cx * cy;
    }
  }
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

class HyperValueTest : public ::testing::Test {
 protected:
  ContextPtr ctx = exact_context();
  HyperValue one = HyperValue::constant(ctx, Rational(1));
  HyperValue tau = HyperValue::tau(ctx);
  HyperValue omega = HyperValue::omega(ctx);

  HyperValue q(long num, long den = 1) { return HyperValue::constant(ctx, Rational(num, den)); }
};

TEST_F(HyperValueTest, AddCancelsTauExactly) {
  HyperValue x = (one - tau) + tau;
  EXPECT_EQ(x, one);
  EXPECT_FALSE(x.truncated());
}

TEST_F(HyperValueTest, AddZeroIsIdentity) {
  HyperValue x = omega + q(1, 3) - tau.pow(2);
  EXPECT_EQ(x + HyperValue::zero(ctx), x);
}

TEST_F(HyperValueTest, AddMatchesDictionaryMerge) {
  HyperValue x = omega + one;
  HyperValue y = omega - one;
  HyperValue sum = x + y;
  EXPECT_EQ(to_dict(sum), dict_add(to_dict(x), to_dict(y)));
  EXPECT_EQ(sum, omega.scaled(Coefficient(2L)));
}

TEST_F(HyperValueTest, MulMatchesConvolution) {
  HyperValue x = one - tau;
  HyperValue y = one + tau;
  HyperValue p = x * y;
  EXPECT_EQ(to_dict(p), dict_mul(to_dict(x), to_dict(y)));
  EXPECT_EQ(p, one - tau.pow(2));
  EXPECT_FALSE(p.truncated());
}

TEST_F(HyperValueTest, MonomialTimesItsInverse) {
  HyperValue inverse = HyperValue::monomial(ctx, Coefficient(1L), ExponentPair(Rational(-1), Rational(0)));
  EXPECT_EQ(tau * inverse, one);
}

TEST_F(HyperValueTest, DifferenceOfSquaresAtNines) {
  HyperValue nine = nines_hyper(ctx);
  HyperValue product = (nine - one) * (nine + one);
  EXPECT_EQ(product, nine * nine - one);
  EXPECT_EQ(product, tau.pow(2) - tau.scaled(Coefficient(2L)));
}

TEST_F(HyperValueTest, InverseOfTau) {
  HyperValue inverse = inv(tau);
  ASSERT_EQ(inverse.terms().size(), 1u);
  EXPECT_EQ(inverse.terms()[0].exponent, ExponentPair(Rational(-1), Rational(0)));
  EXPECT_FALSE(inverse.truncated());
}

TEST_F(HyperValueTest, SlopeQuotientIsExact) {
  HyperValue numerator = tau.scaled(Coefficient(2L)) - tau.pow(2);
  HyperValue denominator = -tau;
  HyperValue quotient = numerator / denominator;
  EXPECT_EQ(quotient, tau - q(2));
  EXPECT_FALSE(quotient.truncated());
  EXPECT_EQ(quotient * denominator, numerator);
}

TEST_F(HyperValueTest, InverseOfNinesIsGeometricSeries) {
  const std::size_t k = ctx->max_terms();
  HyperValue series = inv(one - tau);
  ASSERT_TRUE(series.truncated());
  ASSERT_EQ(series.terms().size(), k);
  for (std::size_t i = 0; i < k; ++i) {
    EXPECT_EQ(series.terms()[i].exponent, ExponentPair(Rational(static_cast<long>(i)), Rational(0)));
    EXPECT_EQ(series.terms()[i].coeff, Coefficient(1L));
  }
  EXPECT_EQ(*series.horizon(), ExponentPair(Rational(static_cast<long>(k)), Rational(0)));
  // Multiplying back recovers 1 on every certified term.
  HyperValue back = series * (one - tau);
  EXPECT_TRUE(agrees(back, one));
  EXPECT_TRUE(back.truncated());
}

TEST_F(HyperValueTest, InverseOfZeroThrows) {
  try {
    (void)inv(HyperValue::zero(ctx));
    FAIL() << "expected DivisionByZero";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
  }
}

TEST_F(HyperValueTest, CompareNinesBelowOne) {
  EXPECT_EQ(compare(one - tau, one), std::strong_ordering::less);
  EXPECT_EQ(compare(one, one - tau), std::strong_ordering::greater);
  HyperValue x = omega - q(7, 3) + tau;
  EXPECT_EQ(compare(x, x), std::strong_ordering::equal);
}

TEST_F(HyperValueTest, OmegaIsBelowTenToOmega) {
  // finite proxy: n < 10^n for every n >= 1
  for (long n = 1; n < 30; ++n) EXPECT_LT(Rational(n), pow10(n));
  EXPECT_EQ(compare(omega, inv(tau)), std::strong_ordering::less);
}

TEST_F(HyperValueTest, CompareRefusesUncertifiedEquality) {
  HyperValue three = q(3) - tau;
  HyperValue back = inv(three) * three;
  try {
    (void)compare(back, one);
    FAIL() << "expected TruncationAmbiguous";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TruncationAmbiguous);
  }
  // A difference visible above the horizon is still decided.
  EXPECT_EQ(compare(back, q(2)), std::strong_ordering::less);
}

TEST_F(HyperValueTest, StandardPart) {
  EXPECT_EQ(standard_part(one - tau), Coefficient(1L));
  EXPECT_EQ(standard_part(HyperValue::zero(ctx)), Coefficient(0L));
  EXPECT_EQ(standard_part(q(2) - tau), Coefficient(2L));
  EXPECT_EQ(standard_part(inv(omega)), Coefficient(0L));
  try {
    (void)standard_part(omega + one);
    FAIL() << "expected NotFinite";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFinite);
  }
}

TEST_F(HyperValueTest, ApproxEq) {
  EXPECT_TRUE(approx_eq(one - tau, one));
  EXPECT_FALSE(approx_eq(omega, omega + one));
  EXPECT_TRUE(approx_eq(omega, omega));
  EXPECT_TRUE(approx_eq(omega + inv(omega), omega));
}

TEST_F(HyperValueTest, Classify) {
  EXPECT_EQ(classify(tau), (Classification{Magnitude::Infinitesimal, 1}));
  EXPECT_EQ(classify(omega + one), (Classification{Magnitude::Infinite, 1}));
  // finite proxy: n / 10^n shrinks to 0
  EXPECT_LT(Rational(20) / pow10(20), Rational(1, 1000000));
  EXPECT_EQ(classify(omega * tau), (Classification{Magnitude::Infinitesimal, 1}));
  EXPECT_EQ(classify(HyperValue::zero(ctx)), (Classification{Magnitude::Infinitesimal, 0}));
  EXPECT_EQ(classify(q(-3, 2) + tau), (Classification{Magnitude::Appreciable, -1}));
}

TEST_F(HyperValueTest, DecomposeTripleSum) {
  Decomposition d = decompose(omega + q(1, 2) + tau);
  EXPECT_EQ(d.integer_part, omega);
  EXPECT_EQ(d.fraction, Coefficient(Rational(1, 2)));
  EXPECT_EQ(d.infinitesimal, tau);

  Decomposition z = decompose(HyperValue::zero(ctx));
  EXPECT_TRUE(z.integer_part.is_zero());
  EXPECT_TRUE(z.fraction.is_zero());
  EXPECT_TRUE(z.infinitesimal.is_zero());
}

TEST_F(HyperValueTest, DecomposeAtIntegerBoundary) {
  HyperValue x = one - tau;
  Decomposition raw = decompose(x, DecomposeMode::Raw);
  EXPECT_TRUE(raw.integer_part.is_zero());
  EXPECT_EQ(raw.fraction, Coefficient(1L));
  EXPECT_EQ(raw.infinitesimal, -tau);

  Decomposition normalized = decompose(x);
  EXPECT_EQ(normalized.integer_part, one);
  EXPECT_TRUE(normalized.fraction.is_zero());
  EXPECT_EQ(normalized.infinitesimal, -tau);
  EXPECT_EQ(normalized.integer_part + HyperValue::constant(ctx, normalized.fraction) +
                normalized.infinitesimal,
            x);
}

TEST_F(HyperValueTest, DecomposeNeedsHyperinteger) {
  HyperValue half_omega = omega.scaled(Coefficient(Rational(1, 2)));
  EXPECT_NO_THROW((void)decompose(half_omega, DecomposeMode::Raw));
  try {
    (void)decompose(half_omega);
    FAIL() << "expected FloorUndecidable";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FloorUndecidable);
  }
}

TEST_F(HyperValueTest, Floor) {
  EXPECT_TRUE(floor(one - tau).is_zero());
  EXPECT_EQ(floor(q(10) - tau.scaled(Coefficient(10L))), q(9));
  EXPECT_EQ(floor(omega + q(1, 2)), omega);
  EXPECT_EQ(floor(q(-1, 2)), q(-1));
  EXPECT_EQ(floor(q(3) + tau), q(3));
  // 10^omega / 4 is a hyperinteger: 10^omega carries every standard power of 10.
  HyperValue big = inv(tau).scaled(Coefficient(Rational(1, 4)));
  EXPECT_EQ(floor(big - tau), big - one);
}

TEST_F(HyperValueTest, FloorOfHalfOmegaIsUndecidable) {
  try {
    (void)floor(omega.scaled(Coefficient(Rational(1, 2))));
    FAIL() << "expected FloorUndecidable";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FloorUndecidable);
  }
  try {
    (void)floor(inv(tau).scaled(Coefficient(Rational(1, 3))));
    FAIL() << "expected FloorUndecidable";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FloorUndecidable);
  }
}

TEST_F(HyperValueTest, ContextMismatch) {
  ContextPtr other = exact_context(8);
  try {
    (void)(one + HyperValue::constant(other, Rational(1)));
    FAIL() << "expected ContextMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ContextMismatch);
  }
  // Equal settings are interchangeable.
  EXPECT_NO_THROW((void)(one + HyperValue::constant(exact_context(), Rational(1))));
}

TEST_F(HyperValueTest, ContextValidation) {
  EXPECT_THROW(NumContext(1), Error);
  EXPECT_THROW(NumContext(16, CoefficientMode::Float, 9), Error);
  EXPECT_NO_THROW(NumContext(2, CoefficientMode::Float, 10));
}

TEST_F(HyperValueTest, TruncationKeepsLeadingBinomialTerms) {
  ContextPtr small = exact_context(4);
  HyperValue x = HyperValue::constant(small, Rational(1)) + HyperValue::tau(small);
  HyperValue p = x.pow(6);
  ASSERT_TRUE(p.truncated());
  ASSERT_EQ(p.terms().size(), 4u);
  const long binomial[] = {1, 6, 15, 20};
  for (long i = 0; i < 4; ++i) {
    EXPECT_EQ(p.terms()[static_cast<std::size_t>(i)].coeff, Coefficient(binomial[i]));
    EXPECT_EQ(p.terms()[static_cast<std::size_t>(i)].exponent, ExponentPair(Rational(i), Rational(0)));
  }
}

TEST_F(HyperValueTest, NinesMatchesClosedForm) {
  for (unsigned long n = 1; n <= 12; ++n) {
    HyperValue summed = nines(ctx, n);
    EXPECT_EQ(summed, q(1) - HyperValue::constant(ctx, pow10(-static_cast<long>(n)))) << n;
  }
  EXPECT_EQ(nines_hyper(ctx), one - tau);
  EXPECT_EQ(compare(nines_hyper(ctx), one), std::strong_ordering::less);
}

TEST_F(HyperValueTest, CanonicalText) {
  EXPECT_EQ((one - tau).to_string(), "1 - eps");
  EXPECT_EQ((omega.pow(2) + q(1, 2) - tau.scaled(Coefficient(Rational(3, 4)))).to_string(),
            "H^2 + 1/2 - 3/4*eps");
  EXPECT_EQ(inv(tau).to_string(), "eps^(-1)");
  EXPECT_EQ((omega * tau).to_string(), "eps*H");
  EXPECT_EQ(HyperValue::zero(ctx).to_string(), "0");
  ContextPtr small = exact_context(2);
  HyperValue series = inv(HyperValue::constant(small, Rational(1)) - HyperValue::tau(small));
  EXPECT_EQ(series.to_string(), "1 + eps + O(eps^2)");
}

TEST_F(HyperValueTest, JsonRoundTripIsExact) {
  HyperValue x = omega.pow(3) - q(22, 7) + tau.scaled(Coefficient(Rational(-5, 9)));
  nlohmann::json doc = to_json(x);
  EXPECT_EQ(doc.dump(),
            R"({"terms":[{"a":"3","b":"0","c":"1"},{"a":"0","b":"0","c":"-22/7"},)"
            R"({"a":"0","b":"1","c":"-5/9"}],"truncated":false})");
  EXPECT_EQ(hyper_from_json(doc, ctx), x);

  HyperValue series = inv(q(3) - tau);
  HyperValue back = hyper_from_json(nlohmann::json::parse(to_json(series).dump()), ctx);
  EXPECT_EQ(back, series);
  EXPECT_TRUE(back.truncated());
}

TEST_F(HyperValueTest, JsonWithoutHorizonIsConservative) {
  auto doc = nlohmann::json::parse(
      R"({"truncated": true, "terms": [{"c": "1", "b": "0", "a": "0"}, {"c": "1", "b": "1", "a": "0"}]})");
  HyperValue x = hyper_from_json(doc, ctx);
  EXPECT_TRUE(x.truncated());
  EXPECT_EQ(x.terms().size(), 1u);
  EXPECT_THROW((void)hyper_from_json(nlohmann::json::parse(R"({"terms": 3})"), ctx), Error);
}

TEST(FloatModeTest, ArithmeticAndStandardPart) {
  ContextPtr ctx = float_context(30);
  HyperValue one = HyperValue::constant(ctx, Rational(1));
  HyperValue tau = HyperValue::tau(ctx);
  HyperValue x = (one - tau) + tau;
  EXPECT_EQ(x, one);
  HyperValue third = HyperValue::constant(ctx, Rational(1, 3)) + tau;
  Coefficient s = standard_part(third * HyperValue::constant(ctx, Rational(3)));
  EXPECT_FALSE(s.is_exact());
  EXPECT_NEAR(s.to_double(), 1.0, 1e-28);
  HyperValue back = hyper_from_json(to_json(third), ctx);
  EXPECT_EQ(back, third);
}

}  // namespace
