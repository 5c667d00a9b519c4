// Digit extraction, rendering and parsing of extended decimals. Digits of
// r +- c*tau are cross-checked against an oracle that writes the expansion
// out by hand from the decimal digits of r and c.

#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "hyperdec/errors.hpp"
#include "hyperdec/lightstone.hpp"
#include "support/generators.hpp"

using namespace hyperdec;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

int decimal_digit(const Rational& q, long place) {
  // floor(q * 10^place) mod 10 for q >= 0
  Rational scaled = q * pow10(place);
  Integer f = scaled.get_num() / scaled.get_den();
  Integer d = f % 10;
  return static_cast<int>(d.get_si());
}

long decimal_length(Rational q) {
  long n = 0;
  while (!is_integer(q)) q *= 10, ++n;
  return n;
}

// x = r + sign * c * tau, r terminating in [0, 1], c terminating in (0, 1].
struct Invertible {
  Rational r;
  int sign;
  Rational c;

  int digit(Position p) const {
    if (sign > 0) return p.m == 0 ? decimal_digit(r, p.j) : (p.m == 1 ? decimal_digit(c, p.j) : 0);
    // r - c*tau = (r - 10^-L) + .99..9 (through place H) + (1 - c)*tau
    const long L = decimal_length(r);
    if (p.m == 0) return p.j <= L ? decimal_digit(r - pow10(-L), p.j) : 9;
    if (p.m == 1) return p.j <= 0 ? 9 : decimal_digit(1 - c, p.j);
    return 0;
  }
};

class LightstoneTest : public ::testing::Test {
 protected:
  ContextPtr ctx = exact_context();
  HyperValue one = HyperValue::constant(ctx, Rational(1));
  HyperValue tau = HyperValue::tau(ctx);
  HyperValue omega = HyperValue::omega(ctx);

  HyperValue q(long num, long den = 1) { return HyperValue::constant(ctx, Rational(num, den)); }
  HyperValue value_of(const Invertible& v) {
    return HyperValue::constant(ctx, v.r) + tau.scaled(Coefficient(Rational(v.sign) * v.c));
  }
};

TEST_F(LightstoneTest, DigitExamples) {
  EXPECT_EQ(digit_at(one - tau, Position{1, 0}), 9);
  EXPECT_EQ(digit_at(tau, Position{1, 0}), 1);
  for (long j = 1; j <= 30; ++j) EXPECT_EQ(digit_at(tau, Position{0, j}), 0);
  EXPECT_EQ(digit_at(q(1, 4), Position{0, 1}), 2);
  EXPECT_EQ(digit_at(q(1, 4), Position{0, 2}), 5);
  EXPECT_EQ(digit_at(q(1, 4), Position{0, 3}), 0);
  EXPECT_EQ(digit_at(one - tau, Position{1, 1}), 0);
  EXPECT_EQ(digit_at(one - tau, Position{1, -7}), 9);
  EXPECT_EQ(digit_at(one - tau, Position{2, 0}), 0);
  EXPECT_EQ(digit_at(q(1, 3), Position{0, 40}), 3);
}

TEST_F(LightstoneTest, DigitErrors) {
  EXPECT_EQ(kind_of([&] { digit_at(one, Position{0, 1}); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([&] { digit_at(-tau, Position{0, 1}); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([&] { digit_at(tau, Position{0, 0}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { digit_at(tau, Position{-1, 3}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { digit_at(q(1, 3), Position{1, 0}); }), ErrorKind::PositionOutOfModel);
  EXPECT_EQ(kind_of([&] { digit_at(inv(omega), Position{1, 0}); }), ErrorKind::PositionOutOfModel);
}

TEST_F(LightstoneTest, NinesConsistency) {
  for (unsigned long n = 1; n <= 12; ++n) {
    HyperValue v = nines(ctx, n);
    for (long j = 1; j <= 20; ++j) {
      ASSERT_EQ(digit_at(v, Position{0, j}), j <= static_cast<long>(n) ? 9 : 0);
    }
  }
  HyperValue h = nines_hyper(ctx);
  for (long j = 1; j <= 200; ++j) ASSERT_EQ(digit_at(h, Position{0, j}), 9);
}

TEST_F(LightstoneTest, RenderExamples) {
  EXPECT_EQ(render(one - tau), ".999…;…9̂");
  EXPECT_EQ(render(-tau), "−.000…;…01");
  EXPECT_EQ(render(q(1, 4)), ".25");
  EXPECT_EQ(render(q(1, 3)), ".333…");
  EXPECT_EQ(render(HyperValue::zero(ctx)), "0");
  EXPECT_EQ(render(q(3)), "3");
  EXPECT_EQ(render(q(-5, 2)), "−2.5");
  EXPECT_EQ(render(q(1, 4) + tau.scaled(Coefficient(Rational(1, 2)))), ".25000…;…0̂5");
  EXPECT_EQ(render(q(1, 4) - tau.scaled(Coefficient(Rational(1, 2)))), ".24999…;…9̂5");
  EXPECT_EQ(render(q(2) - tau), "1.999…;…9̂");
  // the standard run of nines starts after the window
  EXPECT_EQ(render(q(1, 1000) - tau.scaled(Coefficient(Rational(1, 2)))), ".000999…;…9̂5");
  EXPECT_EQ(render(q(1, 1000) + tau), ".001000…;…01");
  EXPECT_EQ(render(one - tau - tau * tau), ".999…;…98;…9̂");
  EXPECT_EQ(render(q(1, 2) + tau.scaled(Coefficient(Rational(1, 3))), RenderOptions{3, true, 6}),
            ".5000…;…0̂333333…");
}

TEST_F(LightstoneTest, RenderOptions) {
  EXPECT_EQ(render(one - tau, RenderOptions{3, false, 24}), ".999…;…9999");
  EXPECT_EQ(render(-tau, RenderOptions{5, true, 24}), "−.00000…;…01");
  EXPECT_EQ(render(q(1, 7), RenderOptions{3, true, 6}), ".142857…");
  EXPECT_EQ(kind_of([&] { render(tau, RenderOptions{0, true, 24}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { render(omega); }), ErrorKind::UnsupportedNotation);
}

TEST_F(LightstoneTest, RenderFloatValues) {
  ContextPtr f = float_context(30);
  EXPECT_EQ(render(HyperValue::constant(f, f->coefficient(Rational(1, 4)))), ".25");
  EXPECT_EQ(render(nines_hyper(f)), ".999…;…9̂");
}

TEST_F(LightstoneTest, ParseExamples) {
  EXPECT_EQ(parse_lightstone(".999…;…9̂", ctx), one - tau);
  EXPECT_EQ(parse_lightstone("nines(3)", ctx), q(999, 1000));
  EXPECT_EQ(parse_lightstone("nines(H)", ctx), one - tau);
  EXPECT_EQ(parse_lightstone(".000…;…01", ctx), tau);
  EXPECT_EQ(parse_lightstone(".999...;...9^", ctx), one - tau);
  EXPECT_EQ(parse_lightstone("  . 9 9 9 … ; … 9 ^ ", ctx), one - tau);
  EXPECT_EQ(parse_lightstone("−.000…;…01", ctx), -tau);
  EXPECT_EQ(parse_lightstone("-.000...;...01", ctx), -tau);
  EXPECT_EQ(parse_lightstone(".333…", ctx), q(1, 3));
  EXPECT_EQ(parse_lightstone(".999…", ctx), one);
  EXPECT_EQ(parse_lightstone("2.5", ctx), q(5, 2));
  EXPECT_EQ(parse_lightstone("17", ctx), q(17));
  EXPECT_EQ(parse_lightstone(".25;…0^5", ctx), q(1, 4) + tau.scaled(Coefficient(Rational(1, 2))));
  EXPECT_EQ(parse_lightstone(".999…;…99 9̂", ctx), one - tau);
  EXPECT_EQ(parse_lightstone(".5000…;…0̂333333…", ctx), q(1, 2) + tau.scaled(Coefficient(Rational(1, 3))));
}

TEST_F(LightstoneTest, ParseErrors) {
  EXPECT_EQ(kind_of([&] { parse_lightstone("", ctx); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([&] { parse_lightstone(".", ctx); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([&] { parse_lightstone("abc", ctx); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([&] { parse_lightstone(".9;9", ctx); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([&] { parse_lightstone(".9…;…9^9^", ctx); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([&] { parse_lightstone("nines(x)", ctx); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([&] { parse_lightstone(".999…;…98;…9̂", ctx); }), ErrorKind::UnsupportedNotation);
  EXPECT_EQ(kind_of([&] { parse_lightstone(".999…;…01", ctx); }), ErrorKind::UnsupportedNotation);
  try {
    parse_lightstone(".25x", ctx);
    FAIL();
  } catch (const Error& err) {
    ASSERT_TRUE(err.has_span());
    EXPECT_EQ(err.span().begin, 3u);
  }
}

class InvertibleCorpus : public LightstoneTest {
 protected:
  std::mt19937_64 rng{4242};

  Rational terminating(long max_digits, long lo) {
    long d = std::uniform_int_distribution<long>(0, max_digits)(rng);
    Integer scale = pow10(d).get_num();
    long top = scale.get_si();
    long k = std::uniform_int_distribution<long>(lo == 0 ? 0 : 1, top)(rng);
    Rational v(Integer(k), scale);
    v.canonicalize();
    return v;
  }

  Invertible next() {
    while (true) {
      Invertible v{terminating(3, 0), std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1,
                   terminating(3, 1)};
      if (sgn(v.c) == 0) continue;
      if (v.sign < 0 && sgn(v.r) == 0) continue;
      if (v.sign > 0 && v.r == 1) continue;
      return v;
    }
  }
};

TEST_F(InvertibleCorpus, RoundTripAndDigitsMatchOracle) {
  for (int i = 0; i < 200; ++i) {
    Invertible v = next();
    HyperValue x = value_of(v);
    for (int outer : {1, -1}) {
      HyperValue signed_x = outer > 0 ? x : -x;
      std::string text = render(signed_x);
      ASSERT_EQ(parse_lightstone(text, ctx), signed_x) << text;
    }
    for (long j = 1; j <= 8; ++j) ASSERT_EQ(digit_at(x, Position{0, j}), v.digit(Position{0, j}));
    for (long j = -4; j <= 5; ++j) {
      ASSERT_EQ(digit_at(x, Position{1, j}), v.digit(Position{1, j})) << render(x) << " at H" << j;
    }
    ASSERT_EQ(digit_at(x, Position{2, 0}), 0);
  }
}

TEST_F(InvertibleCorpus, PartialSumsApproximateFromBelowTheLastPlace) {
  // c ranges over thirds and sevenths too, so the block is cut off by the cap.
  for (int i = 0; i < 100; ++i) {
    Invertible v = next();
    if (i % 2 == 1) v.c = Rational(std::uniform_int_distribution<long>(1, 6)(rng), 7);
    if (i % 4 == 2) v.c = Rational(1, 3);
    HyperValue x = value_of(v);
    for (long cap : {6L, 24L}) {
      LightstoneString s = lightstone(x, RenderOptions{3, true, cap});
      ASSERT_EQ(s.blocks.size(), 1u);
      const LightstoneBlock& b = s.blocks.front();
      // Sum the rendered digits, with the ellipsis run filled by its digit.
      const long n = static_cast<long>(s.prefix.size());
      Rational standard(0);
      for (long j = 1; j <= n; ++j) standard += Rational(s.prefix[j - 1]) * pow10(-j);
      const long fill = s.prefix.back();
      const long first = b.first_j;
      ASSERT_EQ(fill, b.digits.front());
      // fill digits at places n+1 .. H+first-1
      standard += Rational(fill) * pow10(-n) / 9;
      Rational tau_coeff = -Rational(fill) * pow10(1 - first) / 9;
      for (std::size_t k = 0; k < b.digits.size(); ++k) {
        tau_coeff += Rational(b.digits[k]) * pow10(-(first + static_cast<long>(k)));
      }
      HyperValue sum = HyperValue::constant(ctx, standard) + tau.scaled(Coefficient(tau_coeff));
      const long last = first + static_cast<long>(b.digits.size()) - 1;
      HyperValue place = tau.scaled(Coefficient(pow10(-last)));
      HyperValue gap = x - sum;
      ASSERT_NE(compare(gap, HyperValue::zero(ctx)), std::strong_ordering::less) << render(x);
      ASSERT_EQ(compare(gap, place), std::strong_ordering::less) << render(x);
      ASSERT_EQ(gap.is_zero(), !b.continues) << render(x);
      ASSERT_EQ(parse_lightstone(s.text(), ctx) == x, !b.continues || sgn(v.c - Rational(1, 3)) == 0);
    }
  }
}

TEST_F(LightstoneTest, DigitRangeOverRandomValues) {
  hyperdec::testing::ValueGenerator gen(ctx, 99);
  int out_of_model = 0;
  for (int i = 0; i < 300; ++i) {
    HyperValue v = gen.finite();
    HyperValue x = v - floor(v);
    for (Position p : {Position{0, 1}, Position{0, 2}, Position{0, 5}, Position{1, -2},
                       Position{1, 0}, Position{1, 3}, Position{2, 0}}) {
      try {
        int d = digit_at(x, p);
        ASSERT_GE(d, 0);
        ASSERT_LE(d, 9);
      } catch (const Error& err) {
        ASSERT_EQ(err.kind(), ErrorKind::PositionOutOfModel) << x.to_string() << " at " << p.to_string();
        ++out_of_model;
      }
    }
  }
  EXPECT_GT(out_of_model, 0);
}

}  // namespace
