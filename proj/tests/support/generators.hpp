// Hand-rolled random generators shared by the property tests and the
// acceptance suite. Seeds are fixed so failures reproduce.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hyperdec/hyper_value.hpp"

namespace hyperdec::testing {

class ValueGenerator {
 public:
  explicit ValueGenerator(ContextPtr ctx, std::uint64_t seed = 20240917)
      : ctx_(std::move(ctx)), rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational small_rational() {
    long num = integer(-9, 9);
    long den = integer(1, 6);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  Rational nonzero_rational() {
    Rational q;
    do q = small_rational();
    while (sgn(q) == 0);
    return q;
  }

  /// Up to `max_terms` terms with exponents in [-2, 2] x [-2, 2].
  HyperValue any(int max_terms = 4) {
    std::vector<Term> terms;
    int count = static_cast<int>(integer(0, max_terms));
    for (int i = 0; i < count; ++i) {
      terms.push_back(Term{Coefficient(nonzero_rational()),
                           ExponentPair(Rational(integer(-2, 2)), Rational(integer(-2, 2)))});
    }
    return HyperValue::from_terms(ctx_, std::move(terms));
  }

  HyperValue nonzero(int max_terms = 4) {
    HyperValue x = any(max_terms);
    while (x.is_zero()) x = any(max_terms);
    return x;
  }

  /// A standard part plus infinitesimal terms only.
  HyperValue finite(int max_terms = 4) {
    std::vector<Term> terms;
    if (integer(0, 3) != 0) terms.push_back(Term{Coefficient(small_rational()), ExponentPair::unit()});
    int count = static_cast<int>(integer(0, max_terms - 1));
    for (int i = 0; i < count; ++i) terms.push_back(Term{Coefficient(nonzero_rational()), infinitesimal_exponent()});
    return HyperValue::from_terms(ctx_, std::move(terms));
  }

  HyperValue infinitesimal(int max_terms = 3) {
    std::vector<Term> terms;
    int count = static_cast<int>(integer(1, max_terms));
    for (int i = 0; i < count; ++i) terms.push_back(Term{Coefficient(nonzero_rational()), infinitesimal_exponent()});
    return HyperValue::from_terms(ctx_, std::move(terms));
  }

  /// Appreciable: nonzero standard part plus infinitesimals.
  HyperValue appreciable() {
    HyperValue x = finite();
    while (classify(x).magnitude != Magnitude::Appreciable) x = finite();
    return x;
  }

  /// Infinite terms are integer multiples of omega^a or terminating-decimal
  /// multiples of 10^omega, so floor is always decidable.
  HyperValue floor_eligible() {
    std::vector<Term> terms;
    int infinite = static_cast<int>(integer(0, 2));
    for (int i = 0; i < infinite; ++i) {
      if (integer(0, 1) == 0) {
        terms.push_back(Term{Coefficient(Rational(integer(-5, 5))),
                             ExponentPair(Rational(0), Rational(integer(1, 3)))});
      } else {
        terms.push_back(Term{Coefficient(Rational(integer(-99, 99), 100)),
                             ExponentPair(Rational(-1), Rational(integer(0, 2)))});
      }
    }
    HyperValue rest = finite(3);
    return HyperValue::from_terms(ctx_, std::move(terms)) + rest;
  }

  HyperValue infinite() {
    HyperValue x = any();
    while (x.is_zero() || classify(x).magnitude != Magnitude::Infinite) x = any();
    return x;
  }

 private:
  ExponentPair infinitesimal_exponent() {
    ExponentPair e;
    do e = ExponentPair(Rational(integer(0, 2)), Rational(integer(-2, 2)));
    while (!e.is_infinitesimal());
    return e;
  }

  ContextPtr ctx_;
  std::mt19937_64 rng_;
};

}  // namespace hyperdec::testing
