#pragma once

#include <compare>
#include <string>

#include "hyperdec/numeric.hpp"

namespace hyperdec {

enum class Magnitude { Infinitesimal, Appreciable, Infinite };

/// The monomial tau^b * omega^a, where omega is the fixed infinite
/// hyperinteger and tau = 10^(-omega).
///
/// Ordering is by magnitude: a larger pair is an infinitely larger monomial.
/// Since tau is smaller than every power of omega^-1, the tau exponent
/// dominates: (b, a) > (b', a') iff b < b', or b == b' and a > a'.
struct ExponentPair {
  Rational b;  // power of tau
  Rational a;  // power of omega

  ExponentPair() = default;
  ExponentPair(Rational tau_power, Rational omega_power)
      : b(std::move(tau_power)), a(std::move(omega_power)) {}

  static ExponentPair unit() { return {}; }
  static ExponentPair omega() { return {Rational(0), Rational(1)}; }
  static ExponentPair tau() { return {Rational(1), Rational(0)}; }

  bool is_unit() const { return sgn(b) == 0 && sgn(a) == 0; }
  bool is_infinite() const { return sgn(b) < 0 || (sgn(b) == 0 && sgn(a) > 0); }
  bool is_infinitesimal() const { return sgn(b) > 0 || (sgn(b) == 0 && sgn(a) < 0); }
  Magnitude magnitude() const;

  /// Monomial product and quotient: exponents add and subtract.
  ExponentPair operator+(const ExponentPair& other) const;
  ExponentPair operator-(const ExponentPair& other) const;
  ExponentPair operator-() const;
  ExponentPair scaled(long k) const;

  /// "(b,a)" with each component in p/q form.
  std::string to_string() const;

  friend bool operator==(const ExponentPair& x, const ExponentPair& y) {
    return x.b == y.b && x.a == y.a;
  }
  friend std::strong_ordering operator<=>(const ExponentPair& x, const ExponentPair& y);
};

}  // namespace hyperdec
