#pragma once

#include <compare>
#include <string>
#include <variant>

#include <gmpxx.h>
#include <mpfr.h>

namespace hyperdec {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q", "-p/q" or a plain decimal literal such as "0.125" into
/// a canonical rational. Throws Error(InvalidArgument) on anything else.
Rational parse_rational(const std::string& text);

/// "p/q" or "p" in lowest terms.
std::string to_string(const Rational& q);

Integer floor(const Rational& q);
bool is_integer(const Rational& q);
/// True iff the denominator has no prime factors other than 2 and 5.
bool is_terminating_decimal(const Rational& q);
Rational pow10(long exponent);

/// Number of binary digits carried for a working precision of `digits` decimals.
mpfr_prec_t bits_for_digits(unsigned digits);

/// RAII wrapper over an MPFR value. Binary operations round to nearest at the
/// larger of the two operand precisions.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits);
  BigFloat(const Rational& value, mpfr_prec_t bits);
  BigFloat(long value, mpfr_prec_t bits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat pi(mpfr_prec_t bits);
  static BigFloat euler_e(mpfr_prec_t bits);
  /// Accepts anything mpfr_set_str understands in base 10.
  static BigFloat parse(const std::string& text, mpfr_prec_t bits);

  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  int sign() const noexcept;
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_integer() const noexcept { return mpfr_integer_p(value_) != 0; }
  double to_double() const noexcept;
  /// The exact binary value as a rational.
  Rational to_rational() const;
  Integer floor() const;

  /// Scientific notation with `digits` significant decimals, trailing zeros dropped.
  std::string to_string(unsigned digits) const;
  /// Shortest decimal string that reads back to the same value.
  std::string to_round_trip_string() const;

  BigFloat operator-() const;
  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend bool operator==(const BigFloat& a, const BigFloat& b) noexcept;
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) noexcept;

  friend BigFloat exp(const BigFloat& x);
  friend BigFloat log(const BigFloat& x);
  friend BigFloat sin(const BigFloat& x);
  friend BigFloat cos(const BigFloat& x);
  friend BigFloat sqrt(const BigFloat& x);

 private:
  mpfr_t value_;
};

/// A series coefficient: an exact rational, or a fixed-precision float.
/// Mixed operations promote the rational side to the float's precision.
class Coefficient {
 public:
  Coefficient() : value_(Rational(0)) {}
  Coefficient(Rational q) : value_(std::move(q)) {}
  Coefficient(BigFloat f) : value_(std::move(f)) {}
  Coefficient(long v) : value_(Rational(v)) {}

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  const BigFloat& real() const;
  /// Float view at the given precision (converts exact values).
  BigFloat to_float(mpfr_prec_t bits) const;
  /// Exact value; floats convert to their binary rational.
  Rational to_rational() const;

  int sign() const noexcept;
  bool is_zero() const noexcept { return sign() == 0; }
  bool is_integer() const noexcept;
  bool is_terminating_decimal() const;
  Integer floor() const;
  double to_double() const;
  Coefficient abs() const { return sign() < 0 ? -*this : *this; }
  Coefficient pow(long exponent) const;

  /// Canonical text: "p/q" for exact values, scientific digits for floats.
  std::string to_string(unsigned float_digits = 20) const;

  Coefficient operator-() const;
  friend Coefficient operator+(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
  /// Throws Error(DivisionByZero).
  friend Coefficient operator/(const Coefficient& a, const Coefficient& b);
  Coefficient& operator+=(const Coefficient& other) { return *this = *this + other; }
  Coefficient& operator*=(const Coefficient& other) { return *this = *this * other; }

  /// Numeric equality (1/2 == 0.5 when the float is exactly 0.5).
  friend bool operator==(const Coefficient& a, const Coefficient& b);
  friend std::partial_ordering operator<=>(const Coefficient& a, const Coefficient& b);

 private:
  std::variant<Rational, BigFloat> value_;
};

}  // namespace hyperdec
