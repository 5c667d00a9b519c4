#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperdec/context.hpp"
#include "hyperdec/exponent.hpp"
#include "hyperdec/numeric.hpp"

namespace hyperdec {

struct Term {
  Coefficient coeff;
  ExponentPair exponent;
};

/// A hyperreal as a finite series  sum c_i * tau^b_i * omega^a_i  with terms
/// strictly descending in magnitude.
///
/// When arithmetic has to discard part of a result (more than K terms, or an
/// infinite series such as 1/(1 - tau)) the value keeps a horizon monomial h:
/// every retained term is larger than h and the discarded remainder consists
/// of terms no larger than h. truncated() is exactly "a horizon is present".
/// Terms above the horizon are always exact.
class HyperValue {
 public:
  static HyperValue zero(ContextPtr ctx);
  static HyperValue constant(ContextPtr ctx, const Rational& value);
  static HyperValue constant(ContextPtr ctx, const Coefficient& value);
  static HyperValue monomial(ContextPtr ctx, const Coefficient& coeff, ExponentPair exponent);
  static HyperValue omega(ContextPtr ctx);
  static HyperValue tau(ContextPtr ctx);
  /// Sorts, merges, drops zeros and applies the K-term limit.
  static HyperValue from_terms(ContextPtr ctx, std::vector<Term> terms,
                               std::optional<ExponentPair> horizon = std::nullopt);

  const NumContext& context() const noexcept { return *ctx_; }
  const ContextPtr& context_ptr() const noexcept { return ctx_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  bool truncated() const noexcept { return horizon_.has_value(); }
  const std::optional<ExponentPair>& horizon() const noexcept { return horizon_; }

  /// Exactly zero: no terms and nothing discarded.
  bool is_zero() const noexcept { return terms_.empty() && !horizon_; }
  /// Exactly a standard real: at most a unit term, nothing discarded.
  bool is_standard() const noexcept;
  /// Coefficient of the given monomial (zero when absent). Throws
  /// TruncationAmbiguous if the monomial lies at or below the horizon.
  Coefficient coefficient_of(const ExponentPair& exponent) const;
  /// Throws TruncationAmbiguous for an empty truncated value, InvalidArgument for zero.
  const Term& leading() const;

  HyperValue infinite_part() const;
  HyperValue infinitesimal_part() const;

  HyperValue operator-() const;
  friend HyperValue operator+(const HyperValue& x, const HyperValue& y);
  friend HyperValue operator-(const HyperValue& x, const HyperValue& y);
  friend HyperValue operator*(const HyperValue& x, const HyperValue& y);
  friend HyperValue operator/(const HyperValue& x, const HyperValue& y);
  HyperValue& operator+=(const HyperValue& y) { return *this = *this + y; }
  HyperValue& operator-=(const HyperValue& y) { return *this = *this - y; }
  HyperValue& operator*=(const HyperValue& y) { return *this = *this * y; }

  HyperValue scaled(const Coefficient& factor) const;
  HyperValue inverse() const;
  HyperValue pow(long exponent) const;

  /// Canonical text, e.g. "H + 1/2 - eps^2 + O(eps^16)". Re-parseable by the
  /// expression language when untruncated and exact.
  std::string to_string() const;

  /// Structural equality: same terms and same horizon.
  friend bool operator==(const HyperValue& x, const HyperValue& y);

 private:
  HyperValue(ContextPtr ctx, std::vector<Term> terms, std::optional<ExponentPair> horizon);

  ContextPtr ctx_;
  std::vector<Term> terms_;
  std::optional<ExponentPair> horizon_;
};

// Field operations in free-function form.
HyperValue add(const HyperValue& x, const HyperValue& y);
HyperValue sub(const HyperValue& x, const HyperValue& y);
HyperValue neg(const HyperValue& x);
HyperValue mul(const HyperValue& x, const HyperValue& y);
/// Throws DivisionByZero for an exact zero, TruncationAmbiguous for a value
/// whose only information is its horizon.
HyperValue inv(const HyperValue& y);
HyperValue div(const HyperValue& x, const HyperValue& y);

/// Sign of the leading term of x - y. Throws TruncationAmbiguous when the
/// difference vanishes on its known terms but either side was truncated.
std::strong_ordering compare(const HyperValue& x, const HyperValue& y);

/// The coefficient of the unit monomial. Throws NotFinite when x has an
/// infinite term.
Coefficient standard_part(const HyperValue& x);

/// x - y is zero or infinitesimal.
bool approx_eq(const HyperValue& x, const HyperValue& y);

struct Classification {
  Magnitude magnitude;
  int sign;  // -1, 0, +1; zero is reported as an infinitesimal of sign 0
  friend bool operator==(const Classification&, const Classification&) = default;
};

Classification classify(const HyperValue& x);
std::string to_string(Magnitude magnitude);

/// The first infinite term of x that is not a known hyperinteger, if any.
/// Known hyperintegers are integer multiples of omega^a (a a natural number)
/// and terminating-decimal multiples of omega^a * 10^(k*omega) for k >= 1.
std::optional<Term> floor_obstruction(const HyperValue& x);

/// Greatest hyperinteger not above x. Throws FloorUndecidable when x has an
/// infinite term that is not a known hyperinteger (e.g. omega/2).
HyperValue floor(const HyperValue& x);

enum class DecomposeMode {
  Normalized,  // x = I + r + eps with I a hyperinteger and r in [0, 1)
  Raw,         // x = (infinite part) + (standard coefficient) + (infinitesimal part)
};

struct Decomposition {
  HyperValue integer_part;
  Coefficient fraction;
  HyperValue infinitesimal;
};

/// Normalized mode takes I = (infinite part) + floor(standard coefficient),
/// which keeps r in [0, 1). This differs from floor(x) exactly when the
/// standard coefficient is an integer and the infinitesimal part is
/// negative: 1 - tau splits as 1 + 0 + (-tau) while floor(1 - tau) = 0.
Decomposition decompose(const HyperValue& x, DecomposeMode mode = DecomposeMode::Normalized);

/// Known terms of x and y coincide above the coarser of the two horizons.
bool agrees(const HyperValue& x, const HyperValue& y);

/// .99...9 with n nines, built by summing 9 * 10^-j.
HyperValue nines(ContextPtr ctx, unsigned long n);
/// 1 - 10^-(k*omega + j), the transferred form of nines at an infinite index.
HyperValue nines_at(ContextPtr ctx, long omega_multiple, long offset);
/// The value with omega nines: 1 - tau.
HyperValue nines_hyper(ContextPtr ctx);

}  // namespace hyperdec
