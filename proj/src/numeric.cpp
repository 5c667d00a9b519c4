#include "hyperdec/numeric.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>

#include "hyperdec/errors.hpp"

namespace hyperdec {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw Error(ErrorKind::InvalidArgument, "not a rational: '" + text + "'");
    }
    Integer d(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + text + "'");
    out = Rational(Integer(std::string(num), 10), d);
  } else {
    auto dot = s.find('.');
    auto whole = s.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)) || (dot != std::string_view::npos && frac.empty())) {
      throw Error(ErrorKind::InvalidArgument, "not a rational: '" + text + "'");
    }
    std::string digits = std::string(whole) + std::string(frac);
    out = Rational(Integer(digits, 10)) * pow10(-static_cast<long>(frac.size()));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Integer floor(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

bool is_terminating_decimal(const Rational& q) {
  Integer d = q.get_den();
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) d /= 2;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) d /= 5;
  return d == 1;
}

Rational pow10(long exponent) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0) return Rational(p);
  return Rational(Integer(1), p);
}

mpfr_prec_t bits_for_digits(unsigned digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 8;
}

// ---------------------------------------------------------------------------
// BigFloat

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const Rational& value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(long value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::pi(mpfr_prec_t bits) {
  BigFloat out(bits);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::euler_e(mpfr_prec_t bits) {
  BigFloat out(1L, bits);
  mpfr_exp(out.value_, out.value_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::parse(const std::string& text, mpfr_prec_t bits) {
  BigFloat out(bits);
  if (mpfr_set_str(out.value_, text.c_str(), 10, MPFR_RNDN) != 0) {
    throw Error(ErrorKind::InvalidArgument, "not a decimal number: '" + text + "'");
  }
  return out;
}

int BigFloat::sign() const noexcept { return mpfr_sgn(value_); }

double BigFloat::to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }

Rational BigFloat::to_rational() const {
  if (is_zero()) return Rational(0);
  Integer mantissa;
  mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), value_);
  Rational out(mantissa);
  if (e >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  out.canonicalize();
  return out;
}

Integer BigFloat::floor() const {
  Integer out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDD);
  return out;
}

std::string BigFloat::to_string(unsigned digits) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Rg", static_cast<int>(digits), value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

std::string BigFloat::to_round_trip_string() const {
  if (is_zero()) return "0";
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, 0, value_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!digits.empty() && digits.front() == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  return sign + "0." + digits + "e" + std::to_string(static_cast<long>(e));
}

namespace {

mpfr_prec_t wider(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

BigFloat BigFloat::operator-() const {
  BigFloat out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat out(wider(a, b));
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat out(wider(a, b));
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat out(wider(a, b));
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat out(wider(a, b));
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

bool operator==(const BigFloat& a, const BigFloat& b) noexcept {
  return mpfr_equal_p(a.value_, b.value_) != 0;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) noexcept {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

#define HYPERDEC_UNARY_MPFR(name)                 \
  BigFloat name(const BigFloat& x) {              \
    BigFloat out(x.precision());                  \
    mpfr_##name(out.value_, x.value_, MPFR_RNDN); \
    return out;                                   \
  }

HYPERDEC_UNARY_MPFR(exp)
HYPERDEC_UNARY_MPFR(log)
HYPERDEC_UNARY_MPFR(sin)
HYPERDEC_UNARY_MPFR(cos)
HYPERDEC_UNARY_MPFR(sqrt)

#undef HYPERDEC_UNARY_MPFR

// ---------------------------------------------------------------------------
// Coefficient

const Rational& Coefficient::rational() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  throw Error(ErrorKind::InvalidArgument, "float coefficient where an exact one was required");
}

const BigFloat& Coefficient::real() const {
  if (const auto* f = std::get_if<BigFloat>(&value_)) return *f;
  throw Error(ErrorKind::InvalidArgument, "exact coefficient where a float was required");
}

BigFloat Coefficient::to_float(mpfr_prec_t bits) const {
  if (const auto* q = std::get_if<Rational>(&value_)) return BigFloat(*q, bits);
  return std::get<BigFloat>(value_);
}

Rational Coefficient::to_rational() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  return std::get<BigFloat>(value_).to_rational();
}

int Coefficient::sign() const noexcept {
  if (const auto* q = std::get_if<Rational>(&value_)) return sgn(*q);
  return std::get<BigFloat>(value_).sign();
}

bool Coefficient::is_integer() const noexcept {
  if (const auto* q = std::get_if<Rational>(&value_)) return q->get_den() == 1;
  return std::get<BigFloat>(value_).is_integer();
}

bool Coefficient::is_terminating_decimal() const {
  // Binary floats are dyadic rationals and always terminate in base 10.
  if (const auto* q = std::get_if<Rational>(&value_)) return hyperdec::is_terminating_decimal(*q);
  return true;
}

Integer Coefficient::floor() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return hyperdec::floor(*q);
  return std::get<BigFloat>(value_).floor();
}

double Coefficient::to_double() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return q->get_d();
  return std::get<BigFloat>(value_).to_double();
}

Coefficient Coefficient::pow(long exponent) const {
  if (exponent < 0) return Coefficient(Rational(1)) / pow(-exponent);
  Coefficient result = is_exact() ? Coefficient(Rational(1))
                                  : Coefficient(BigFloat(1L, real().precision()));
  Coefficient base = *this;
  auto e = static_cast<unsigned long>(exponent);
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

std::string Coefficient::to_string(unsigned float_digits) const {
  if (const auto* q = std::get_if<Rational>(&value_)) return hyperdec::to_string(*q);
  return std::get<BigFloat>(value_).to_string(float_digits);
}

Coefficient Coefficient::operator-() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return Coefficient(Rational(-*q));
  return Coefficient(-std::get<BigFloat>(value_));
}

namespace {

template <typename ExactOp, typename FloatOp>
Coefficient combine(const Coefficient& a, const Coefficient& b, ExactOp exact_op,
                    FloatOp float_op) {
  if (a.is_exact() && b.is_exact()) return Coefficient(exact_op(a.rational(), b.rational()));
  mpfr_prec_t bits = a.is_exact() ? b.real().precision()
                     : b.is_exact() ? a.real().precision()
                                    : std::max(a.real().precision(), b.real().precision());
  return Coefficient(float_op(a.to_float(bits), b.to_float(bits)));
}

}  // namespace

Coefficient operator+(const Coefficient& a, const Coefficient& b) {
  return combine(
      a, b, [](const Rational& x, const Rational& y) { return Rational(x + y); },
      [](const BigFloat& x, const BigFloat& y) { return x + y; });
}

Coefficient operator-(const Coefficient& a, const Coefficient& b) {
  return combine(
      a, b, [](const Rational& x, const Rational& y) { return Rational(x - y); },
      [](const BigFloat& x, const BigFloat& y) { return x - y; });
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
  return combine(
      a, b, [](const Rational& x, const Rational& y) { return Rational(x * y); },
      [](const BigFloat& x, const BigFloat& y) { return x * y; });
}

Coefficient operator/(const Coefficient& a, const Coefficient& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "coefficient division by zero");
  return combine(
      a, b, [](const Rational& x, const Rational& y) { return Rational(x / y); },
      [](const BigFloat& x, const BigFloat& y) { return x / y; });
}

bool operator==(const Coefficient& a, const Coefficient& b) {
  return (a <=> b) == std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const Coefficient& a, const Coefficient& b) {
  if (a.is_exact() && b.is_exact()) {
    int c = cmp(a.rational(), b.rational());
    return c < 0 ? std::partial_ordering::less
           : c > 0 ? std::partial_ordering::greater
                   : std::partial_ordering::equivalent;
  }
  // Compare exactly: every float is a dyadic rational.
  int c = cmp(a.to_rational(), b.to_rational());
  return c < 0 ? std::partial_ordering::less
         : c > 0 ? std::partial_ordering::greater
                 : std::partial_ordering::equivalent;
}

}  // namespace hyperdec
