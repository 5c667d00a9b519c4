#include "hyperdec/hyper_value.hpp"

#include <algorithm>
#include <utility>

#include "hyperdec/errors.hpp"

namespace hyperdec {

namespace {

void require_same_context(const HyperValue& x, const HyperValue& y) {
  if (x.context_ptr() != y.context_ptr() && !(x.context() == y.context())) {
    throw Error(ErrorKind::ContextMismatch, "operands belong to different contexts");
  }
}

std::optional<ExponentPair> larger(const std::optional<ExponentPair>& x,
                                   const std::optional<ExponentPair>& y) {
  if (!x) return y;
  if (!y) return x;
  return *x > *y ? x : y;
}

// Sort descending, merge equal monomials, drop zeros, cut at the horizon and
// at K terms.
void normalize(std::vector<Term>& terms, std::optional<ExponentPair>& horizon, std::size_t k) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& l, const Term& r) { return l.exponent > r.exponent; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().exponent == t.exponent) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [&](const Term& t) {
    return t.coeff.is_zero() || (horizon && t.exponent <= *horizon);
  });
  if (merged.size() > k) {
    horizon = merged[k].exponent;
    merged.resize(k);
  }
  terms = std::move(merged);
}

std::string exponent_text(const Rational& q) {
  if (sgn(q) >= 0 && is_integer(q)) return to_string(q);
  return "(" + to_string(q) + ")";
}

std::string monomial_text(const ExponentPair& e) {
  std::string out;
  if (sgn(e.b) != 0) out += e.b == 1 ? std::string("eps") : "eps^" + exponent_text(e.b);
  if (sgn(e.a) != 0) {
    if (!out.empty()) out += "*";
    out += e.a == 1 ? std::string("H") : "H^" + exponent_text(e.a);
  }
  return out;
}

}  // namespace

HyperValue::HyperValue(ContextPtr ctx, std::vector<Term> terms, std::optional<ExponentPair> horizon)
    : ctx_(std::move(ctx)), terms_(std::move(terms)), horizon_(std::move(horizon)) {}

HyperValue HyperValue::zero(ContextPtr ctx) { return HyperValue(std::move(ctx), {}, std::nullopt); }

HyperValue HyperValue::constant(ContextPtr ctx, const Rational& value) {
  auto c = ctx->coefficient(value);
  return monomial(std::move(ctx), c, ExponentPair::unit());
}

HyperValue HyperValue::constant(ContextPtr ctx, const Coefficient& value) {
  auto c = ctx->coefficient(value);
  return monomial(std::move(ctx), c, ExponentPair::unit());
}

HyperValue HyperValue::monomial(ContextPtr ctx, const Coefficient& coeff, ExponentPair exponent) {
  if (coeff.is_zero()) return zero(std::move(ctx));
  auto c = ctx->coefficient(coeff);
  return HyperValue(std::move(ctx), {Term{std::move(c), std::move(exponent)}}, std::nullopt);
}

HyperValue HyperValue::omega(ContextPtr ctx) {
  return monomial(std::move(ctx), Coefficient(1L), ExponentPair::omega());
}

HyperValue HyperValue::tau(ContextPtr ctx) {
  return monomial(std::move(ctx), Coefficient(1L), ExponentPair::tau());
}

HyperValue HyperValue::from_terms(ContextPtr ctx, std::vector<Term> terms,
                                  std::optional<ExponentPair> horizon) {
  for (auto& t : terms) t.coeff = ctx->coefficient(t.coeff);
  normalize(terms, horizon, ctx->max_terms());
  return HyperValue(std::move(ctx), std::move(terms), std::move(horizon));
}

bool HyperValue::is_standard() const noexcept {
  return !horizon_ && (terms_.empty() || (terms_.size() == 1 && terms_.front().exponent.is_unit()));
}

Coefficient HyperValue::coefficient_of(const ExponentPair& exponent) const {
  if (horizon_ && exponent <= *horizon_) {
    throw Error(ErrorKind::TruncationAmbiguous,
                "coefficient of " + exponent.to_string() + " lies below the truncation horizon");
  }
  for (const auto& t : terms_) {
    if (t.exponent == exponent) return t.coeff;
  }
  return ctx_->coefficient(Rational(0));
}

const Term& HyperValue::leading() const {
  if (terms_.empty()) {
    if (horizon_) throw Error(ErrorKind::TruncationAmbiguous, "no known terms above the horizon");
    throw Error(ErrorKind::InvalidArgument, "zero has no leading term");
  }
  return terms_.front();
}

HyperValue HyperValue::infinite_part() const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exponent.is_infinite()) out.push_back(t);
  }
  return HyperValue(ctx_, std::move(out), std::nullopt);
}

HyperValue HyperValue::infinitesimal_part() const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exponent.is_infinitesimal()) out.push_back(t);
  }
  return HyperValue(ctx_, std::move(out), horizon_);
}

HyperValue HyperValue::operator-() const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff = -t.coeff;
  return HyperValue(ctx_, std::move(out), horizon_);
}

HyperValue operator+(const HyperValue& x, const HyperValue& y) {
  require_same_context(x, y);
  std::vector<Term> terms(x.terms_.begin(), x.terms_.end());
  terms.insert(terms.end(), y.terms_.begin(), y.terms_.end());
  auto horizon = larger(x.horizon_, y.horizon_);
  normalize(terms, horizon, x.ctx_->max_terms());
  return HyperValue(x.ctx_, std::move(terms), std::move(horizon));
}

HyperValue operator-(const HyperValue& x, const HyperValue& y) { return x + (-y); }

HyperValue operator*(const HyperValue& x, const HyperValue& y) {
  require_same_context(x, y);
  // (X + Rx)(Y + Ry) = XY + X*Ry + Y*Rx + Rx*Ry with Rx <= hx and Ry <= hy.
  std::optional<ExponentPair> horizon;
  if (y.horizon_ && !x.terms_.empty()) horizon = larger(horizon, x.terms_.front().exponent + *y.horizon_);
  if (x.horizon_ && !y.terms_.empty()) horizon = larger(horizon, y.terms_.front().exponent + *x.horizon_);
  if (x.horizon_ && y.horizon_) horizon = larger(horizon, *x.horizon_ + *y.horizon_);

  std::vector<Term> terms;
  terms.reserve(x.terms_.size() * y.terms_.size());
  for (const auto& a : x.terms_) {
    for (const auto& b : y.terms_) {
      ExponentPair e = a.exponent + b.exponent;
      if (horizon && e <= *horizon) continue;
      terms.push_back(Term{a.coeff * b.coeff, std::move(e)});
    }
  }
  normalize(terms, horizon, x.ctx_->max_terms());
  return HyperValue(x.ctx_, std::move(terms), std::move(horizon));
}

HyperValue operator/(const HyperValue& x, const HyperValue& y) { return x * y.inverse(); }

HyperValue HyperValue::scaled(const Coefficient& factor) const {
  return *this * constant(ctx_, factor);
}

HyperValue HyperValue::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  const Term& lead = leading();
  const Coefficient lead_inv = Coefficient(1L) / lead.coeff;
  const ExponentPair lead_exp_inv = -lead.exponent;
  const HyperValue lead_inverse(ctx_, {Term{ctx_->coefficient(lead_inv), lead_exp_inv}}, std::nullopt);

  // y = c*mu*(1 + r) with r infinitesimal; 1/y = (c*mu)^-1 * sum (-r)^k.
  HyperValue r = *this * lead_inverse - constant(ctx_, Rational(1));
  if (r.is_zero()) return lead_inverse;

  const HyperValue minus_r = -r;
  HyperValue sum = constant(ctx_, Rational(1));
  HyperValue power = sum;
  // r's known terms (or its horizon) bound every (-r)^k by rho^k.
  const ExponentPair rho = r.terms_.empty() ? *r.horizon_ : r.terms_.front().exponent;
  const std::size_t k_max = ctx_->max_terms();
  const long max_order = static_cast<long>(8 * k_max + 8);
  ExponentPair tail = rho;
  for (long order = 1; order <= max_order; ++order) {
    power = power * minus_r;
    sum = sum + power;
    tail = rho.scaled(order + 1);
    auto known = std::count_if(sum.terms_.begin(), sum.terms_.end(),
                               [&](const Term& t) { return t.exponent > tail; });
    if (static_cast<std::size_t>(known) >= k_max || power.terms_.empty()) break;
  }
  std::vector<Term> terms = sum.terms_;
  auto horizon = larger(sum.horizon_, tail);
  normalize(terms, horizon, k_max);
  return HyperValue(ctx_, std::move(terms), std::move(horizon)) * lead_inverse;
}

HyperValue HyperValue::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  HyperValue result = constant(ctx_, Rational(1));
  HyperValue base = *this;
  auto e = static_cast<unsigned long>(exponent);
  while (e != 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

std::string HyperValue::to_string() const {
  const unsigned digits = ctx_->precision();
  std::string out;
  for (const auto& t : terms_) {
    const bool negative = t.coeff.sign() < 0;
    const Coefficient magnitude = t.coeff.abs();
    std::string body;
    if (t.exponent.is_unit()) {
      body = magnitude.to_string(digits);
    } else if (magnitude == Coefficient(1L)) {
      body = monomial_text(t.exponent);
    } else {
      body = magnitude.to_string(digits) + "*" + monomial_text(t.exponent);
    }
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  if (horizon_) {
    std::string mono = horizon_->is_unit() ? std::string("1") : monomial_text(*horizon_);
    out += out.empty() ? "O(" + mono + ")" : " + O(" + mono + ")";
  }
  return out.empty() ? "0" : out;
}

bool operator==(const HyperValue& x, const HyperValue& y) {
  if (x.horizon_ != y.horizon_ || x.terms_.size() != y.terms_.size()) return false;
  for (std::size_t i = 0; i < x.terms_.size(); ++i) {
    if (x.terms_[i].exponent != y.terms_[i].exponent || !(x.terms_[i].coeff == y.terms_[i].coeff)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

HyperValue add(const HyperValue& x, const HyperValue& y) { return x + y; }
HyperValue sub(const HyperValue& x, const HyperValue& y) { return x - y; }
HyperValue neg(const HyperValue& x) { return -x; }
HyperValue mul(const HyperValue& x, const HyperValue& y) { return x * y; }
HyperValue inv(const HyperValue& y) { return y.inverse(); }
HyperValue div(const HyperValue& x, const HyperValue& y) { return x / y; }

std::strong_ordering compare(const HyperValue& x, const HyperValue& y) {
  const HyperValue d = x - y;
  if (d.terms().empty()) {
    if (d.truncated()) {
      throw Error(ErrorKind::TruncationAmbiguous,
                  "operands agree on every known term; equality cannot be certified");
    }
    return std::strong_ordering::equal;
  }
  return d.terms().front().coeff.sign() < 0 ? std::strong_ordering::less
                                            : std::strong_ordering::greater;
}

Coefficient standard_part(const HyperValue& x) {
  for (const auto& t : x.terms()) {
    if (t.exponent.is_infinite()) {
      throw Error(ErrorKind::NotFinite, "standard part of an infinite value " + x.to_string());
    }
  }
  return x.coefficient_of(ExponentPair::unit());
}

bool approx_eq(const HyperValue& x, const HyperValue& y) {
  const HyperValue d = x - y;
  for (const auto& t : d.terms()) {
    if (!t.exponent.is_infinitesimal()) return false;
  }
  if (d.horizon() && !d.horizon()->is_infinitesimal()) {
    throw Error(ErrorKind::TruncationAmbiguous,
                "difference is unknown at appreciable scale: " + d.to_string());
  }
  return true;
}

Classification classify(const HyperValue& x) {
  if (x.terms().empty()) {
    if (x.truncated()) {
      throw Error(ErrorKind::TruncationAmbiguous, "value has no known terms: " + x.to_string());
    }
    return {Magnitude::Infinitesimal, 0};
  }
  const Term& lead = x.terms().front();
  return {lead.exponent.magnitude(), lead.coeff.sign()};
}

std::string to_string(Magnitude magnitude) {
  switch (magnitude) {
    case Magnitude::Infinitesimal: return "infinitesimal";
    case Magnitude::Appreciable: return "finite-appreciable";
    case Magnitude::Infinite: return "infinite";
  }
  return "unknown";
}

std::optional<Term> floor_obstruction(const HyperValue& x) {
  for (const auto& t : x.terms()) {
    if (!t.exponent.is_infinite()) continue;
    const auto& [b, a] = t.exponent;
    const bool integral_monomial = is_integer(b) && is_integer(a) && sgn(b) <= 0 && sgn(a) >= 0;
    if (!integral_monomial) return t;
    if (sgn(b) == 0 ? !t.coeff.is_integer() : !t.coeff.is_terminating_decimal()) return t;
  }
  return std::nullopt;
}

namespace {

void require_known_unit_scale(const HyperValue& x, const char* what) {
  if (x.horizon() && !x.horizon()->is_infinitesimal()) {
    throw Error(ErrorKind::TruncationAmbiguous,
                std::string(what) + " needs the standard part, which was truncated away");
  }
}

void require_floor_eligible(const HyperValue& x) {
  if (auto bad = floor_obstruction(x)) {
    throw Error(ErrorKind::FloorUndecidable,
                "integer part of " + bad->coeff.to_string() + " * monomial " +
                    bad->exponent.to_string() + " is not determined by the model");
  }
}

}  // namespace

HyperValue floor(const HyperValue& x) {
  require_known_unit_scale(x, "floor");
  require_floor_eligible(x);
  const ContextPtr& ctx = x.context_ptr();
  const Coefficient f = x.coefficient_of(ExponentPair::unit());
  Integer q;
  if (!f.is_integer()) {
    q = f.floor();
  } else {
    q = f.floor();
    const HyperValue delta = x.infinitesimal_part();
    if (!delta.terms().empty()) {
      if (delta.terms().front().coeff.sign() < 0) q -= 1;
    } else if (delta.truncated()) {
      throw Error(ErrorKind::TruncationAmbiguous,
                  "sign of the infinitesimal part of " + x.to_string() + " is unknown");
    }
  }
  return x.infinite_part() + HyperValue::constant(ctx, Rational(q));
}

Decomposition decompose(const HyperValue& x, DecomposeMode mode) {
  require_known_unit_scale(x, "decompose");
  const ContextPtr& ctx = x.context_ptr();
  const Coefficient f = x.coefficient_of(ExponentPair::unit());
  if (mode == DecomposeMode::Raw) {
    return {x.infinite_part(), f, x.infinitesimal_part()};
  }
  require_floor_eligible(x);
  const Coefficient whole = ctx->coefficient(Rational(f.floor()));
  return {x.infinite_part() + HyperValue::constant(ctx, whole), f - whole, x.infinitesimal_part()};
}

bool agrees(const HyperValue& x, const HyperValue& y) {
  require_same_context(x, y);
  const auto horizon = larger(x.horizon(), y.horizon());
  auto known = [&](const HyperValue& v) {
    std::vector<Term> out;
    for (const auto& t : v.terms()) {
      if (!horizon || t.exponent > *horizon) out.push_back(t);
    }
    return out;
  };
  const auto kx = known(x);
  const auto ky = known(y);
  if (kx.size() != ky.size()) return false;
  for (std::size_t i = 0; i < kx.size(); ++i) {
    if (kx[i].exponent != ky[i].exponent || !(kx[i].coeff == ky[i].coeff)) return false;
  }
  return true;
}

HyperValue nines(ContextPtr ctx, unsigned long n) {
  HyperValue sum = HyperValue::zero(ctx);
  for (unsigned long j = 1; j <= n; ++j) {
    sum += HyperValue::constant(ctx, Rational(9) * pow10(-static_cast<long>(j)));
  }
  return sum;
}

HyperValue nines_at(ContextPtr ctx, long omega_multiple, long offset) {
  // 1 - 10^-(k*omega + j) = 1 - 10^-j * tau^k
  auto one = HyperValue::constant(ctx, Rational(1));
  auto tail = HyperValue::monomial(ctx, Coefficient(pow10(-offset)),
                                   ExponentPair(Rational(omega_multiple), Rational(0)));
  return one - tail;
}

HyperValue nines_hyper(ContextPtr ctx) { return nines_at(std::move(ctx), 1, 0); }

}  // namespace hyperdec
