#include "hyperdec/transfer.hpp"

#include <algorithm>

#include "hyperdec/errors.hpp"

namespace hyperdec {

namespace {

constexpr long kMaxPow10Offset = 100000;
constexpr unsigned long kMaxSummedNines = 1000;

HyperValue constant_of(const ContextPtr& ctx, const Coefficient& c) {
  return HyperValue::constant(ctx, ctx->coefficient(c));
}

bool is_perfect_square(const Rational& q) {
  return sgn(q) >= 0 && mpz_perfect_square_p(q.get_num_mpz_t()) != 0 &&
         mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

Rational exact_sqrt(const Rational& q) {
  Integer num, den;
  mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// v = k*H + j with integer k, j and nothing discarded.
std::optional<std::pair<long, long>> linear_in_omega(const HyperValue& v) {
  if (v.truncated()) return std::nullopt;
  long k = 0, j = 0;
  for (const Term& t : v.terms()) {
    if (!t.coeff.is_integer()) return std::nullopt;
    Rational c = t.coeff.to_rational();
    if (!c.get_num().fits_slong_p()) return std::nullopt;
    if (t.exponent == ExponentPair::omega()) {
      k = c.get_num().get_si();
    } else if (t.exponent.is_unit()) {
      j = c.get_num().get_si();
    } else {
      return std::nullopt;
    }
  }
  return std::make_pair(k, j);
}

bool within_tolerance(const Coefficient& a, const Coefficient& b, const NumContext& ctx) {
  if (ctx.exact()) return a == b;
  Coefficient tolerance(pow10(-static_cast<long>(ctx.precision() / 2)));
  return (a - b).abs() <= tolerance;
}

/// Sum_k f^(k)(s)/k! * delta^k for an elementary function about s = st(v).
class TaylorExpansion {
 public:
  TaylorExpansion(NodeKind kind, ContextPtr ctx) : kind_(kind), ctx_(std::move(ctx)) {}

  HyperValue operator()(const HyperValue& v) const {
    const std::string name(function_name(kind_));
    for (const Term& t : v.terms()) {
      if (t.exponent.is_infinite()) {
        throw Error(ErrorKind::InfiniteArgument,
                    name + " of the infinite value " + v.to_string() + " is not representable");
      }
    }
    if (v.horizon() && !v.horizon()->is_infinitesimal()) {
      throw Error(ErrorKind::TruncationAmbiguous,
                  "standard part of the argument of " + name + " was discarded");
    }
    const Coefficient s = v.coefficient_of(ExponentPair::unit());
    const HyperValue delta = v.infinitesimal_part();
    check_domain(s, delta);
    if (ctx_->exact()) check_exact(s);

    const Coefficient s_inv = s.is_zero() ? Coefficient(0L) : Coefficient(1L) / s;
    Base base = base_values(s);
    HyperValue result = constant_of(ctx_, coefficient(0, base, s_inv));
    if (delta.is_zero()) return result;

    const ExponentPair lead = delta.leading().exponent;
    const std::size_t k_max = ctx_->max_terms();
    const long max_order = static_cast<long>(8 * k_max + 8);
    HyperValue power = HyperValue::constant(ctx_, Rational(1));
    ExponentPair tail = lead;
    for (long k = 1; k <= max_order; ++k) {
      power = power * delta;
      result = result + power.scaled(ctx_->coefficient(coefficient(k, base, s_inv)));
      tail = lead.scaled(k + 1);
      auto known = std::count_if(result.terms().begin(), result.terms().end(),
                                 [&](const Term& t) { return t.exponent > tail; });
      if (static_cast<std::size_t>(known) >= k_max || power.is_zero()) break;
    }
    std::optional<ExponentPair> horizon = tail;
    if (result.horizon() && *result.horizon() > tail) horizon = result.horizon();
    return HyperValue::from_terms(ctx_, std::vector<Term>(result.terms().begin(), result.terms().end()),
                                  horizon);
  }

 private:
  // f(s) and, for sin/cos, the companion value.
  struct Base {
    Coefficient value;
    Coefficient other;
  };

  void check_domain(const Coefficient& s, const HyperValue& delta) const {
    if (kind_ == NodeKind::Log && s.sign() <= 0) {
      throw Error(ErrorKind::DomainError, "log needs a positive standard part, got " + s.to_string());
    }
    if (kind_ == NodeKind::Sqrt) {
      if (s.sign() < 0) {
        throw Error(ErrorKind::DomainError, "sqrt of a negative value " + s.to_string());
      }
      if (s.is_zero() && !delta.is_zero()) {
        throw Error(ErrorKind::DomainError, "sqrt has no expansion about 0");
      }
    }
  }

  void check_exact(const Coefficient& s) const {
    const Rational& q = s.rational();
    bool rational_series = false;
    switch (kind_) {
      case NodeKind::Exp:
      case NodeKind::Sin:
      case NodeKind::Cos: rational_series = sgn(q) == 0; break;
      case NodeKind::Log: rational_series = q == 1; break;
      case NodeKind::Sqrt: rational_series = is_perfect_square(q); break;
      default: break;
    }
    if (!rational_series) {
      throw Error(ErrorKind::ExactTranscendental,
                  std::string(function_name(kind_)) + " at " + s.to_string() +
                      " has no exact rational expansion; use float mode");
    }
  }

  Base base_values(const Coefficient& s) const {
    if (ctx_->exact()) {
      const Rational& q = s.rational();
      switch (kind_) {
        case NodeKind::Exp: return {Coefficient(1L), Coefficient(0L)};
        case NodeKind::Sin: return {Coefficient(0L), Coefficient(1L)};
        case NodeKind::Cos: return {Coefficient(1L), Coefficient(0L)};
        case NodeKind::Log: return {Coefficient(0L), Coefficient(0L)};
        default: return {Coefficient(exact_sqrt(q)), Coefficient(0L)};
      }
    }
    const BigFloat x = s.to_float(ctx_->bits());
    switch (kind_) {
      case NodeKind::Exp: return {Coefficient(exp(x)), Coefficient(0L)};
      case NodeKind::Sin: return {Coefficient(sin(x)), Coefficient(cos(x))};
      case NodeKind::Cos: return {Coefficient(cos(x)), Coefficient(sin(x))};
      case NodeKind::Log: return {Coefficient(log(x)), Coefficient(0L)};
      default: return {Coefficient(sqrt(x)), Coefficient(0L)};
    }
  }

  Coefficient coefficient(long k, const Base& base, const Coefficient& s_inv) const {
    Integer factorial = 1;
    for (long i = 2; i <= k; ++i) factorial *= i;
    const Coefficient inv_factorial(Rational(Integer(1), factorial));
    switch (kind_) {
      case NodeKind::Exp: return base.value * inv_factorial;
      case NodeKind::Sin:
      case NodeKind::Cos: {
        // sin: sin, cos, -sin, -cos;  cos: cos, -sin, -cos, sin
        const long phase = k % 4;
        Coefficient d = (phase % 2 == 0) ? base.value : base.other;
        bool negate = kind_ == NodeKind::Sin ? phase >= 2 : (phase == 1 || phase == 2);
        return (negate ? -d : d) * inv_factorial;
      }
      case NodeKind::Log: {
        if (k == 0) return base.value;
        Rational sign_over_k(k % 2 == 1 ? 1 : -1, k);
        return Coefficient(sign_over_k) * s_inv.pow(k);
      }
      default: {
        // binom(1/2, k) * sqrt(s) * s^-k
        Rational binom(1);
        for (long i = 0; i < k; ++i) binom *= Rational(1, 2) - Rational(i);
        binom /= Rational(factorial);
        return Coefficient(binom) * base.value * s_inv.pow(k);
      }
    }
  }

  NodeKind kind_;
  ContextPtr ctx_;
};

class Evaluator {
 public:
  Evaluator(ContextPtr ctx, const HyperValue* point) : ctx_(std::move(ctx)), point_(point) {}

  HyperValue operator()(const Expr& e) const {
    try {
      return eval(e);
    } catch (const Error& err) {
      if (err.has_span() || e.span().end == 0) throw;
      throw Error(err.kind(), err.message(), e.span());
    }
  }

 private:
  HyperValue eval(const Expr& e) const {
    const auto& self = *this;
    switch (e.kind()) {
      case NodeKind::Variable:
        if (point_ == nullptr) {
          throw Error(ErrorKind::UnboundVariable, "variable '" + e.name() + "' has no value");
        }
        return *point_;
      case NodeKind::Constant: return HyperValue::constant(ctx_, e.value());
      case NodeKind::Pi:
      case NodeKind::Euler: {
        const char* name = e.kind() == NodeKind::Pi ? "pi" : "e";
        if (ctx_->exact()) {
          throw Error(ErrorKind::ExactTranscendental,
                      std::string(name) + " is not rational; use float mode");
        }
        BigFloat v = e.kind() == NodeKind::Pi ? BigFloat::pi(ctx_->bits())
                                               : BigFloat::euler_e(ctx_->bits());
        return HyperValue::constant(ctx_, Coefficient(std::move(v)));
      }
      case NodeKind::Omega: return HyperValue::omega(ctx_);
      case NodeKind::Tau: return HyperValue::tau(ctx_);
      case NodeKind::Neg: return -self(e.arg(0));
      case NodeKind::Add: return self(e.arg(0)) + self(e.arg(1));
      case NodeKind::Sub: return self(e.arg(0)) - self(e.arg(1));
      case NodeKind::Mul: return self(e.arg(0)) * self(e.arg(1));
      case NodeKind::Div: return self(e.arg(0)) / self(e.arg(1));
      case NodeKind::Pow: return self(e.arg(0)).pow(e.exponent());
      case NodeKind::Pow10: return pow10_of(self(e.arg(0)));
      case NodeKind::Exp:
      case NodeKind::Log:
      case NodeKind::Sin:
      case NodeKind::Cos:
      case NodeKind::Sqrt: return TaylorExpansion(e.kind(), ctx_)(self(e.arg(0)));
      case NodeKind::Compose: {
        HyperValue inner = self(e.arg(1));
        return Evaluator(ctx_, &inner)(e.arg(0));
      }
      case NodeKind::Abs: {
        HyperValue v = self(e.arg(0));
        return classify(v).sign < 0 ? -v : v;
      }
      case NodeKind::Floor: return floor(self(e.arg(0)));
      case NodeKind::StandardPart: return constant_of(ctx_, standard_part(self(e.arg(0))));
      case NodeKind::Nines: return nines_of(self(e.arg(0)));
      case NodeKind::Derivative: {
        if (point_ == nullptr) {
          throw Error(ErrorKind::UnboundVariable, "d/d" + e.name() + " needs a point");
        }
        const Coefficient x0 = standard_point(*point_, "derivative");
        DerivativeResult d = derivative(e.arg(0), x0, ProbeSet::defaults(ctx_));
        if (!d.exists()) {
          throw Error(ErrorKind::NoLimit, "difference quotients at " + x0.to_string() +
                                              " depend on the infinitesimal");
        }
        return constant_of(ctx_, *d.value);
      }
      case NodeKind::LimitSeq: return limit_value(limit_seq(e.arg(0), ctx_));
      case NodeKind::LimitFun: {
        const Coefficient a = standard_point(self(e.arg(1)), "limit point");
        return limit_value(limit_fun(e.arg(0), a, ProbeSet::defaults(ctx_)));
      }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown expression node");
  }

  HyperValue pow10_of(const HyperValue& v) const {
    auto lin = linear_in_omega(v);
    if (!lin) {
      throw Error(ErrorKind::DomainError,
                  "10^(" + v.to_string() + ") is outside the model; exponents must be k*H + j");
    }
    auto [k, j] = *lin;
    if (std::labs(j) > kMaxPow10Offset) {
      throw Error(ErrorKind::DomainError, "10^" + std::to_string(j) + " is too large to expand");
    }
    // 10^(k*H + j) = 10^j * tau^-k
    return HyperValue::monomial(ctx_, ctx_->coefficient(pow10(j)),
                                ExponentPair(Rational(-k), Rational(0)));
  }

  HyperValue nines_of(const HyperValue& v) const {
    auto lin = linear_in_omega(v);
    if (lin && lin->first == 0 && lin->second >= 0) {
      auto n = static_cast<unsigned long>(lin->second);
      return n <= kMaxSummedNines ? nines(ctx_, n) : nines_at(ctx_, 0, lin->second);
    }
    if (lin && lin->first > 0) return nines_at(ctx_, lin->first, lin->second);
    throw Error(ErrorKind::DomainError,
                "nines needs a count n >= 0 or k*H + j, got " + v.to_string());
  }

  static Coefficient standard_point(const HyperValue& v, const char* what) {
    if (!v.is_standard()) {
      throw Error(ErrorKind::DomainError,
                  std::string(what) + " must be a standard real, got " + v.to_string());
    }
    return standard_part(v);
  }

  HyperValue limit_value(const LimitResult& r) const {
    if (r.kind == LimitKind::Converges) return constant_of(ctx_, r.limit);
    std::string why = r.kind == LimitKind::Diverges
                          ? std::string("diverges to ") + (r.sign > 0 ? "+" : "-") + "infinity"
                          : r.reason;
    throw Error(ErrorKind::NoLimit, "no limit: " + why);
  }

  ContextPtr ctx_;
  const HyperValue* point_;
};

std::optional<std::string> continuity_check(const Expr& f, const HyperValue& x,
                                            const ProbeSet& probes,
                                            std::optional<ContinuityWitness>& witness) {
  HyperValue fx = HyperValue::zero(x.context_ptr());
  try {
    fx = eval_star(f, x);
  } catch (const Error& err) {
    return "f(" + x.to_string() + "): " + err.what();
  }
  std::optional<std::string> note;
  for (const HyperValue& eps : probes.infinitesimals) {
    for (const HyperValue& y : {x + eps, x - eps}) {
      try {
        HyperValue fy = eval_star(f, y);
        if (!approx_eq(fy, fx)) {
          witness = ContinuityWitness{x, y, fy - fx};
          return std::nullopt;
        }
      } catch (const Error& err) {
        if (!note) note = "f(" + y.to_string() + "): " + err.what();
      }
    }
  }
  return note;
}

}  // namespace

ProbeSet ProbeSet::defaults(ContextPtr ctx) {
  ProbeSet p;
  p.context = ctx;
  const HyperValue omega = HyperValue::omega(ctx);
  const HyperValue tau = HyperValue::tau(ctx);
  p.infinitesimals = {tau, tau.scaled(Coefficient(2L)), inv(omega), inv(omega * omega)};
  p.infinite_points = {omega, omega * omega, inv(tau)};
  p.standard_points = {Rational(-1), Rational(0), Rational(1, 2), Rational(1), Rational(2)};
  return p;
}

void ProbeSet::validate() const {
  if (!context) throw Error(ErrorKind::InvalidArgument, "probe set has no context");
  for (const HyperValue& e : infinitesimals) {
    if (e.is_zero() || classify(e).magnitude != Magnitude::Infinitesimal) {
      throw Error(ErrorKind::InvalidArgument, e.to_string() + " is not a nonzero infinitesimal");
    }
  }
  for (const HyperValue& p : infinite_points) {
    if (classify(p).magnitude != Magnitude::Infinite) {
      throw Error(ErrorKind::InvalidArgument, p.to_string() + " is not infinite");
    }
  }
}

HyperValue eval_star(const Expr& f, const HyperValue& x) {
  return Evaluator(x.context_ptr(), &x)(f);
}

HyperValue evaluate(const Expr& e, ContextPtr ctx) { return Evaluator(std::move(ctx), nullptr)(e); }

DerivativeResult derivative(const Expr& f, const Coefficient& x0, const ProbeSet& probes) {
  probes.validate();
  const ContextPtr& ctx = probes.context;
  const HyperValue x = HyperValue::constant(ctx, ctx->coefficient(x0));
  const HyperValue fx = eval_star(f, x);
  DerivativeResult result;
  for (const HyperValue& probe : probes.infinitesimals) {
    for (const HyperValue& eps : {probe, -probe}) {
      HyperValue quotient = (eval_star(f, x + eps) - fx) / eps;
      result.quotients.push_back(standard_part(quotient));
    }
  }
  for (std::size_t i = 1; i < result.quotients.size(); ++i) {
    if (!within_tolerance(result.quotients[0], result.quotients[i], *ctx)) {
      result.disagreement = std::make_pair(std::size_t{0}, i);
      return result;
    }
  }
  if (!result.quotients.empty()) result.value = result.quotients.front();
  return result;
}

std::string to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::Converges: return "Converges";
    case LimitKind::Diverges: return "Diverges";
    case LimitKind::Indeterminate: return "Indeterminate";
    case LimitKind::NoLimit: return "NoLimit";
  }
  return "?";
}

namespace {

LimitResult sequence_value_at(const Expr& u, const HyperValue& n) {
  LimitResult r;
  try {
    HyperValue v = eval_star(u, n);
    r.internal = v;
    Classification c = classify(v);
    if (c.magnitude == Magnitude::Infinite) {
      r.kind = LimitKind::Diverges;
      r.sign = c.sign;
    } else {
      r.kind = LimitKind::Converges;
      r.limit = standard_part(v);
    }
  } catch (const Error& err) {
    r.kind = LimitKind::Indeterminate;
    r.reason = err.what();
  }
  return r;
}

bool same_outcome(const LimitResult& a, const LimitResult& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == LimitKind::Converges) return a.limit == b.limit;
  if (a.kind == LimitKind::Diverges) return a.sign == b.sign;
  return true;
}

}  // namespace

LimitResult limit_seq(const Expr& u, ContextPtr ctx) {
  const HyperValue omega = HyperValue::omega(ctx);
  LimitResult r = sequence_value_at(u, omega);
  LimitResult second = sequence_value_at(u, omega * omega);
  if (second.kind != LimitKind::Indeterminate) {
    r.internal_squared = second.internal;
    r.squared_disagrees = !same_outcome(r, second);
  }
  return r;
}

LimitResult limit_fun(const Expr& f, const Coefficient& a, const ProbeSet& probes) {
  probes.validate();
  const ContextPtr& ctx = probes.context;
  const HyperValue x = HyperValue::constant(ctx, ctx->coefficient(a));
  LimitResult r;
  std::optional<Coefficient> common;
  for (const HyperValue& eps : probes.infinitesimals) {
    for (const HyperValue& y : {x + eps, x - eps}) {
      HyperValue v = eval_star(f, y);
      if (classify(v).magnitude == Magnitude::Infinite) {
        r.kind = LimitKind::NoLimit;
        r.internal = v;
        r.reason = "f(" + y.to_string() + ") = " + v.to_string() + " is infinite";
        return r;
      }
      Coefficient s = standard_part(v);
      if (!common) {
        common = s;
        r.internal = v;
      } else if (!within_tolerance(*common, s, *ctx)) {
        r.kind = LimitKind::NoLimit;
        r.reason = "st f(" + y.to_string() + ") = " + s.to_string() + " differs from " +
                   common->to_string();
        return r;
      }
    }
  }
  r.kind = LimitKind::Converges;
  if (common) r.limit = *common;
  return r;
}

std::string to_string(ProbeVerdict verdict) {
  switch (verdict) {
    case ProbeVerdict::Pass: return "Pass";
    case ProbeVerdict::PassAllProbes: return "PassAllProbes";
    case ProbeVerdict::Fail: return "Fail";
    case ProbeVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

ContinuityResult continuity_probe(const Expr& f, const HyperValue& x, const ProbeSet& probes) {
  probes.validate();
  ContinuityResult r;
  auto note = continuity_check(f, x, probes, r.witness);
  if (r.witness) {
    r.verdict = ProbeVerdict::Fail;
  } else if (note) {
    r.verdict = ProbeVerdict::Inconclusive;
    r.notes.push_back(*note);
  } else {
    r.verdict = ProbeVerdict::Pass;
  }
  return r;
}

ContinuityResult uniform_continuity_probe(const Expr& f, const ProbeSet& probes) {
  probes.validate();
  std::vector<HyperValue> points;
  for (const Rational& q : probes.standard_points) {
    points.push_back(HyperValue::constant(probes.context, q));
  }
  points.insert(points.end(), probes.infinite_points.begin(), probes.infinite_points.end());

  ContinuityResult r;
  for (const HyperValue& x : points) {
    auto note = continuity_check(f, x, probes, r.witness);
    if (r.witness) {
      r.verdict = ProbeVerdict::Fail;
      return r;
    }
    if (note) r.notes.push_back(*note);
  }
  r.verdict = r.notes.empty() ? ProbeVerdict::PassAllProbes : ProbeVerdict::Inconclusive;
  if (r.verdict == ProbeVerdict::PassAllProbes) {
    r.notes.push_back("passing every probe is evidence of uniform continuity, not a proof");
  }
  return r;
}

EvtResult evt_demo(const Expr& f, unsigned long n, int levels) {
  if (n == 0 || n > kEvtMaxPoints) {
    throw Error(ErrorKind::InvalidArgument,
                "n must be between 1 and " + std::to_string(kEvtMaxPoints));
  }
  const ContextPtr ctx = exact_context();
  auto scan = [&](unsigned long m) {
    EvtRow row{m, 0, Rational(0), Rational(0)};
    for (unsigned long i = 0; i <= m; ++i) {
      Rational x(static_cast<long>(i), static_cast<long>(m));
      x.canonicalize();
      HyperValue v = eval_star(f, HyperValue::constant(ctx, x));
      if (!v.is_standard()) {
        throw Error(ErrorKind::DomainError, "f(" + to_string(x) + ") is not a standard real");
      }
      Rational value = standard_part(v).rational();
      if (i == 0 || value > row.value) row = EvtRow{m, i, x, value};
    }
    return row;
  };

  EvtResult result{};
  unsigned long m = n;
  for (int level = 0; level < std::max(levels, 1) && m <= kEvtMaxPoints; ++level, m *= 2) {
    result.refinement.push_back(scan(m));
  }
  const EvtRow& first = result.refinement.front();
  result.index = first.index;
  result.point = first.point;
  result.value = first.value;
  return result;
}

}  // namespace hyperdec
