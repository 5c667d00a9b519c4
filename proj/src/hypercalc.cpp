#include "hyperdec/hypercalc.hpp"

#include <mpfr.h>

#include "hyperdec/errors.hpp"
#include "hyperdec/serialize.hpp"
#include "hyperdec/transfer.hpp"

namespace hyperdec {

namespace {

Coefficient value_at(const Expr& f, const Coefficient& x, const ContextPtr& ctx) {
  return standard_part(eval_star(f, HyperValue::constant(ctx, x)));
}

Coefficient slope_at(const Expr& f, const Coefficient& x, const ProbeSet& probes) {
  DerivativeResult d = derivative(f, x, probes);
  if (!d.exists()) {
    throw Error(ErrorKind::DomainError, "f is not differentiable at " + x.to_string());
  }
  return *d.value;
}

std::string nines_display(unsigned digits) { return "0." + std::string(digits, '9'); }

}  // namespace

std::string to_string(NewtonStop stop) {
  switch (stop) {
    case NewtonStop::StepsCompleted: return "StepsCompleted";
    case NewtonStop::ExactRoot: return "ExactRoot";
    case NewtonStop::PrecisionExhausted: return "PrecisionExhausted";
  }
  return "?";
}

std::string calculator_display(const Coefficient& v, unsigned digits) {
  Rational q = v.to_rational();
  const bool negative = sgn(q) < 0;
  if (negative) q = -q;
  Rational scaled = q * pow10(static_cast<long>(digits));
  Integer truncated = scaled.get_num() / scaled.get_den();
  Integer unit = pow10(static_cast<long>(digits)).get_num();
  Integer whole = truncated / unit;
  Integer frac = truncated % unit;
  std::string frac_text = frac.get_str();
  frac_text.insert(0, digits - frac_text.size(), '0');
  std::string out = (negative && truncated != 0 ? "-" : "") + whole.get_str();
  if (digits > 0) out += "." + frac_text;
  return out;
}

NewtonTrace newton_trace(const Expr& f, const Rational& x0, const NewtonOptions& options) {
  if (options.steps < 0) throw Error(ErrorKind::InvalidArgument, "steps must be >= 0");
  const ContextPtr ctx = make_context(NumContext::kDefaultTerms, options.mode, options.precision);
  const ProbeSet probes = ProbeSet::defaults(ctx);
  const Coefficient one(1L);
  const Coefficient limit = ctx->exact() ? Coefficient(0L)
                                         : Coefficient(pow10(2 - static_cast<long>(options.precision)));

  NewtonTrace trace{f, x0, ctx->precision(), options.display_digits, {}, {}, NewtonStop::StepsCompleted};
  Coefficient x = ctx->coefficient(x0);
  if (x >= one) {
    throw Error(ErrorKind::DomainError, "x0 must be below 1, got " + to_string(x0));
  }
  Coefficient fx = value_at(f, x, ctx);
  if (fx.sign() >= 0) {
    throw Error(ErrorKind::DomainError, "f(x0) must be negative, got " + fx.to_string());
  }
  auto push = [&](const Coefficient& v) {
    trace.iterates.push_back(v);
    trace.displays.push_back(calculator_display(v, options.display_digits));
  };
  push(x);

  for (long n = 0; n < options.steps; ++n) {
    if (fx.is_zero()) {
      trace.stop = NewtonStop::ExactRoot;
      return trace;
    }
    mpfr_clear_inexflag();
    Coefficient slope = slope_at(f, x, probes);
    if (slope.is_zero()) {
      throw Error(ErrorKind::DerivativeVanishes, "f'(x_" + std::to_string(n) + ") = 0");
    }
    Coefficient next = x + fx.abs() / slope;
    const bool rounded = mpfr_inexflag_p() != 0;
    if (!ctx->exact() && rounded && one - next < limit) {
      trace.stop = NewtonStop::PrecisionExhausted;
      return trace;
    }
    x = next;
    push(x);
    fx = value_at(f, x, ctx);
  }
  if (fx.is_zero()) trace.stop = NewtonStop::ExactRoot;
  return trace;
}

CheckReport theorem_check(const Expr& f, const Rational& x0, const NewtonOptions& options) {
  CheckReport report{newton_trace(f, x0, options), {}, {}, {}, {}};
  const auto& xs = report.trace.iterates;
  const Coefficient one(1L);
  const Coefficient tenth(Rational(1, 10));

  auto check = [&](long index, const Coefficient& margin, const char* assertion) {
    if (margin.sign() <= 0) report.violations.push_back({index, assertion, margin.is_zero()});
  };

  for (std::size_t i = 0; i < xs.size(); ++i) {
    CheckStep step;
    step.n = static_cast<long>(i);
    step.x = xs[i];
    step.margin_lt1 = one - xs[i];
    check(step.n, step.margin_lt1, "x_n < 1");
    if (i + 1 < xs.size()) {
      step.margin_monotone = xs[i + 1] - xs[i];
      // the Newton step is |f(x_n)|/f'(x_n), so the bound's margin is 1 - x_(n+1)
      step.mvt_margin = step.margin_lt1 - *step.margin_monotone;
      check(step.n, *step.margin_monotone, "x_(n+1) > x_n");
      check(step.n, *step.mvt_margin, "|f|/f' < 1 - x_n");
      const Coefficient gap = step.margin_lt1;
      if (gap.sign() > 0 && gap < tenth) {
        Coefficient c = (one - xs[i + 1]) / (gap * gap);
        if (!report.quadratic_constant || c > *report.quadratic_constant) report.quadratic_constant = c;
      }
    }
    report.steps.push_back(std::move(step));
  }

  const std::string all_nines = nines_display(report.trace.display_digits);
  const auto& shown = report.trace.displays;
  for (std::size_t i = shown.size(); i-- > 0 && shown[i] == all_nines;) {
    report.first_nines_index = static_cast<long>(i);
  }
  return report;
}

nlohmann::json to_json(const NewtonTrace& trace) {
  nlohmann::json doc;
  doc["f"] = to_string(trace.f);
  doc["x0"] = to_string(trace.x0);
  doc["precision"] = trace.precision;
  doc["display_digits"] = trace.display_digits;
  doc["stop"] = to_string(trace.stop);
  nlohmann::json iterates = nlohmann::json::array();
  for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
    iterates.push_back({{"n", i},
                        {"x_n", coefficient_to_json_string(trace.iterates[i])},
                        {"display", trace.displays[i]}});
  }
  doc["iterates"] = std::move(iterates);
  return doc;
}

nlohmann::json to_json(const CheckReport& report) {
  nlohmann::json doc = to_json(report.trace);
  nlohmann::json steps = nlohmann::json::array();
  for (const CheckStep& s : report.steps) {
    nlohmann::json step{{"n", s.n},
                        {"x_n", coefficient_to_json_string(s.x)},
                        {"margin_lt1", coefficient_to_json_string(s.margin_lt1)}};
    step["margin_monotone"] =
        s.margin_monotone ? nlohmann::json(coefficient_to_json_string(*s.margin_monotone)) : nullptr;
    step["mvt_margin"] = s.mvt_margin ? nlohmann::json(coefficient_to_json_string(*s.mvt_margin)) : nullptr;
    steps.push_back(std::move(step));
  }
  doc["steps"] = std::move(steps);
  nlohmann::json violations = nlohmann::json::array();
  for (const CheckViolation& v : report.violations) {
    violations.push_back({{"index", v.index}, {"assertion", v.assertion}, {"boundary", v.boundary}});
  }
  doc["violations"] = std::move(violations);
  doc["ok"] = report.ok();
  doc["quadratic_constant"] = report.quadratic_constant
                                  ? nlohmann::json(coefficient_to_json_string(*report.quadratic_constant))
                                  : nullptr;
  doc["first_nines_index"] = report.first_nines_index ? nlohmann::json(*report.first_nines_index) : nullptr;
  return doc;
}

}  // namespace hyperdec
