#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hyperdec/context.hpp"
#include "hyperdec/expr.hpp"

namespace hyperdec {

struct NewtonOptions {
  long steps = 10;
  unsigned precision = 50;      // decimal digits in float mode
  unsigned display_digits = 6;
  CoefficientMode mode = CoefficientMode::Float;
};

enum class NewtonStop {
  StepsCompleted,
  ExactRoot,           // f(x_n) == 0
  PrecisionExhausted,  // 1 - x_(n+1) fell below 10^(-P+2) after rounding
};
std::string to_string(NewtonStop stop);

struct NewtonTrace {
  Expr f;
  Rational x0;
  unsigned precision = 0;
  unsigned display_digits = 6;
  std::vector<Coefficient> iterates;  // x_0 .. x_n
  std::vector<std::string> displays;  // calculator_display of each iterate
  NewtonStop stop = NewtonStop::StepsCompleted;
};

/// x_(n+1) = x_n + |f(x_n)| / f'(x_n), with f' from the infinitesimal
/// derivative. Requires f(x0) < 0 and x0 < 1 (DomainError). Throws
/// DerivativeVanishes when f'(x_n) = 0.
NewtonTrace newton_trace(const Expr& f, const Rational& x0, const NewtonOptions& options = {});

/// Truncates toward zero to `digits` fractional digits, zero-padded:
/// 1 - 10^-7 -> "0.999999".
std::string calculator_display(const Coefficient& v, unsigned digits);

struct CheckStep {
  long n = 0;
  Coefficient x;
  Coefficient margin_lt1;                     // 1 - x_n
  std::optional<Coefficient> margin_monotone;  // x_(n+1) - x_n
  std::optional<Coefficient> mvt_margin;       // (1 - x_n) - |f(x_n)|/f'(x_n)
};

struct CheckViolation {
  long index = 0;
  std::string assertion;  // "x_n < 1", "x_(n+1) > x_n" or "|f|/f' < 1 - x_n"
  bool boundary = false;  // holds with equality rather than failing outright
};

struct CheckReport {
  NewtonTrace trace;
  std::vector<CheckStep> steps;
  std::vector<CheckViolation> violations;
  /// max (1 - x_(n+1)) / (1 - x_n)^2 over steps with 0 < 1 - x_n < 0.1
  std::optional<Coefficient> quadratic_constant;
  /// First n from which every computed display shows all nines.
  std::optional<long> first_nines_index;

  bool ok() const noexcept { return violations.empty(); }
};

CheckReport theorem_check(const Expr& f, const Rational& x0, const NewtonOptions& options = {});

nlohmann::json to_json(const NewtonTrace& trace);
nlohmann::json to_json(const CheckReport& report);

}  // namespace hyperdec
