#include "hyperdec/context.hpp"

#include <string>

#include "hyperdec/errors.hpp"

namespace hyperdec {

NumContext::NumContext(std::size_t max_terms, CoefficientMode mode, unsigned precision)
    : max_terms_(max_terms), mode_(mode), precision_(precision), bits_(bits_for_digits(precision)) {
  if (max_terms_ < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "max terms must be at least 2, got " + std::to_string(max_terms_));
  }
  if (precision_ < 10) {
    throw Error(ErrorKind::InvalidArgument,
                "float precision must be at least 10 digits, got " + std::to_string(precision_));
  }
}

Coefficient NumContext::coefficient(const Rational& q) const {
  if (exact()) return Coefficient(q);
  return Coefficient(BigFloat(q, bits_));
}

Coefficient NumContext::coefficient(const Coefficient& c) const {
  if (exact()) {
    if (!c.is_exact()) {
      throw Error(ErrorKind::ContextMismatch, "float coefficient in an exact context");
    }
    return c;
  }
  return Coefficient(c.to_float(bits_));
}

ContextPtr make_context(std::size_t max_terms, CoefficientMode mode, unsigned precision) {
  return std::make_shared<const NumContext>(max_terms, mode, precision);
}

}  // namespace hyperdec
