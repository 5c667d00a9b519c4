#pragma once

#include <cstddef>
#include <memory>

#include "hyperdec/numeric.hpp"

namespace hyperdec {

enum class CoefficientMode { Exact, Float };

/// Arithmetic settings shared by every value built from it. Immutable.
class NumContext {
 public:
  static constexpr std::size_t kDefaultTerms = 16;
  static constexpr unsigned kDefaultPrecision = 50;

  /// Throws Error(InvalidArgument) unless max_terms >= 2 and precision >= 10.
  NumContext(std::size_t max_terms = kDefaultTerms, CoefficientMode mode = CoefficientMode::Exact,
             unsigned precision = kDefaultPrecision);

  std::size_t max_terms() const noexcept { return max_terms_; }
  CoefficientMode mode() const noexcept { return mode_; }
  bool exact() const noexcept { return mode_ == CoefficientMode::Exact; }
  unsigned precision() const noexcept { return precision_; }
  mpfr_prec_t bits() const noexcept { return bits_; }

  /// A coefficient in this context's mode.
  Coefficient coefficient(const Rational& q) const;
  Coefficient coefficient(const Coefficient& c) const;

  friend bool operator==(const NumContext& x, const NumContext& y) noexcept {
    return x.max_terms_ == y.max_terms_ && x.mode_ == y.mode_ &&
           (x.mode_ == CoefficientMode::Exact || x.precision_ == y.precision_);
  }

 private:
  std::size_t max_terms_;
  CoefficientMode mode_;
  unsigned precision_;
  mpfr_prec_t bits_;
};

using ContextPtr = std::shared_ptr<const NumContext>;

ContextPtr make_context(std::size_t max_terms = NumContext::kDefaultTerms,
                        CoefficientMode mode = CoefficientMode::Exact,
                        unsigned precision = NumContext::kDefaultPrecision);

inline ContextPtr exact_context(std::size_t max_terms = NumContext::kDefaultTerms) {
  return make_context(max_terms, CoefficientMode::Exact);
}

inline ContextPtr float_context(unsigned precision = NumContext::kDefaultPrecision,
                                std::size_t max_terms = NumContext::kDefaultTerms) {
  return make_context(max_terms, CoefficientMode::Float, precision);
}

}  // namespace hyperdec
