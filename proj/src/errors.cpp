#include "hyperdec/errors.hpp"

namespace hyperdec {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::TruncationAmbiguous: return "TruncationAmbiguous";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::FloorUndecidable: return "FloorUndecidable";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InfiniteArgument: return "InfiniteArgument";
    case ErrorKind::ExactTranscendental: return "ExactTranscendental";
    case ErrorKind::NotElementary: return "NotElementary";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::NoLimit: return "NoLimit";
    case ErrorKind::PositionOutOfModel: return "PositionOutOfModel";
    case ErrorKind::UnsupportedNotation: return "UnsupportedNotation";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::DerivativeVanishes: return "DerivativeVanishes";
    case ErrorKind::InvalidScale: return "InvalidScale";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

Error::Error(ErrorKind kind, const std::string& message, Span span)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message + " at " +
                         std::to_string(span.begin) + ".." + std::to_string(span.end)),
      kind_(kind),
      message_(message),
      span_(span),
      has_span_(true) {}

bool Error::is_usage_error() const noexcept {
  return kind_ == ErrorKind::SyntaxError || kind_ == ErrorKind::UnknownIdentifier ||
         kind_ == ErrorKind::UnsupportedNotation || kind_ == ErrorKind::InvalidArgument;
}

}  // namespace hyperdec
