#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperdec {

enum class ErrorKind {
  ContextMismatch,
  DivisionByZero,
  TruncationAmbiguous,
  NotFinite,
  FloorUndecidable,
  DomainError,
  InfiniteArgument,
  ExactTranscendental,
  NotElementary,
  UnboundVariable,
  NoLimit,
  PositionOutOfModel,
  UnsupportedNotation,
  SyntaxError,
  UnknownIdentifier,
  DerivativeVanishes,
  InvalidScale,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Half-open byte range into the source text of a parsed expression.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Every failure raised by the library. The kind decides the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  Error(ErrorKind kind, const std::string& message, Span span);

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix and span suffix that what() adds.
  const std::string& message() const noexcept { return message_; }
  const Span& span() const noexcept { return span_; }
  bool has_span() const noexcept { return has_span_; }

  /// Syntax-level failures (bad input text) as opposed to mathematical ones.
  bool is_usage_error() const noexcept;

 private:
  ErrorKind kind_;
  std::string message_;
  Span span_{};
  bool has_span_ = false;
};

}  // namespace hyperdec
