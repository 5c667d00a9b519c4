#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hyperdec/expr.hpp"

namespace hyperdec {

/// Reads one expression of the shell language (grammar in docs/grammar.ebnf).
/// Constant subtrees are folded, so parse(to_string(parse(s))) == parse(s).
/// Errors: SyntaxError and UnknownIdentifier, both with byte spans.
Expr parse_expr(std::string_view src);

/// An expression optionally followed by "at <var> = <expr>".
struct ParsedInput {
  Expr expr;
  std::optional<std::string> variable;
  std::optional<Expr> point;
};

ParsedInput parse_input(std::string_view src);

/// Points the error span out under the source line, e.g.
///   1 + * 2
///       ^
std::string caret_line(std::string_view src, Span span);

}  // namespace hyperdec
