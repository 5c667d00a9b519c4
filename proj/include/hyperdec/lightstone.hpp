#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdec/hyper_value.hpp"

namespace hyperdec {

/// Decimal place m*H + j. Standard places are m = 0, j >= 1.
struct Position {
  long m = 0;
  long j = 1;

  bool is_standard() const noexcept { return m == 0; }
  /// Throws InvalidArgument for m < 0, or m = 0 with j < 1.
  void validate() const;
  std::string to_string() const;

  friend auto operator<=>(const Position&, const Position&) = default;
};

/// Digit of x at place p: floor(10^p x) - 10 floor(10^(p-1) x), with
/// 10^p = 10^j * tau^-m. Requires 0 <= x < 1 (DomainError otherwise).
/// Throws PositionOutOfModel at a hyper place whose digit depends on more
/// than the model can represent (e.g. 1/3 at place H).
int digit_at(const HyperValue& x, Position p);

struct RenderOptions {
  long window = 3;        // standard digits shown, and digits per hyper block before m*H
  bool compress = true;   // collapse the leading run of each block to one digit
  long max_digits = 24;   // cap on standard digits and on digits past m*H
};

struct LightstoneBlock {
  long m = 1;
  long first_j = 0;         // place of digits[0] is m*H + first_j
  std::vector<int> digits;  // places m*H + first_j, m*H + first_j + 1, ...
  bool hat = false;         // mark place m*H
  bool continues = false;   // digits go on past the last one shown
};

/// Structured rendering: digits are those of digit_at.
struct LightstoneString {
  bool negative = false;
  Integer integer_part = 0;
  std::vector<int> prefix;       // standard places 1..n
  bool prefix_continues = false;  // "..." after the prefix
  std::vector<LightstoneBlock> blocks;
  bool compress = true;

  std::string text() const;
};

LightstoneString lightstone(const HyperValue& x, const RenderOptions& options = {});
/// ".999…;…9̂" style text. Negative values start with U+2212, the hat is U+0302.
std::string render(const HyperValue& x, const RenderOptions& options = {});

/// Reads the notation back. Grammar:
///   sign? digits? "." digits ellipsis? (";" ellipsis digits-with-optional-hat ellipsis?)?
/// plus "nines(n)" and "nines(H)". "…" may be written "...", the hat as "^"
/// or U+0302, the minus sign as "-" or U+2212; whitespace is ignored.
/// Without a hat the last block digit sits at place H; a trailing ellipsis
/// repeats the last block digit. Multi-block strings throw UnsupportedNotation.
HyperValue parse_lightstone(std::string_view text, ContextPtr ctx);

}  // namespace hyperdec
