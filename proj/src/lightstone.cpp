#include "hyperdec/lightstone.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "hyperdec/errors.hpp"

namespace hyperdec {

namespace {

constexpr std::string_view kEllipsis = "…";
constexpr std::string_view kMinus = "−";
constexpr std::string_view kHat = "̂";
constexpr unsigned long kMaxSummedNines = 1000;

// Digit extraction needs exact arithmetic even for float values; every float
// coefficient is a binary rational, so nothing is lost.
HyperValue exact_copy(const HyperValue& x) {
  if (x.context().exact()) return x;
  std::vector<Term> terms;
  for (const Term& t : x.terms()) terms.push_back(Term{Coefficient(t.coeff.to_rational()), t.exponent});
  return HyperValue::from_terms(exact_context(x.context().max_terms()), std::move(terms), x.horizon());
}

HyperValue scale10(const HyperValue& x, Position p) {
  return x * HyperValue::monomial(x.context_ptr(), Coefficient(pow10(p.j)),
                                  ExponentPair(Rational(-p.m), Rational(0)));
}

bool is_hyperinteger(const HyperValue& x) {
  if (floor_obstruction(x)) return false;
  return floor(x) == x;
}

// Digit of an exact value already known to lie in [0, 1).
int digit_of(const HyperValue& x, Position p) {
  HyperValue d = HyperValue::zero(x.context_ptr());
  try {
    HyperValue s = scale10(x, p);
    d = floor(s) - floor(s.scaled(Coefficient(Rational(1, 10)))).scaled(Coefficient(10L));
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::FloorUndecidable && p.m > 0) {
      throw Error(ErrorKind::PositionOutOfModel,
                  "the digit of " + x.to_string() + " at place " + p.to_string() +
                      " is not determined by the model");
    }
    throw;
  }
  if (!d.is_standard()) {
    throw Error(ErrorKind::FloorUndecidable, "digit at " + p.to_string() + " is not standard");
  }
  Rational v = standard_part(d).rational();
  if (!is_integer(v) || v < 0 || v > 9) {
    throw Error(ErrorKind::FloorUndecidable, "digit at " + p.to_string() + " out of range");
  }
  return static_cast<int>(v.get_num().get_si());
}

bool last_three_equal(const std::vector<int>& digits) {
  const std::size_t n = digits.size();
  return n >= 3 && digits[n - 1] == digits[n - 2] && digits[n - 2] == digits[n - 3];
}

// The digit at place j repeats through the next `lookahead` standard places.
bool run_continues(const HyperValue& frac, long j, long lookahead) {
  const int d = digit_of(frac, Position{0, j});
  for (long k = j + 1; k <= j + lookahead; ++k) {
    if (digit_of(frac, Position{0, k}) != d) return false;
  }
  return true;
}

}  // namespace

void Position::validate() const {
  if (m < 0 || (m == 0 && j < 1)) {
    throw Error(ErrorKind::InvalidArgument, "invalid decimal place " + to_string());
  }
}

std::string Position::to_string() const {
  if (m == 0) return std::to_string(j);
  std::string out = m == 1 ? "H" : std::to_string(m) + "H";
  if (j > 0) out += "+" + std::to_string(j);
  if (j < 0) out += std::to_string(j);
  return out;
}

int digit_at(const HyperValue& x, Position p) {
  p.validate();
  HyperValue ex = exact_copy(x);
  const HyperValue zero = HyperValue::zero(ex.context_ptr());
  const HyperValue one = HyperValue::constant(ex.context_ptr(), Rational(1));
  if (compare(ex, zero) < 0 || compare(ex, one) >= 0) {
    throw Error(ErrorKind::DomainError, "digit_at needs 0 <= x < 1, got " + x.to_string());
  }
  return digit_of(ex, p);
}

LightstoneString lightstone(const HyperValue& x, const RenderOptions& options) {
  if (options.window < 1 || options.max_digits < options.window) {
    throw Error(ErrorKind::InvalidArgument, "render window must be in 1..max_digits");
  }
  LightstoneString out;
  out.compress = options.compress;
  HyperValue ex = exact_copy(x);
  if (ex.is_zero()) return out;
  if (classify(ex).sign < 0) {
    out.negative = true;
    ex = -ex;
  }
  const HyperValue integer = floor(ex);
  if (!integer.is_standard()) {
    throw Error(ErrorKind::UnsupportedNotation,
                "infinite integer part " + integer.to_string() + " has no decimal expansion");
  }
  out.integer_part = standard_part(integer).rational().get_num();
  const HyperValue frac = ex - integer;
  if (frac.is_zero()) return out;

  std::set<long> block_ms;
  for (const Term& t : frac.terms()) {
    if (t.exponent.b > 0) {
      Rational b = t.exponent.b;
      Integer m = hyperdec::floor(b);
      if (!is_integer(b)) m += 1;
      block_ms.insert(m.get_si());
    }
  }

  const long w = options.window;
  for (long j = 1; j <= options.max_digits; ++j) {
    out.prefix.push_back(digit_of(frac, Position{0, j}));
    if (block_ms.empty() && is_hyperinteger(scale10(frac, Position{0, j}))) break;
    if (j >= w && last_three_equal(out.prefix) && run_continues(frac, j, options.max_digits)) {
      out.prefix_continues = true;
      break;
    }
    if (j == options.max_digits) out.prefix_continues = true;
  }

  const long top = block_ms.empty() ? 0 : *block_ms.rbegin();
  for (long m : block_ms) {
    LightstoneBlock block{m, -w, {}, false};
    for (long j = -w; j <= 0; ++j) block.digits.push_back(digit_of(frac, Position{m, j}));
    if (m == top) {
      bool extended = false;
      for (long j = 0; !is_hyperinteger(scale10(frac, Position{m, j})); ++j) {
        if (j == options.max_digits) {
          block.continues = true;
          break;
        }
        block.digits.push_back(digit_of(frac, Position{m, j + 1}));
        extended = true;
      }
      const int lead = block.digits.front();
      bool run_covers_place =
          std::all_of(block.digits.begin(), block.digits.begin() + w + 1, [&](int d) { return d == lead; });
      block.hat = extended || (options.compress && run_covers_place);
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

std::string LightstoneString::text() const {
  std::string out;
  if (negative) out += kMinus;
  const bool has_fraction = !prefix.empty() || !blocks.empty();
  if (integer_part != 0 || !has_fraction) out += integer_part.get_str();
  if (!has_fraction) return out;
  out += '.';
  for (int d : prefix) out += static_cast<char>('0' + d);
  if (prefix_continues) out += kEllipsis;
  for (const LightstoneBlock& block : blocks) {
    out += ';';
    out += kEllipsis;
    const auto at_place = static_cast<std::size_t>(-block.first_j);
    std::size_t start = 0;
    if (compress) {
      while (start < at_place && block.digits[start + 1] == block.digits[0]) ++start;
    }
    for (std::size_t i = start; i < block.digits.size(); ++i) {
      out += static_cast<char>('0' + block.digits[i]);
      if (block.hat && i == at_place) out += kHat;
    }
    if (block.continues) out += kEllipsis;
  }
  return out;
}

std::string render(const HyperValue& x, const RenderOptions& options) {
  return lightstone(x, options).text();
}

namespace {

class NotationParser {
 public:
  NotationParser(std::string_view text, ContextPtr ctx) : text_(text), ctx_(std::move(ctx)) {}

  HyperValue parse() {
    skip_space();
    if (accept("nines")) return parse_nines();

    bool negative = false;
    if (accept("-") || accept(kMinus)) {
      negative = true;
    } else {
      accept("+");
    }
    std::string integer_digits = digits();
    if (at_end()) {
      if (integer_digits.empty()) fail("expected a number");
      Rational v(Integer(integer_digits, 10));
      return HyperValue::constant(ctx_, negative ? Rational(-v) : v);
    }
    if (peek_ellipsis() || !accept(".")) fail("expected '.'");
    std::string prefix = digits();
    if (prefix.empty()) fail("expected a digit after '.'");
    const bool continues = accept_ellipsis();

    struct Block {
      std::vector<int> digits;
      std::optional<std::size_t> hat;
      bool continues = false;
      Span span;
    };
    std::vector<Block> blocks;
    while (accept(";")) {
      Block block;
      block.span.begin = pos_;
      if (!accept_ellipsis()) fail("expected '…' after ';'");
      while (true) {
        std::string d = digits(1);
        if (d.empty()) break;
        block.digits.push_back(d[0] - '0');
        if (accept("^") || accept(kHat)) {
          if (block.hat) fail("more than one hat in a block");
          block.hat = block.digits.size() - 1;
        }
      }
      if (block.digits.empty()) fail("expected block digits");
      block.continues = accept_ellipsis();
      block.span.end = pos_;
      blocks.push_back(std::move(block));
    }
    if (!at_end()) fail("unexpected input");
    if (blocks.size() > 1) {
      throw Error(ErrorKind::UnsupportedNotation, "only one hyper block is supported",
                  Span{blocks[1].span.begin, blocks.back().span.end});
    }

    const long n = static_cast<long>(prefix.size());
    Rational standard = integer_digits.empty() ? Rational(0) : Rational(Integer(integer_digits, 10));
    if (n > 0) standard += Rational(Integer(prefix, 10)) * pow10(-n);
    const int last = prefix.back() - '0';
    Rational tau_coeff(0);
    if (blocks.empty()) {
      if (continues) standard += Rational(last) * pow10(-n) / 9;
    } else {
      const Block& b = blocks.front();
      const long h = static_cast<long>(b.hat.value_or(b.digits.size() - 1));
      const int fill = continues ? last : b.digits.front();
      if (fill != b.digits.front()) {
        throw Error(ErrorKind::UnsupportedNotation,
                    "the digits between the standard places and the block are not determined",
                    b.span);
      }
      // fill digits occupy places n+1 .. H-h-1; digit i of the block sits at H + i - h
      standard += Rational(fill) * pow10(-n) / 9;
      tau_coeff -= Rational(fill) * pow10(h + 1) / 9;
      for (std::size_t i = 0; i < b.digits.size(); ++i) {
        tau_coeff += Rational(b.digits[i]) * pow10(h - static_cast<long>(i));
      }
      if (b.continues) {
        const long last_place = static_cast<long>(b.digits.size()) - 1 - h;
        tau_coeff += Rational(b.digits.back()) * pow10(-last_place) / 9;
      }
    }
    standard.canonicalize();
    tau_coeff.canonicalize();
    HyperValue v = HyperValue::constant(ctx_, standard) +
                   HyperValue::monomial(ctx_, ctx_->coefficient(tau_coeff), ExponentPair::tau());
    return negative ? -v : v;
  }

 private:
  HyperValue parse_nines() {
    if (!accept("(")) fail("expected '('");
    HyperValue v = HyperValue::zero(ctx_);
    if (accept("H")) {
      v = nines_hyper(ctx_);
    } else {
      std::string count = digits();
      if (count.empty() || count.size() > 18) fail("expected a count or H");
      auto n = std::stoul(count);
      v = n <= kMaxSummedNines ? nines(ctx_, n) : nines_at(ctx_, 0, static_cast<long>(n));
    }
    if (!accept(")")) fail("expected ')'");
    if (!at_end()) fail("unexpected input");
    return v;
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n')) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  bool peek_ellipsis() {
    skip_space();
    return text_.substr(pos_, 3) == "..." || text_.substr(pos_, kEllipsis.size()) == kEllipsis;
  }

  bool accept_ellipsis() { return accept("...") || accept(kEllipsis); }

  std::string digits(std::size_t limit = std::string::npos) {
    std::string out;
    while (out.size() < limit) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] < '0' || text_[pos_] > '9') break;
      out += text_[pos_++];
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& message) {
    skip_space();
    std::size_t end = std::min(text_.size(), pos_ + 1);
    throw Error(ErrorKind::SyntaxError, message + " at offset " + std::to_string(pos_),
                Span{pos_, std::max(end, pos_)});
  }

  std::string_view text_;
  ContextPtr ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

HyperValue parse_lightstone(std::string_view text, ContextPtr ctx) {
  return NotationParser(text, std::move(ctx)).parse();
}

}  // namespace hyperdec
