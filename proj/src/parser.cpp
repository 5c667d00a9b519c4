#include "hyperdec/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <unordered_map>
#include <vector>

namespace hyperdec {

namespace {

constexpr long kMaxExponent = 1000000;
constexpr long kMaxFoldedPower = 10000;
constexpr long kMaxDecimalExponent = 100000;

enum class Tok { Number, Ident, Deriv, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, Equals, Arrow, End };

struct Token {
  Tok kind;
  std::string text;  // identifier, number literal, or bound variable of d/dx
  Span span;
};

[[noreturn]] void syntax_error(const std::string& message, Span span) {
  throw Error(ErrorKind::SyntaxError, message, span);
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto single = [&](Tok kind, std::size_t width) {
    out.push_back({kind, std::string(src.substr(i, width)), {i, i + width}});
    i += width;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (is_digit(c) || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
      std::size_t j = i;
      while (j < src.size() && is_digit(src[j])) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && is_digit(src[j])) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && is_digit(src[k])) {
          while (k < src.size() && is_digit(src[k])) ++k;
          j = k;
        }
      }
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), {i, j}});
      i = j;
    } else if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      // d/dx( ... )
      if (word == "d" && j + 2 < src.size() && src[j] == '/' && src[j + 1] == 'd' && is_ident_start(src[j + 2])) {
        std::size_t k = j + 2;
        while (k < src.size() && is_ident_char(src[k])) ++k;
        out.push_back({Tok::Deriv, std::string(src.substr(j + 2, k - j - 2)), {i, k}});
        i = k;
        continue;
      }
      out.push_back({Tok::Ident, word, {i, j}});
      i = j;
    } else if (src.substr(i, 2) == "->") {
      single(Tok::Arrow, 2);
    } else if (src.substr(i, 3) == "\xE2\x88\x92") {  // U+2212 minus sign
      single(Tok::Minus, 3);
    } else {
      switch (c) {
        case '+': single(Tok::Plus, 1); break;
        case '-': single(Tok::Minus, 1); break;
        case '*': single(Tok::Star, 1); break;
        case '/': single(Tok::Slash, 1); break;
        case '^': single(Tok::Caret, 1); break;
        case '(': single(Tok::LParen, 1); break;
        case ')': single(Tok::RParen, 1); break;
        case ',': single(Tok::Comma, 1); break;
        case '=': single(Tok::Equals, 1); break;
        default: {
          std::size_t width = 1;
          const auto byte = static_cast<unsigned char>(c);
          if (byte >= 0xF0) width = 4;
          else if (byte >= 0xE0) width = 3;
          else if (byte >= 0xC0) width = 2;
          width = std::min(width, src.size() - i);
          syntax_error("unexpected character '" + std::string(src.substr(i, width)) + "'",
                       {i, i + width});
        }
      }
    }
  }
  out.push_back({Tok::End, "", {src.size(), src.size()}});
  return out;
}

Rational decimal_literal(const Token& t) {
  std::string digits;
  long scale = 0;
  long exponent = 0;
  bool fraction = false;
  for (std::size_t i = 0; i < t.text.size(); ++i) {
    const char c = t.text[i];
    if (c == '.') {
      fraction = true;
    } else if (c == 'e' || c == 'E') {
      errno = 0;
      exponent = std::strtol(t.text.c_str() + i + 1, nullptr, 10);
      if (errno != 0 || std::labs(exponent) > kMaxDecimalExponent) {
        syntax_error("decimal exponent out of range", t.span);
      }
      break;
    } else {
      digits += c;
      if (fraction) ++scale;
    }
  }
  return Rational(Integer(digits, 10)) * pow10(exponent - scale);
}

Rational power(const Rational& base, long k) {
  Integer num;
  Integer den;
  const unsigned long e = static_cast<unsigned long>(std::labs(k));
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational q = k < 0 ? Rational(den, num) : Rational(num, den);
  q.canonicalize();
  return q;
}

Span join(Span a, Span b) { return {std::min(a.begin, b.begin), std::max(a.end, b.end)}; }

enum class Fn { Exp, Log, Sin, Cos, Sqrt, Abs, Floor, St, Nines, Compose, Lim, Deriv };

const std::unordered_map<std::string, Fn>& functions() {
  static const std::unordered_map<std::string, Fn> table{
      {"exp", Fn::Exp},     {"log", Fn::Log},         {"ln", Fn::Log},     {"sin", Fn::Sin},
      {"cos", Fn::Cos},     {"sqrt", Fn::Sqrt},       {"abs", Fn::Abs},    {"floor", Fn::Floor},
      {"st", Fn::St},       {"nines", Fn::Nines},     {"compose", Fn::Compose},
      {"lim", Fn::Lim},     {"deriv", Fn::Deriv},
  };
  return table;
}

bool is_variable_name(const std::string& word) {
  return word.size() == 1 && std::islower(static_cast<unsigned char>(word[0])) && word != "e";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(lex(src)) {}

  ParsedInput input() {
    ParsedInput result{expression(), std::nullopt, std::nullopt};
    if (peek().kind == Tok::Ident && peek().text == "at") {
      advance();
      const Token& name = expect(Tok::Ident, "a variable after 'at'");
      if (!is_variable_name(name.text)) syntax_error("'" + name.text + "' is not a variable name", name.span);
      result.variable = name.text;
      expect(Tok::Equals, "'='");
      result.point = expression();
    }
    finish();
    return result;
  }

  Expr single() {
    Expr e = expression();
    finish();
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void unexpected(const std::string& wanted) const {
    const Token& t = peek();
    if (t.kind == Tok::End) syntax_error("unexpected end of input, expected " + wanted, t.span);
    syntax_error("unexpected '" + t.text + "', expected " + wanted, t.span);
  }

  const Token& expect(Tok kind, const std::string& wanted) {
    if (peek().kind != kind) unexpected(wanted);
    return advance();
  }

  void finish() {
    if (peek().kind != Tok::End) unexpected("end of input");
  }

  Expr expression() {
    Expr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool plus = advance().kind == Tok::Plus;
      Expr rhs = term();
      lhs = binary(plus ? NodeKind::Add : NodeKind::Sub, lhs, rhs);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const bool times = advance().kind == Tok::Star;
      Expr rhs = unary();
      lhs = binary(times ? NodeKind::Mul : NodeKind::Div, lhs, rhs);
    }
    return lhs;
  }

  Expr unary() {
    if (peek().kind == Tok::Minus) {
      const Span start = advance().span;
      Expr a = unary();
      const Span span = join(start, a.span());
      if (a.is_constant()) return fx::constant(-a.value()).with_span(span);
      return (-a).with_span(span);
    }
    if (peek().kind == Tok::Plus) {
      advance();
      return unary();
    }
    return power_expr();
  }

  Expr power_expr() {
    Expr base = primary();
    if (!accept(Tok::Caret)) return base;
    Expr exponent = unary();
    const Span span = join(base.span(), exponent.span());
    if (exponent.is_constant() && is_integer(exponent.value())) {
      const Integer k = exponent.value().get_num();
      if (abs(k) > kMaxExponent) syntax_error("exponent too large", exponent.span());
      const long n = k.get_si();
      if (base.is_constant() && std::labs(n) <= kMaxFoldedPower && !(base.value() == 0 && n < 0)) {
        return fx::constant(power(base.value(), n)).with_span(span);
      }
      return fx::pow(base, n).with_span(span);
    }
    if (base.is_constant() && base.value() == 10) return fx::pow10(exponent).with_span(span);
    syntax_error("exponent must be an integer constant (only 10 takes other exponents)", exponent.span());
  }

  Expr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: advance(); return fx::constant(decimal_literal(t)).with_span(t.span);
      case Tok::LParen: {
        advance();
        Expr inner = expression();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Deriv: {
        const Token& d = advance();
        if (!is_variable_name(d.text)) syntax_error("'" + d.text + "' is not a variable name", d.span);
        expect(Tok::LParen, "'(' after d/d" + d.text);
        Expr f = expression();
        const Span end = expect(Tok::RParen, "')'").span;
        return fx::derivative(f, d.text).with_span(join(d.span, end));
      }
      case Tok::Ident: return identifier();
      default: unexpected("a number, name or '('");
    }
  }

  Expr identifier() {
    const Token& t = advance();
    const std::string& w = t.text;
    if (w == "H") return fx::omega().with_span(t.span);
    if (w == "eps") return fx::tau().with_span(t.span);
    if (w == "pi") return fx::pi().with_span(t.span);
    if (w == "e") return fx::euler().with_span(t.span);
    if (auto it = functions().find(w); it != functions().end()) return call(it->second, t);
    if (is_variable_name(w)) return fx::var(w).with_span(t.span);
    if (w == "inf") syntax_error("'inf' may only appear as a limit point", t.span);
    throw Error(ErrorKind::UnknownIdentifier, "unknown identifier '" + w + "'", t.span);
  }

  Expr call(Fn fn, const Token& name) {
    expect(Tok::LParen, "'(' after " + name.text);
    if (fn == Fn::Lim) return limit(name);
    Expr a = expression();
    std::optional<Expr> b;
    std::string variable = "x";
    if (fn == Fn::Compose) {
      expect(Tok::Comma, "',' between the two functions");
      b = expression();
    } else if (fn == Fn::Deriv && accept(Tok::Comma)) {
      const Token& v = expect(Tok::Ident, "a variable name");
      if (!is_variable_name(v.text)) syntax_error("'" + v.text + "' is not a variable name", v.span);
      variable = v.text;
    }
    const Span span = join(name.span, expect(Tok::RParen, "')'").span);
    switch (fn) {
      case Fn::Exp: return fx::exp(a).with_span(span);
      case Fn::Log: return fx::log(a).with_span(span);
      case Fn::Sin: return fx::sin(a).with_span(span);
      case Fn::Cos: return fx::cos(a).with_span(span);
      case Fn::Sqrt: return fx::sqrt(a).with_span(span);
      case Fn::Abs: return fx::abs(a).with_span(span);
      case Fn::Floor: return fx::floor(a).with_span(span);
      case Fn::St: return fx::st(a).with_span(span);
      case Fn::Nines: return fx::nines(a).with_span(span);
      case Fn::Compose: return fx::compose(a, *b).with_span(span);
      case Fn::Deriv: return fx::derivative(a, variable).with_span(span);
      case Fn::Lim: break;
    }
    syntax_error("unreachable", span);
  }

  // lim(n -> inf, u) or lim(x -> a, f)
  Expr limit(const Token& name) {
    const Token& v = expect(Tok::Ident, "the limit variable");
    if (!is_variable_name(v.text)) syntax_error("'" + v.text + "' is not a variable name", v.span);
    expect(Tok::Arrow, "'->'");
    std::optional<Expr> point;
    if (peek().kind == Tok::Ident && peek().text == "inf") {
      advance();
    } else {
      point = expression();
    }
    expect(Tok::Comma, "','");
    Expr body = expression();
    const Span span = join(name.span, expect(Tok::RParen, "')'").span);
    if (!point) return fx::limit_seq(body, v.text).with_span(span);
    return fx::limit_fun(body, *point, v.text).with_span(span);
  }

  Expr binary(NodeKind kind, const Expr& a, const Expr& b) {
    const Span span = join(a.span(), b.span());
    if (a.is_constant() && b.is_constant()) {
      const Rational& x = a.value();
      const Rational& y = b.value();
      switch (kind) {
        case NodeKind::Add: return fx::constant(x + y).with_span(span);
        case NodeKind::Sub: return fx::constant(x - y).with_span(span);
        case NodeKind::Mul: return fx::constant(x * y).with_span(span);
        case NodeKind::Div:
          if (y != 0) return fx::constant(x / y).with_span(span);
          break;
        default: break;
      }
    }
    switch (kind) {
      case NodeKind::Add: return (a + b).with_span(span);
      case NodeKind::Sub: return (a - b).with_span(span);
      case NodeKind::Mul: return (a * b).with_span(span);
      default: return (a / b).with_span(span);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view src) { return Parser(src).single(); }

ParsedInput parse_input(std::string_view src) { return Parser(src).input(); }

std::string caret_line(std::string_view src, Span span) {
  auto columns = [&](std::size_t from, std::size_t to) {
    std::size_t n = 0;
    for (std::size_t i = from; i < to && i < src.size(); ++i) {
      if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) ++n;
    }
    return n;
  };
  const std::size_t lead = columns(0, span.begin);
  const std::size_t width = std::max<std::size_t>(1, columns(span.begin, span.end));
  return std::string(src) + "\n" + std::string(lead, ' ') + std::string(width, '^');
}

}  // namespace hyperdec
