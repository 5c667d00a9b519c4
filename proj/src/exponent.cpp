#include "hyperdec/exponent.hpp"

namespace hyperdec {

Magnitude ExponentPair::magnitude() const {
  if (is_infinite()) return Magnitude::Infinite;
  if (is_infinitesimal()) return Magnitude::Infinitesimal;
  return Magnitude::Appreciable;
}

ExponentPair ExponentPair::operator+(const ExponentPair& other) const {
  return {Rational(b + other.b), Rational(a + other.a)};
}

ExponentPair ExponentPair::operator-(const ExponentPair& other) const {
  return {Rational(b - other.b), Rational(a - other.a)};
}

ExponentPair ExponentPair::operator-() const { return {Rational(-b), Rational(-a)}; }

ExponentPair ExponentPair::scaled(long k) const {
  return {Rational(b * k), Rational(a * k)};
}

std::string ExponentPair::to_string() const {
  return "(" + hyperdec::to_string(b) + "," + hyperdec::to_string(a) + ")";
}

std::strong_ordering operator<=>(const ExponentPair& x, const ExponentPair& y) {
  if (int c = cmp(x.b, y.b); c != 0) {
    return c < 0 ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  int c = cmp(x.a, y.a);
  if (c == 0) return std::strong_ordering::equal;
  return c > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
}

}  // namespace hyperdec
