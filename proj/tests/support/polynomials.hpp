// Polynomials kept as plain coefficient lists, so their values and
// derivatives can be computed without the expression machinery.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "hyperdec/expr.hpp"

namespace hyperdec::testing {

struct Polynomial {
  std::vector<Rational> coeffs;  // coeffs[i] multiplies x^i

  Expr expr(const std::string& variable = "x") const {
    Expr sum = fx::constant(coeffs.empty() ? Rational(0) : coeffs[0]);
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
      sum = sum + fx::constant(coeffs[i]) * fx::pow(fx::var(variable), static_cast<long>(i));
    }
    return sum;
  }

  Rational value(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Rational derivative(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * x + coeffs[i] * static_cast<long>(i);
    return acc;
  }
};

inline Rational random_rational(std::mt19937_64& rng, long range = 9, long max_den = 5) {
  long num = std::uniform_int_distribution<long>(-range, range)(rng);
  long den = std::uniform_int_distribution<long>(1, max_den)(rng);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Polynomial random_polynomial(std::mt19937_64& rng, int max_degree = 6) {
  Polynomial p;
  int degree = std::uniform_int_distribution<int>(0, max_degree)(rng);
  for (int i = 0; i <= degree; ++i) p.coeffs.push_back(random_rational(rng));
  return p;
}

}  // namespace hyperdec::testing
