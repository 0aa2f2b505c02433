#pragma once

#include <string>
#include <vector>

#include "qmock/lazy.hpp"
#include "qmock/products.hpp"

namespace qmock {

/// j(x, q^modulus)^power; negative powers divide.
struct ThetaFactor {
  ThetaArg x;
  Exponent modulus = 1;
  int power = 1;

  std::string str() const {
    std::string s = "j(" + x.str() + ",q^" + std::to_string(modulus) + ")";
    if (power != 1) s += "^" + std::to_string(power);
    return s;
  }
};

/// coeff * mono * prod of theta factors.
struct ThetaQuotient {
  Rational coeff = 1;
  ThetaArg mono = ThetaArg::q(0);
  std::vector<ThetaFactor> factors;

  ThetaQuotient& times(ThetaArg x, Exponent modulus, int power = 1) {
    factors.push_back({x, modulus, power});
    return *this;
  }
  ThetaQuotient& over(ThetaArg x, Exponent modulus, int power = 1) {
    factors.push_back({x, modulus, -power});
    return *this;
  }
  ThetaQuotient& times(const JSymbol& j, int power = 1) { return times(j.arg(), j.modulus(), power); }
  ThetaQuotient& over(const JSymbol& j, int power = 1) { return over(j.arg(), j.modulus(), power); }

  std::string str() const {
    std::string s = rational_to_string(coeff) + "*" + mono.str();
    for (const auto& f : factors) s += " " + f.str();
    return s;
  }

  /// Vanishing numerator factors make the term exactly zero; vanishing
  /// denominators raise DivisionByZeroTheta.
  Lazy lazy() const {
    std::vector<Lazy> parts;
    parts.push_back(Lazy::monomial(coeff * mono.sign, mono.exp));
    bool zero = coeff == 0;
    for (const auto& f : factors) {
      if (f.power == 0) continue;
      if (theta_vanishes(f.x, f.modulus)) {
        if (f.power < 0) {
          throw Error(ErrorKind::DivisionByZeroTheta, "denominator " + f.str() + " vanishes");
        }
        zero = true;
      }
    }
    if (zero) return lazy_zero();
    for (const auto& f : factors) {
      if (f.power == 0) continue;
      Lazy base = lazy_theta(f.x, f.modulus);
      if (f.power < 0) base = base.inverse();
      for (int k = 0; k < std::abs(f.power); ++k) parts.push_back(base);
    }
    return lazy_product(parts);
  }
};

}  // namespace qmock
