#pragma once

#include <compare>
#include <string>

#include "qmock/error.hpp"
#include "qmock/series.hpp"

namespace qmock {

/// A specialization sign * q^exp. Every x, y, z, rho in the library is one
/// of these; products, quotients and integer powers stay in the set.
struct ThetaArg {
  int sign = 1;
  Exponent exp = 0;

  static constexpr ThetaArg q(Exponent e) { return {1, e}; }
  static constexpr ThetaArg neg_q(Exponent e) { return {-1, e}; }

  friend constexpr auto operator<=>(const ThetaArg&, const ThetaArg&) = default;

  friend constexpr ThetaArg operator*(ThetaArg a, ThetaArg b) { return {a.sign * b.sign, a.exp + b.exp}; }
  friend constexpr ThetaArg operator/(ThetaArg a, ThetaArg b) { return {a.sign * b.sign, a.exp - b.exp}; }
  constexpr ThetaArg operator-() const { return {-sign, exp}; }

  constexpr ThetaArg inverse() const { return {sign, -exp}; }

  constexpr ThetaArg pow(Exponent k) const {
    const int s = (sign < 0 && (k % 2 != 0)) ? -1 : 1;
    return {s, exp * k};
  }

  /// The monomial as a series.
  QSeries series() const { return QSeries::monomial(sign, exp); }

  std::string str() const {
    std::string s = sign < 0 ? "-q^" : "q^";
    return s + std::to_string(exp);
  }
};

}  // namespace qmock
