#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "qmock/lazy.hpp"
#include "qmock/products.hpp"
#include "qmock/summation.hpp"

namespace qmock {

/// c q^e prod (x; q^m)_n^power, expanded only as deep as needed. Every x must
/// have a nonnegative exponent; a zero factor (x = +q^0) in the numerator
/// makes the term vanish and in the denominator is an error.
struct PochTerm {
  Rational coeff = 1;
  Exponent exp = 0;
  std::vector<std::tuple<ThetaArg, Exponent, Exponent, int>> factors;

  PochTerm(Rational c, Exponent e) : coeff(std::move(c)), exp(e) {}

  PochTerm& p(ThetaArg x, Exponent m, Exponent n, int power = 1) {
    factors.emplace_back(x, m, n, power);
    return *this;
  }
  /// (1 - q^e)^power
  PochTerm& lin(Exponent e, int power = 1) { return p(ThetaArg::q(e), 1, 1, power); }

  QSeries series(Exponent order) const {
    const Exponent k = order - exp;
    if (coeff == 0 || k < 0) return QSeries::zero(order);
    QSeries num = QSeries::constant(coeff), den = QSeries::constant(1);
    for (const auto& [x, m, n, power] : factors) {
      if (n == 0 || power == 0) continue;
      if (x.exp < 0) throw Error(ErrorKind::PreconditionFailed, "PochTerm needs nonnegative exponents");
      if (x.exp == 0 && x.sign > 0) {
        if (power > 0) return QSeries::zero(order);
        throw Error(ErrorKind::ZeroFactor, "denominator (1;q^m)_n vanishes");
      }
      const QSeries f = poch_finite(x, m, n, k);
      for (int i = 0; i < std::abs(power); ++i) {
        if (power > 0) {
          num = series_mul(num, f, k);
        } else {
          den = series_mul(den, f, k);
        }
      }
    }
    return series_mul(num, series_invert(den, k), k).shifted(exp).truncated(order);
  }
};

inline int parity_sign(Exponent n) { return n % 2 != 0 ? -1 : 1; }
inline Exponent c2(Exponent n) { return n * (n - 1) / 2; }  // C(n,2)

/// The single-sum mock theta functions used in the corollary identities.
inline const std::vector<std::string>& classical_names() {
  static const std::vector<std::string> names{"T0", "omega", "A", "U1", "S1", "T1"};
  return names;
}

inline PochTerm classical_term(const std::string& name, Exponent n) {
  const ThetaArg q1 = ThetaArg::q(1), mq1 = ThetaArg::neg_q(1), mq2 = ThetaArg::neg_q(2);
  if (name == "T0") return PochTerm(1, (n + 1) * (n + 2)).p(mq2, 2, n).p(mq1, 2, n + 1, -1);
  if (name == "omega") return PochTerm(1, 2 * n * (n + 1)).p(q1, 2, n + 1, -2);
  if (name == "A") return PochTerm(1, n + 1).p(mq2, 2, n).p(q1, 2, n + 1, -1);
  if (name == "U1") return PochTerm(1, (n + 1) * (n + 1)).p(mq1, 2, n).p(mq2, 4, n + 1, -1);
  if (name == "S1") return PochTerm(1, n * (n + 2)).p(mq1, 2, n).p(mq2, 2, n, -1);
  if (name == "T1") return PochTerm(1, n * (n + 1)).p(mq2, 2, n).p(mq1, 2, n + 1, -1);
  throw Error(ErrorKind::UnknownId, "unknown classical function '" + name + "'");
}

inline QSeries eval_classical(const std::string& name, Exponent order) {
  classical_term(name, 0);  // rejects unknown names before summing
  return sum_rows([&](Exponent n, Exponent N) { return classical_term(name, n).series(N); }, order);
}

/// f(sign q^m) as a lazy series.
inline Lazy lazy_classical(const std::string& name, int sign = 1, Exponent m = 1) {
  classical_term(name, 0);
  return Lazy(0, [name, sign, m](Exponent n) {
    if (n < 0) return QSeries::zero(n);
    return series_substitute(eval_classical(name, detail::floor_div(n, m)), sign, m);
  }, name);
}

}  // namespace qmock
