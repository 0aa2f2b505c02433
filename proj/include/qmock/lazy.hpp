#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "qmock/series.hpp"
#include "qmock/theta_arg.hpp"

namespace qmock {

/// A series computable to any requested order, together with a lower bound
/// on its lowest exponent. Products use the bounds to decide how far each
/// factor must be expanded so the result is certified to the target order.
class Lazy {
 public:
  using Eval = std::function<QSeries(Exponent)>;

  Lazy(Exponent lower_bound, Eval eval, std::string label = {})
      : lb_(lower_bound), eval_(std::make_shared<Eval>(std::move(eval))), label_(std::move(label)) {}

  static Lazy exact(QSeries s) {
    const Exponent lb = s.min_exp();
    return Lazy(lb, [s = std::move(s)](Exponent n) { return s.truncated(n); });
  }

  static Lazy monomial(const Rational& c, Exponent e) { return exact(QSeries::monomial(c, e)); }
  static Lazy arg(ThetaArg x) { return monomial(x.sign, x.exp); }
  static Lazy constant(const Rational& c) { return monomial(c, 0); }

  Exponent lower_bound() const { return lb_; }
  const std::string& label() const { return label_; }

  /// Certified through q^n (never less), truncated to n.
  QSeries at(Exponent n) const {
    if (n < lb_) return QSeries::zero(n);
    QSeries s = (*eval_)(n);
    if (s.order() < n) {
      throw Error(ErrorKind::InsufficientPrecision,
                  "lazy series " + label_ + " returned order " + std::to_string(s.order()) +
                      " for requested " + std::to_string(n));
    }
    return s.truncated(n);
  }

  /// Exact lowest exponent, found by expanding progressively further.
  Exponent leading_exponent(Exponent search = 4096) const {
    Exponent span = 8;
    for (;;) {
      QSeries s = at(lb_ + span);
      if (!s.is_zero()) return s.min_exp();
      if (s.exact() || span > search) {
        throw Error(ErrorKind::DivisionByZeroTheta,
                    "series " + (label_.empty() ? std::string("<anonymous>") : label_) +
                        " vanishes" + (s.exact() ? "" : " through q^" + std::to_string(lb_ + span)));
      }
      span *= 4;
    }
  }

  Lazy inverse() const {
    const Exponent t = leading_exponent();
    Lazy base = *this;
    return Lazy(-t, [base, t](Exponent n) { return series_invert(base.at(n + 2 * t), n); },
                "1/(" + label_ + ")");
  }

  Lazy scaled(const Rational& c) const {
    Lazy base = *this;
    return Lazy(lb_, [base, c](Exponent n) { return base.at(n).scaled(c); }, label_);
  }

  Lazy shifted(Exponent k) const {
    Lazy base = *this;
    return Lazy(lb_ + k, [base, k](Exponent n) { return base.at(n - k).shifted(k); }, label_);
  }

  friend Lazy operator*(const Lazy& a, const Lazy& b) {
    return Lazy(a.lb_ + b.lb_,
                [a, b](Exponent n) {
                  return series_mul(a.at(n - b.lb_), b.at(n - a.lb_), n);
                },
                a.label_ + "*" + b.label_);
  }

  friend Lazy operator+(const Lazy& a, const Lazy& b) {
    return Lazy(std::min(a.lb_, b.lb_),
                [a, b](Exponent n) { return series_add(a.at(n), b.at(n)); },
                a.label_ + "+" + b.label_);
  }

  friend Lazy operator-(const Lazy& a, const Lazy& b) { return a + b.scaled(-1); }

 private:
  Exponent lb_;
  std::shared_ptr<Eval> eval_;
  std::string label_;
};

/// Sum of an empty list is the exact zero series.
inline Lazy lazy_zero() { return Lazy::exact(QSeries::zero()); }

inline Lazy lazy_product(const std::vector<Lazy>& factors) {
  if (factors.empty()) return Lazy::constant(1);
  Lazy acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = acc * factors[i];
  return acc;
}

inline Lazy lazy_sum(const std::vector<Lazy>& terms) {
  if (terms.empty()) return lazy_zero();
  Lazy acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) acc = acc + terms[i];
  return acc;
}

}  // namespace qmock
