#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmock/error.hpp"
#include "qmock/rational.hpp"

namespace qmock {

using Exponent = std::int64_t;

/// Order value of a series whose every coefficient is known (a Laurent
/// polynomial). Arithmetic on orders saturates at this value.
inline constexpr Exponent kExactOrder = Exponent{1} << 52;

namespace detail {

inline bool unbounded(Exponent e) { return e >= kExactOrder / 2; }

inline Exponent sat_add(Exponent a, Exponent b) {
  if (unbounded(a) || unbounded(b)) return kExactOrder;
  return a + b;
}

inline Exponent floor_div(Exponent a, Exponent b) {
  Exponent q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer lcm_of_denominators(std::span<const std::pair<Exponent, Rational>> terms) {
  Integer l = 1;
  for (const auto& [e, c] : terms) {
    if (c.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  return l;
}

}  // namespace detail

/// Truncated Laurent series in q with exact rational coefficients.
///
/// Coefficients are known for every exponent <= order(); nothing is known
/// above it. Stored terms are sorted, nonzero and never exceed the order.
/// The zero series has min_exp() == order() + 1 (or kExactOrder when exact).
class QSeries {
 public:
  using Term = std::pair<Exponent, Rational>;

  QSeries() = default;

  static QSeries zero(Exponent order = kExactOrder) {
    QSeries s;
    s.order_ = order;
    return s;
  }

  static QSeries constant(const Rational& c) { return monomial(c, 0); }

  static QSeries monomial(const Rational& c, Exponent e, Exponent order = kExactOrder) {
    QSeries s;
    s.order_ = order;
    if (c != 0 && e <= order) s.terms_.emplace_back(e, c);
    return s;
  }

  /// Accepts unsorted input with repeated exponents; sums duplicates and
  /// drops zeros and anything above `order`.
  static QSeries from_terms(std::vector<Term> terms, Exponent order = kExactOrder) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& l, const Term& r) { return l.first < r.first; });
    QSeries s;
    s.order_ = order;
    for (auto& [e, c] : terms) {
      if (e > order) break;
      if (!s.terms_.empty() && s.terms_.back().first == e) {
        s.terms_.back().second += c;
        if (s.terms_.back().second == 0) s.terms_.pop_back();
      } else if (c != 0) {
        s.terms_.emplace_back(e, std::move(c));
      }
    }
    return s;
  }

  /// dense[i] is the coefficient of q^(lo + i).
  template <typename Coeff>
  static QSeries from_dense(Exponent lo, const std::vector<Coeff>& dense, Exponent order) {
    QSeries s;
    s.order_ = order;
    for (std::size_t i = 0; i < dense.size(); ++i) {
      const Exponent e = lo + static_cast<Exponent>(i);
      if (e > order) break;
      if (dense[i] != 0) s.terms_.emplace_back(e, Rational(dense[i]));
    }
    return s;
  }

  Exponent order() const { return order_; }
  bool exact() const { return detail::unbounded(order_); }
  bool is_zero() const { return terms_.empty(); }

  Exponent min_exp() const {
    if (!terms_.empty()) return terms_.front().first;
    return exact() ? kExactOrder : order_ + 1;
  }

  Exponent max_exp() const { return terms_.empty() ? min_exp() : terms_.back().first; }

  std::span<const Term> terms() const { return terms_; }

  Rational coeff(Exponent e) const {
    if (e > order_) {
      throw Error(ErrorKind::InsufficientPrecision,
                  "coefficient of q^" + std::to_string(e) + " requested beyond order " +
                      std::to_string(order_));
    }
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, Exponent x) { return t.first < x; });
    if (it != terms_.end() && it->first == e) return it->second;
    return 0;
  }

  bool all_integral() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return t.second.get_den() == 1; });
  }

  QSeries truncated(Exponent n) const {
    if (n >= order_) return *this;
    QSeries s;
    s.order_ = n;
    for (const auto& t : terms_) {
      if (t.first > n) break;
      s.terms_.push_back(t);
    }
    return s;
  }

  /// Multiplication by q^k.
  QSeries shifted(Exponent k) const {
    QSeries s = *this;
    for (auto& t : s.terms_) t.first += k;
    s.order_ = detail::sat_add(order_, k);
    return s;
  }

  QSeries scaled(const Rational& c) const {
    if (c == 0) return zero(order_);
    QSeries s = *this;
    for (auto& t : s.terms_) t.second *= c;
    return s;
  }

  QSeries operator-() const { return scaled(-1); }

  /// Same terms and same order.
  bool identical(const QSeries& other) const {
    return order_ == other.order_ && terms_ == other.terms_;
  }

 private:
  std::vector<Term> terms_;
  Exponent order_ = kExactOrder;
};

inline QSeries series_add(const QSeries& a, const QSeries& b) {
  const Exponent order = std::min(a.order(), b.order());
  std::vector<QSeries::Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      if (ia->first > order) break;
      out.push_back(*ia++);
    } else if (ia == ea || ib->first < ia->first) {
      if (ib->first > order) break;
      out.push_back(*ib++);
    } else {
      if (ia->first > order) break;
      Rational c = ia->second + ib->second;
      if (c != 0) out.emplace_back(ia->first, std::move(c));
      ++ia;
      ++ib;
    }
  }
  return QSeries::from_terms(std::move(out), order);
}

inline QSeries series_sub(const QSeries& a, const QSeries& b) { return series_add(a, -b); }

/// Cauchy product. The result order is
/// min(a.order + b.min_exp, b.order + a.min_exp, cap).
inline QSeries series_mul(const QSeries& a, const QSeries& b, Exponent cap = kExactOrder) {
  const Exponent order = std::min({detail::sat_add(a.order(), b.min_exp()),
                                   detail::sat_add(b.order(), a.min_exp()), cap});
  if (a.is_zero() || b.is_zero()) return QSeries::zero(order);

  const Exponent lo = a.min_exp() + b.min_exp();
  Exponent hi = a.max_exp() + b.max_exp();
  if (!detail::unbounded(order)) hi = std::min(hi, order);
  if (hi < lo) return QSeries::zero(order);

  // Clear denominators so the convolution runs over integers.
  const Integer da = detail::lcm_of_denominators(a.terms());
  const Integer db = detail::lcm_of_denominators(b.terms());
  auto integral = [](const QSeries& s, const Integer& d) {
    std::vector<std::pair<Exponent, Integer>> v;
    v.reserve(s.terms().size());
    for (const auto& [e, c] : s.terms()) {
      Integer n = c.get_num();
      if (d != 1) n = n * (d / c.get_den());
      v.emplace_back(e, std::move(n));
    }
    return v;
  };
  const auto ai = integral(a, da);
  const auto bi = integral(b, db);

  std::vector<Integer> acc(static_cast<std::size_t>(hi - lo + 1));
  const Exponent bmin = b.min_exp();
  for (const auto& [ea, ca] : ai) {
    if (ea + bmin > hi) break;
    for (const auto& [eb, cb] : bi) {
      const Exponent e = ea + eb;
      if (e > hi) break;
      mpz_addmul(acc[static_cast<std::size_t>(e - lo)].get_mpz_t(), ca.get_mpz_t(),
                 cb.get_mpz_t());
    }
  }

  const Integer den = da * db;
  std::vector<QSeries::Term> out;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (acc[i] == 0) continue;
    Rational c(acc[i], den);
    c.canonicalize();
    out.emplace_back(lo + static_cast<Exponent>(i), std::move(c));
  }
  return QSeries::from_terms(std::move(out), order);
}

inline QSeries operator+(const QSeries& a, const QSeries& b) { return series_add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return series_sub(a, b); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return series_mul(a, b); }

/// b with a*b = 1 through q^n. b.min_exp() == -a.min_exp(); the order is
/// lowered to a.order() - 2*a.min_exp() when a is not known far enough.
inline QSeries series_invert(const QSeries& a, Exponent n) {
  if (a.is_zero()) {
    throw Error(ErrorKind::ZeroLeadingTerm, "cannot invert a series that is zero through q^" +
                                                std::to_string(a.order()));
  }
  const Exponent m = a.min_exp();
  const Exponent order = std::min(n, detail::sat_add(a.order(), -2 * m));
  if (order < -m) return QSeries::zero(order);
  const auto len = static_cast<std::size_t>(order + m + 1);

  // u = a / q^m, scaled by d to have integer coefficients.
  const Integer d = detail::lcm_of_denominators(a.terms());
  std::vector<Integer> u(len);
  for (const auto& [e, c] : a.terms()) {
    const Exponent i = e - m;
    if (i >= static_cast<Exponent>(len)) break;
    u[static_cast<std::size_t>(i)] = c.get_num() * (d / c.get_den());
  }

  std::vector<QSeries::Term> out;
  if (u[0] == 1 || u[0] == -1) {
    std::vector<Integer> v(len);
    const bool neg = u[0] < 0;
    Integer acc;
    for (std::size_t k = 0; k < len; ++k) {
      acc = (k == 0) ? 1 : 0;
      for (std::size_t i = 1; i <= k; ++i) {
        if (u[i] != 0) mpz_submul(acc.get_mpz_t(), u[i].get_mpz_t(), v[k - i].get_mpz_t());
      }
      v[k] = neg ? Integer(-acc) : acc;
      if (v[k] != 0) out.emplace_back(static_cast<Exponent>(k) - m, Rational(v[k] * d));
    }
  } else {
    std::vector<Rational> v(len);
    const Rational u0(u[0]);
    Rational acc;
    for (std::size_t k = 0; k < len; ++k) {
      acc = (k == 0) ? 1 : 0;
      for (std::size_t i = 1; i <= k; ++i) {
        if (u[i] != 0 && v[k - i] != 0) acc -= Rational(u[i]) * v[k - i];
      }
      v[k] = acc / u0;
      if (v[k] != 0) out.emplace_back(static_cast<Exponent>(k) - m, v[k] * Rational(d));
    }
  }
  return QSeries::from_terms(std::move(out), order);
}

/// q -> sign * q^m. Gaps below m*order + m - 1 are certified.
inline QSeries series_substitute(const QSeries& a, int sign, Exponent m) {
  if (m < 1) throw Error(ErrorKind::PreconditionFailed, "substitution exponent must be >= 1");
  std::vector<QSeries::Term> out;
  out.reserve(a.terms().size());
  for (const auto& [e, c] : a.terms()) {
    const bool flip = sign < 0 && (e % 2 != 0);
    out.emplace_back(e * m, flip ? Rational(-c) : c);
  }
  const Exponent order = a.exact() ? kExactOrder : a.order() * m + (m - 1);
  return QSeries::from_terms(std::move(out), order);
}

inline QSeries series_dilate(const QSeries& a, Exponent m) { return series_substitute(a, 1, m); }

struct Mismatch {
  Exponent exponent;
  Rational left;
  Rational right;
};

/// Result of comparing two series through a fixed order.
struct EqualityReport {
  std::optional<Mismatch> mismatch;

  bool equal() const { return !mismatch.has_value(); }
  explicit operator bool() const { return equal(); }
};

inline EqualityReport series_eq_upto(const QSeries& a, const QSeries& b, Exponent n) {
  if (a.order() < n || b.order() < n) {
    throw Error(ErrorKind::InsufficientPrecision,
                "comparison through q^" + std::to_string(n) + " but operands are known to q^" +
                    std::to_string(a.order()) + " and q^" + std::to_string(b.order()));
  }
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    const Exponent xa = ia != ea ? ia->first : kExactOrder;
    const Exponent xb = ib != eb ? ib->first : kExactOrder;
    const Exponent e = std::min(xa, xb);
    if (e > n) break;
    Rational ca = xa == e ? ia->second : Rational(0);
    Rational cb = xb == e ? ib->second : Rational(0);
    if (ca != cb) return {Mismatch{e, ca, cb}};
    if (xa == e) ++ia;
    if (xb == e) ++ib;
  }
  return {};
}

}  // namespace qmock
