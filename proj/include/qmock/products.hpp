#pragma once

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "qmock/lazy.hpp"
#include "qmock/series.hpp"
#include "qmock/theta_arg.hpp"

namespace qmock {

namespace detail {

/// sign * q^shift * prod (1 - s_k q^{d_k}) with every d_k >= 1, expanded
/// densely over the integers.
struct BinomialProduct {
  int sign = 1;
  Exponent shift = 0;
  Integer constant = 1;  // from factors 1 - s q^0
  std::vector<std::pair<int, Exponent>> factors;

  void add_factor(int s, Exponent d) {
    if (d == 0) {
      constant *= (1 - s);
    } else if (d < 0) {
      // 1 - s q^d = -s q^d (1 - s q^-d)
      sign *= -s;
      shift += d;
      factors.emplace_back(s, -d);
    } else {
      factors.emplace_back(s, d);
    }
  }

  /// Expansion through q^n; exact when n is unbounded and the product finite.
  QSeries expand(Exponent n) const {
    if (constant == 0) return QSeries::zero(n);
    Exponent total = 0;
    for (const auto& f : factors) total = sat_add(total, f.second);
    const Exponent cap = unbounded(n) ? total : std::min(total, n - shift);
    if (cap < 0) return QSeries::zero(n);
    std::vector<Integer> c(static_cast<std::size_t>(cap + 1));
    c[0] = constant * sign;
    Exponent deg = 0;
    for (const auto& [s, d] : factors) {
      if (d > cap) continue;
      deg = std::min(cap, deg + d);
      for (Exponent i = deg; i >= d; --i) {
        auto& dst = c[static_cast<std::size_t>(i)];
        const auto& src = c[static_cast<std::size_t>(i - d)];
        if (src == 0) continue;
        if (s > 0) dst -= src; else dst += src;
      }
    }
    return QSeries::from_dense(shift, c, n);
  }
};

}  // namespace detail

/// (x; q^m)_n = prod_{k<n} (1 - x q^{km}). Exact unless a truncation order is
/// given, in which case the result is certified through q^order.
inline QSeries poch_finite(ThetaArg x, Exponent m, Exponent n, Exponent order = kExactOrder) {
  if (m < 1) throw Error(ErrorKind::PreconditionFailed, "Pochhammer step must be positive");
  if (n < 0) throw Error(ErrorKind::PreconditionFailed, "Pochhammer length must be nonnegative");
  detail::BinomialProduct p;
  for (Exponent k = 0; k < n; ++k) p.add_factor(x.sign, x.exp + k * m);
  return p.expand(order);
}

namespace detail {

inline QSeries poch_infinite_uncached(ThetaArg x, Exponent m, Exponent order) {
  BinomialProduct p;
  Exponent k = 0;
  for (; x.exp + k * m <= 0; ++k) {
    if (x.exp + k * m == 0 && x.sign > 0) {
      throw Error(ErrorKind::ZeroFactor, "(" + x.str() + "; q^" + std::to_string(m) +
                                             ")_inf has the factor 1 - q^0");
    }
    if (k > (1 << 20)) throw Error(ErrorKind::NonTerminating, "nonpositive factors do not end");
    p.add_factor(x.sign, x.exp + k * m);
  }
  const Exponent limit = order - p.shift;
  for (; x.exp + k * m <= limit; ++k) p.add_factor(x.sign, x.exp + k * m);
  return p.expand(order);
}

/// Read-through memo keyed by the product's parameters; it keeps the deepest
/// expansion seen and truncates on lookup.
class SeriesMemo {
 public:
  template <typename Compute>
  QSeries get(std::tuple<int, Exponent, Exponent> key, Exponent order, Compute&& compute) {
    {
      std::lock_guard lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end() && it->second.order() >= order) return it->second.truncated(order);
    }
    QSeries s = compute(order);
    std::lock_guard lock(mu_);
    auto it = memo_.find(key);
    if (it == memo_.end()) {
      memo_.emplace(key, s);
    } else if (s.order() > it->second.order()) {
      it->second = s;
    }
    return s;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, Exponent, Exponent>, QSeries> memo_;
};

inline SeriesMemo& poch_memo() {
  static SeriesMemo memo;
  return memo;
}

inline SeriesMemo& theta_memo() {
  static SeriesMemo memo;
  return memo;
}

}  // namespace detail

/// (x; q^m)_inf through q^order.
inline QSeries poch_infinite(ThetaArg x, Exponent m, Exponent order) {
  if (m < 1) throw Error(ErrorKind::PreconditionFailed, "Pochhammer step must be positive");
  return detail::poch_memo().get({x.sign, x.exp, m}, order, [&](Exponent n) {
    return detail::poch_infinite_uncached(x, m, n);
  });
}

/// Lowest exponent of (x; q^m)_inf (the factors with nonpositive exponent).
inline Exponent poch_infinite_lower_bound(ThetaArg x, Exponent m) {
  Exponent lb = 0;
  for (Exponent e = x.exp; e < 0; e += m) lb += e;
  return lb;
}

inline Lazy lazy_poch_infinite(ThetaArg x, Exponent m) {
  return Lazy(poch_infinite_lower_bound(x, m),
              [x, m](Exponent n) { return poch_infinite(x, m, n); },
              "(" + x.str() + ";q^" + std::to_string(m) + ")_inf");
}

/// True when j(x, q^m) vanishes identically.
inline bool theta_vanishes(ThetaArg x, Exponent m) {
  return x.sign > 0 && x.exp % m == 0;
}

/// Exponent of the n-th term of the bilateral theta sum.
inline Exponent theta_term_exponent(Exponent e, Exponent m, Exponent n) {
  return m * (n * (n - 1) / 2) + e * n;
}

/// Smallest exponent among the theta sum's terms. The true leading exponent
/// can be larger only through cancellation.
inline Exponent theta_lower_bound(ThetaArg x, Exponent m) {
  // vertex of m n(n-1)/2 + e n is at n = 1/2 - e/m
  const Exponent c = detail::floor_div(m - 2 * x.exp, 2 * m);
  Exponent best = theta_term_exponent(x.exp, m, c);
  for (Exponent n = c - 1; n <= c + 2; ++n) best = std::min(best, theta_term_exponent(x.exp, m, n));
  return best;
}

/// j(x, q^m) = sum_n (-x)^n q^{m n(n-1)/2}, expanded from the bilateral sum.
inline QSeries theta_j_sum(ThetaArg x, Exponent m, Exponent order) {
  if (m < 1) throw Error(ErrorKind::PreconditionFailed, "theta modulus must be positive");
  if (theta_vanishes(x, m)) return QSeries::zero();
  std::vector<QSeries::Term> terms;
  const Exponent c = detail::floor_div(m - 2 * x.exp, 2 * m);
  auto emit = [&](Exponent n) {
    const Exponent e = theta_term_exponent(x.exp, m, n);
    if (e > order) return false;
    const bool odd = (n % 2) != 0;
    // (-x)^n = (-sign)^n q^{e n}
    const int s = (odd && x.sign > 0) ? -1 : 1;
    terms.emplace_back(e, Rational(s));
    return true;
  };
  // c = floor(vertex): the exponent increases for n > c and for n < c
  for (Exponent n = c + 1; emit(n); ++n) {
  }
  for (Exponent n = c; emit(n); --n) {
  }
  return QSeries::from_terms(std::move(terms), order);
}

/// j(x, q^m) from the triple product (x)_inf (q^m/x)_inf (q^m)_inf, after
/// moving the exponent into [0, m) with j(q^{mk} x) = (-1)^k q^{-m C(k,2)} x^{-k} j(x).
inline QSeries theta_j_product(ThetaArg x, Exponent m, Exponent order) {
  if (m < 1) throw Error(ErrorKind::PreconditionFailed, "theta modulus must be positive");
  if (theta_vanishes(x, m)) return QSeries::zero();
  const Exponent k = detail::floor_div(x.exp, m);
  const ThetaArg x0{x.sign, x.exp - k * m};
  // prefactor (-1)^k q^{-m C(k,2)} x0^{-k}
  const Exponent shift = -m * (k * (k - 1) / 2) - x0.exp * k;
  const int psign = ((k % 2 != 0) ? -1 : 1) * x0.pow(-k).sign;
  const Exponent inner = order - shift;
  QSeries p = poch_infinite(x0, m, inner);
  p = series_mul(p, poch_infinite({x0.sign, m - x0.exp}, m, inner), inner);
  p = series_mul(p, poch_infinite(ThetaArg::q(m), m, inner), inner);
  return p.scaled(psign).shifted(shift);
}

/// The library's theta function; memoized bilateral sum.
inline QSeries theta_j(ThetaArg x, Exponent m, Exponent order) {
  if (m < 1) throw Error(ErrorKind::PreconditionFailed, "theta modulus must be positive");
  if (theta_vanishes(x, m)) return QSeries::zero();
  return detail::theta_memo().get({x.sign, x.exp, m}, order,
                                  [&](Exponent n) { return theta_j_sum(x, m, n); });
}

inline Lazy lazy_theta(ThetaArg x, Exponent m) {
  const std::string label = "j(" + x.str() + ",q^" + std::to_string(m) + ")";
  if (theta_vanishes(x, m)) return Lazy(kExactOrder, [](Exponent) { return QSeries::zero(); }, label);
  return Lazy(theta_lower_bound(x, m), [x, m](Exponent n) { return theta_j(x, m, n); }, label);
}

enum class JKind { Plain, Barred, Cubed };

/// J_{a,m} = j(q^a, q^m), Jbar_{a,m} = j(-q^a, q^m), J_m = J_{m,3m}.
struct JSymbol {
  JKind kind = JKind::Plain;
  Exponent a = 0;
  Exponent m = 1;

  ThetaArg arg() const {
    switch (kind) {
      case JKind::Barred: return ThetaArg::neg_q(a);
      case JKind::Cubed: return ThetaArg::q(m);
      case JKind::Plain: break;
    }
    return ThetaArg::q(a);
  }

  Exponent modulus() const { return kind == JKind::Cubed ? 3 * m : m; }

  std::string str() const {
    switch (kind) {
      case JKind::Cubed: return "J" + std::to_string(m);
      case JKind::Barred: return "Jb" + std::to_string(a) + "," + std::to_string(m);
      case JKind::Plain: break;
    }
    return "J" + std::to_string(a) + "," + std::to_string(m);
  }
};

inline QSeries j_symbol(JKind kind, Exponent a, Exponent m, Exponent order) {
  if (m < 1) throw Error(ErrorKind::PreconditionFailed, "J-symbol modulus must be positive");
  const JSymbol s{kind, a, m};
  return theta_j(s.arg(), s.modulus(), order);
}

inline Lazy lazy_j_symbol(const JSymbol& s) {
  Lazy l = lazy_theta(s.arg(), s.modulus());
  return Lazy(l.lower_bound(), [l](Exponent n) { return l.at(n); }, s.str());
}

}  // namespace qmock
