#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qmock/lazy.hpp"
#include "qmock/products.hpp"
#include "qmock/theta_quotient.hpp"

namespace qmock {

/// f_{a,b,c}(x, y, q^d). Quadratic exponents are scaled by d; the exponents
/// of x and y are literal.
struct FSpec {
  Exponent a = 1, b = 1, c = 1;
  ThetaArg x, y;
  Exponent base_dilation = 1;

  bool indefinite() const { return b * b > a * c; }

  void validate() const {
    if (a <= 0 || c <= 0 || b <= 0 || base_dilation <= 0) {
      throw Error(ErrorKind::PreconditionFailed, "f_{a,b,c} needs a, b, c > 0 and d >= 1");
    }
  }

  std::string str() const {
    std::string s = "f_{" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                    "}(" + x.str() + "," + y.str() + ",q";
    if (base_dilation != 1) s += "^" + std::to_string(base_dilation);
    return s + ")";
  }
};

namespace detail {

inline Exponent binom2(Exponent n) { return n * (n - 1) / 2; }

/// One quadrant of the Hecke sum: terms
/// sign * (-1)^{r+s} sx^r sy^s q^{d(a C(r,2) + b r s + c C(s,2)) + lx r + ly s}
/// over r >= r0, s >= s0.
struct Quadrant {
  Exponent a, b, c, d, lx, ly;
  int sx, sy, sign;
  Exponent r0, s0;

  Exponent exponent(Exponent r, Exponent s) const {
    return d * (a * binom2(r) + b * r * s + c * binom2(s)) + lx * r + ly * s;
  }

  // lower bound of row r: the b r s term is nonnegative on the quadrant
  Exponent row_floor(Exponent r) const {
    const Exponent sv = std::max(s0, floor_div(d * c - 2 * ly, 2 * d * c));
    Exponent best = d * c * binom2(s0) + ly * s0;
    for (Exponent s = std::max(s0, sv - 1); s <= sv + 1; ++s) best = std::min(best, d * c * binom2(s) + ly * s);
    return d * a * binom2(r) + lx * r + best;
  }

  bool row_rising(Exponent r) const { return d * a * r + lx >= 0; }
  bool col_rising(Exponent r, Exponent s) const { return d * c * s + d * b * r + ly >= 0; }

  template <typename Visit>
  void scan(Exponent limit, Visit&& visit) const {
    for (Exponent r = r0;; ++r) {
      if (row_floor(r) > limit) {
        if (row_rising(r)) break;
        continue;
      }
      for (Exponent s = s0;; ++s) {
        const Exponent e = exponent(r, s);
        if (e > limit) {
          if (col_rising(r, s)) break;
          continue;
        }
        int t = sign;
        if ((r + s) % 2 != 0) t = -t;
        if (sx < 0 && r % 2 != 0) t = -t;
        if (sy < 0 && s % 2 != 0) t = -t;
        visit(e, t);
      }
    }
  }
};

inline std::vector<Quadrant> hecke_quadrants(const FSpec& f) {
  // r = -R, s = -S with R, S >= 1 turns the negative quadrant into the same
  // shape with linear coefficients d a - ex and d c - ey
  const Exponent d = f.base_dilation;
  return {
      Quadrant{f.a, f.b, f.c, d, f.x.exp, f.y.exp, f.x.sign, f.y.sign, 1, 0, 0},
      Quadrant{f.a, f.b, f.c, d, d * f.a - f.x.exp, d * f.c - f.y.exp, f.x.sign, f.y.sign, -1, 1, 1},
  };
}

}  // namespace detail

/// f_{a,b,c}(x, y, q^d) through q^order.
inline QSeries hecke_f(const FSpec& spec, Exponent order) {
  spec.validate();
  std::vector<QSeries::Term> terms;
  for (const auto& quad : detail::hecke_quadrants(spec)) {
    quad.scan(order, [&](Exponent e, int t) { terms.emplace_back(e, Rational(t)); });
  }
  return QSeries::from_terms(std::move(terms), order);
}

/// Smallest exponent of any term of the Hecke sum.
inline Exponent hecke_lower_bound(const FSpec& spec) {
  spec.validate();
  Exponent best = kExactOrder;
  for (const auto& quad : detail::hecke_quadrants(spec)) {
    Exponent local = quad.exponent(quad.r0, quad.s0);
    // any term below `local` must lie in a row whose floor is below it
    for (Exponent r = quad.r0;; ++r) {
      if (quad.row_floor(r) > local) {
        if (quad.row_rising(r)) break;
        continue;
      }
      for (Exponent s = quad.s0;; ++s) {
        const Exponent e = quad.exponent(r, s);
        local = std::min(local, e);
        if (quad.col_rising(r, s)) break;
      }
    }
    best = std::min(best, local);
  }
  return best;
}

inline Lazy lazy_hecke_f(const FSpec& spec) {
  return Lazy(hecke_lower_bound(spec), [spec](Exponent n) { return hecke_f(spec, n); },
              spec.str());
}

/// m(x, q^M, z).
struct AppellSpec {
  ThetaArg x;
  Exponent modulus = 1;
  ThetaArg z;

  std::string str() const {
    return "m(" + x.str() + ",q^" + std::to_string(modulus) + "," + z.str() + ")";
  }

  void validate() const {
    if (modulus < 1) throw Error(ErrorKind::PreconditionFailed, "Appell-Lerch modulus must be positive");
    if (theta_vanishes(z, modulus)) {
      throw Error(ErrorKind::DivisionByZeroTheta,
                  str() + ": j(z, q^" + std::to_string(modulus) + ") vanishes");
    }
    const ThetaArg xz = x * z;
    if (xz.sign > 0 && xz.exp % modulus == 0) {
      const Exponent r = 1 - xz.exp / modulus;
      throw Error(ErrorKind::PoleAtTerm, str() + " has the pole 1/(1 - q^0) at r = " + std::to_string(r));
    }
  }
};

namespace detail {

/// Pieces of the r-th numerator term (-1)^r q^{M C(r,2)} z^r / (1 - s q^{d_r}).
struct AppellTerm {
  Exponent base;  // M C(r,2) + ez r
  Exponent d;     // (r-1) M + ex + ez
  int sign;       // (-1)^r sz^r

  Exponent min_exponent() const { return d < 0 ? base - d : base; }
};

inline AppellTerm appell_term(const AppellSpec& s, Exponent r) {
  const Exponent m = s.modulus;
  int sg = (r % 2 != 0) ? -1 : 1;
  if (s.z.sign < 0 && r % 2 != 0) sg = -sg;
  return {m * binom2(r) + s.z.exp * r, (r - 1) * m + s.x.exp + s.z.exp, sg};
}

/// min_exponent(r) is convex in r (a maximum of two convex quadratics), so
/// its minimizer can be found by walking downhill.
inline Exponent appell_argmin(const AppellSpec& s) {
  Exponent r = -floor_div(s.z.exp, s.modulus);
  auto f = [&](Exponent k) { return appell_term(s, k).min_exponent(); };
  while (f(r - 1) < f(r)) --r;
  while (f(r + 1) < f(r)) ++r;
  return r;
}

inline QSeries appell_numerator(const AppellSpec& s, Exponent order) {
  const int ps = s.x.sign * s.z.sign;
  std::vector<QSeries::Term> terms;
  auto add_row = [&](Exponent r) {
    const AppellTerm t = appell_term(s, r);
    if (t.min_exponent() > order) return false;
    if (t.d > 0) {
      int c = t.sign;
      for (Exponent e = t.base; e <= order; e += t.d) {
        terms.emplace_back(e, Rational(c));
        c *= ps;
      }
    } else if (t.d < 0) {
      int c = -t.sign * ps;
      for (Exponent e = t.base - t.d; e <= order; e -= t.d) {
        terms.emplace_back(e, Rational(c));
        c *= ps;
      }
    } else {
      if (ps > 0) throw Error(ErrorKind::PoleAtTerm, s.str() + " at r = " + std::to_string(r));
      terms.emplace_back(t.base, Rational(t.sign, 2));
    }
    return true;
  };
  const Exponent r0 = appell_argmin(s);
  for (Exponent r = r0; add_row(r); ++r) {
  }
  for (Exponent r = r0 - 1; add_row(r); --r) {
  }
  return QSeries::from_terms(std::move(terms), order);
}

}  // namespace detail

/// The Appell-Lerch sum as numerator times 1/j(z, q^M).
inline Lazy lazy_appell_m(const AppellSpec& spec) {
  spec.validate();
  const Exponent lb = detail::appell_term(spec, detail::appell_argmin(spec)).min_exponent();
  Lazy numerator(lb, [spec](Exponent n) { return detail::appell_numerator(spec, n); },
                 "num " + spec.str());
  return numerator * lazy_theta(spec.z, spec.modulus).inverse();
}

inline QSeries appell_m(const AppellSpec& spec, Exponent order) {
  return lazy_appell_m(spec).at(order);
}

/// g_{a,b,c}(x, y, q^d, z1, z0).
inline Lazy lazy_hm_g(Exponent a, Exponent b, Exponent c, ThetaArg x, ThetaArg y, ThetaArg z1,
                      ThetaArg z0, Exponent d = 1) {
  using detail::binom2;
  const Exponent D = b * b - a * c;
  const ThetaArg mx = -x, my = -y;
  std::vector<Lazy> terms;
  auto half = [&](Exponent a_, Exponent c_, ThetaArg u, ThetaArg mv, ThetaArg mu_, ThetaArg z) {
    // sum_{t<a_} (-v)^t q^{c_ C(t,2)} j(q^{bt} u, q^{a_}) m(-q^{...} (-v)^{a_}/(-u)^b, q^{a_ D}, z)
    for (Exponent t = 0; t < a_; ++t) {
      const ThetaArg ju = ThetaArg::q(d * b * t) * u;
      if (theta_vanishes(ju, d * a_)) continue;
      const ThetaArg mono = mv.pow(t) * ThetaArg::q(d * c_ * binom2(t));
      const ThetaArg mx_arg = ThetaArg::neg_q(d * (a_ * binom2(b + 1) - c_ * binom2(a_ + 1) - t * D)) *
                              mv.pow(a_) / mu_.pow(b);
      terms.push_back(Lazy::arg(mono) * lazy_theta(ju, d * a_) *
                      lazy_appell_m({mx_arg, d * a_ * D, z}));
    }
  };
  half(a, c, x, my, mx, z0);
  half(c, a, y, mx, my, z1);
  return lazy_sum(terms);
}

/// Theta correction of the f_{n,n+2,n} and f_{n,n+4,n} expansions, in base q^d.
inline Lazy lazy_theta_correction(Exponent n, int p, ThetaArg x, ThetaArg y, Exponent d = 1) {
  if (n < 1 || n % 2 == 0) throw Error(ErrorKind::PreconditionFailed, "theta correction needs odd n");
  auto Q = [d](Exponent e) { return ThetaArg::q(d * e); };
  auto NQ = [d](Exponent e) { return ThetaArg::neg_q(d * e); };
  auto Jm = [d](Exponent m) { return ThetaFactor{ThetaArg::q(d * m), d * 3 * m, 1}; };
  auto Jam = [d](Exponent a, Exponent m) { return ThetaFactor{ThetaArg::q(d * a), d * m, 1}; };
  auto jf = [d](ThetaArg u, Exponent m) { return ThetaFactor{u, d * m, 1}; };
  auto quot = [](ThetaArg mono, std::vector<ThetaFactor> num, std::vector<ThetaFactor> den) {
    ThetaQuotient tq;
    tq.mono = mono;
    for (auto f : num) tq.factors.push_back(f);
    for (auto f : den) {
      f.power = -f.power;
      tq.factors.push_back(f);
    }
    return tq.lazy();
  };
  const ThetaArg yx = y / x;
  const ThetaArg ynxn = y.pow(n) / x.pow(n);
  const ThetaArg x2y2 = x.pow(2) * y.pow(2);

  if (p == 2) {
    const Exponent m4 = 4 * (n + 1);
    // y^{(n+1)/2} / (q^{(n^2-3)/2} x^{(n-3)/2})
    const ThetaArg mono = y.pow((n + 1) / 2) * Q(-(n * n - 3) / 2) * x.pow(-(n - 3) / 2);
    return quot(mono,
                {Jam(2 * n, 4 * n), Jam(4 * (n + 1), 8 * (n + 1)), jf(yx, m4),
                 jf(Q(n + 2) * x * y, m4), jf(Q(2 * n) / x2y2, 8 * (n + 1))},
                {jf(ynxn, 4 * n * (n + 1)), jf(NQ(n + 2) * x.pow(2), m4),
                 jf(NQ(n + 2) * y.pow(2), m4)});
  }
  if (p != 4) throw Error(ErrorKind::PreconditionFailed, "theta correction needs p = 2 or 4");

  const Exponent K = 2 * n + 4;
  const ThetaArg myx = -yx;
  const ThetaArg mono = Q(-(n * n + n - 3)) * x.pow(-(n - 3) / 2) * y.pow((n + 1) / 2);
  // The y^4 in the third denominator and the y^2/x^2 in the first S1 bracket
  // term are required: without either, g - theta disagrees with the double sum.
  Lazy pre = quot(mono, {jf(yx, 4 * K)},
                  {jf(ynxn, 4 * n * K), jf(NQ(2 * n + 8) * x.pow(4), 4 * K),
                   jf(NQ(2 * n + 8) * y.pow(4), 4 * K)});

  Lazy s1 = quot(Q(0),
                 {jf(Q(6 * n + 16) * x2y2, 4 * K), jf(NQ(2 * K) * yx, 4 * K),
                  jf(Q(n + 4) * x * y, 2 * K)},
                 {ThetaFactor{Q(2 * K), d * 6 * K, 3}, Jm(8 * K)});
  Lazy s1a = quot(Q(0),
                  {jf(NQ(2 * n + 8) * x2y2, 4 * K), jf(Q(2 * K) * yx.pow(2), 4 * K),
                   ThetaFactor{Q(4 * K), d * 12 * K, 2}},
                  {});
  Lazy s1b = quot(Q(n + 4) * x.pow(2),
                  {jf(NQ(6 * n + 16) * x2y2, 4 * K), ThetaFactor{Q(2 * K) * yx, d * 4 * K, 2},
                   ThetaFactor{myx, d * 4 * K, 2}},
                  {Jm(4 * K)});
  Lazy S1 = s1 * (s1a + s1b);

  Lazy s2 = quot(Q(0),
                 {jf(Q(2 * n + 8) * x2y2, 4 * K), jf(myx, 4 * K), jf(Q(3 * n + 8) * x * y, 2 * K)},
                 {ThetaFactor{Q(2 * K), d * 6 * K, 2}});
  Lazy s2a = quot(Q(n + 1) / y,
                  {jf(NQ(2 * n + 8) * x2y2, 4 * K), jf(Q(2 * K) * yx.pow(2), 4 * K), Jm(8 * K)},
                  {Jm(4 * K)});
  Lazy s2b = quot(Q(1) * x,
                  {jf(NQ(6 * n + 16) * x2y2, 4 * K),
                   ThetaFactor{Q(4 * K) * yx.pow(2), d * 8 * K, 2}},
                  {Jm(8 * K)});
  Lazy S2 = s2 * (s2a + s2b);

  Lazy brace = quot(Q(0), {Jam(4 * n, 16 * n)}, {}) * S1 -
               quot(Q(1), {Jam(8 * n, 16 * n)}, {}) * S2;
  return pre * brace;
}

/// Right-hand side of the f_{n,n+p,n} expansion: g minus the theta correction.
inline Lazy lazy_hm_expand(Exponent n, int p, ThetaArg x, ThetaArg y, Exponent d = 1) {
  if (n < 1) throw Error(ErrorKind::PreconditionFailed, "hm_expand needs n >= 1");
  if (p != 1 && p != 2 && p != 4) throw Error(ErrorKind::PreconditionFailed, "hm_expand needs p in {1,2,4}");
  if (p != 1 && n % 2 == 0) throw Error(ErrorKind::PreconditionFailed, "p = 2, 4 need odd n");
  const ThetaArg z1 = y.pow(n) / x.pow(n);
  const ThetaArg z0 = x.pow(n) / y.pow(n);
  Lazy g = lazy_hm_g(n, n + p, n, x, y, z1, z0, d);
  if (p == 1) return g;
  return g - lazy_theta_correction(n, p, x, y, d);
}

inline QSeries hm_expand(Exponent n, int p, ThetaArg x, ThetaArg y, Exponent d, Exponent order) {
  return lazy_hm_expand(n, p, x, y, d).at(order);
}

inline QSeries hm_g(Exponent a, Exponent b, Exponent c, ThetaArg x, ThetaArg y, ThetaArg z1,
                    ThetaArg z0, Exponent d, Exponent order) {
  return lazy_hm_g(a, b, c, x, y, z1, z0, d).at(order);
}

inline QSeries theta_correction(Exponent n, int p, ThetaArg x, ThetaArg y, Exponent d, Exponent order) {
  return lazy_theta_correction(n, p, x, y, d).at(order);
}

}  // namespace qmock
