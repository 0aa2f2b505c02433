#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "qmock/bailey.hpp"

namespace qmock {

namespace detail {

/// sum_{j=lo}^{hi} q^{shift - A j^2 - B j}, exact; empty when hi < lo.
inline QSeries theta_block(Exponent shift, Exponent A, Exponent B, Exponent lo, Exponent hi) {
  std::vector<QSeries::Term> t;
  for (Exponent j = lo; j <= hi; ++j) t.emplace_back(shift - A * j * j - B * j, 1);
  return QSeries::from_terms(std::move(t));
}

inline Sequence closed_form(std::function<Frac(Exponent)> f) {
  return Sequence([f = std::move(f)](Exponent n, Exponent order) { return f(n).series(order); });
}

inline int sgn(Exponent n) { return n % 2 != 0 ? -1 : 1; }
inline Exponent tri(Exponent n) { return n * (n - 1) / 2; }  // C(n,2)
inline QSeries qq(Exponent n) { return poch_finite(ThetaArg::q(1), 1, n); }
inline QSeries q2q2(Exponent n) { return poch_finite(ThetaArg::q(2), 2, n); }
inline QSeries qq2(Exponent n) { return poch_finite(ThetaArg::q(1), 2, n); }  // (q;q^2)_n
inline QSeries lin(int sign, Exponent e) { return one_minus(sign, e); }     // 1 - sign q^e

/// Fixed pieces of the pairs built from blocks of the shape
///   alpha_{2n}   = c_e (1 - q^{4n}) q^{E0(n)} S_e(n),
///   alpha_{2n+1} = c_o (1 - q^{4n+2}) q^{E1(n)} S_o(n),
/// or, for pairs relative to q, of the shape 1/(1-q) (T1 + T2).
struct Block {
  Exponent A, B;          // exponent -A j^2 - B j
  Exponent lo_off, hi_off;  // j runs over [-n + lo_off, n + hi_off]
};

inline QSeries block(const Block& b, Exponent shift, Exponent n) {
  return theta_block(shift, b.A, b.B, -n + b.lo_off, n + b.hi_off);
}

/// Pairs relative to 1 with vanishing alpha_0: the even part carries
/// (1 - q^{4n}) q^{c2 n^2 + c1 n + c0} sum_{j=-n}^{n-1} ..., the odd part
/// -(1 - q^{4n+2}) q^{d2 n^2 + d1 n + d0} sum_{j=-n}^{n} ....
struct OddEvenShape {
  int even_sign;
  Exponent c2, c1, c0;
  Block even;
  int odd_sign;
  Exponent d2, d1, d0;
  Block odd;
};

inline Sequence odd_even_alpha(OddEvenShape s) {
  return closed_form([s](Exponent n) {
    const Exponent h = n / 2;
    Frac w;
    if (n % 2 == 0) {
      w.num = block(s.even, s.c2 * h * h + s.c1 * h + s.c0, h).scaled(s.even_sign) * lin(1, 4 * h);
    } else {
      w.num = block(s.odd, s.d2 * h * h + s.d1 * h + s.d0, h).scaled(s.odd_sign) * lin(1, 4 * h + 2);
    }
    return w;
  });
}

/// Pairs relative to q: alpha_n = sign/(1-q) (q^{P(h)} S_1 + q^{R(h)} S_2) with
/// separate shapes for even and odd n.
struct QPart {
  Exponent p2, p1, p0;
  Block b;
};

struct QShape {
  int even_sign;
  QPart e1, e2;
  int odd_sign;
  QPart o1, o2;
};

inline Sequence q_alpha(QShape s) {
  return closed_form([s](Exponent n) {
    const Exponent h = n / 2;
    auto part = [h](const QPart& p) { return block(p.b, p.p2 * h * h + p.p1 * h + p.p0, h); };
    Frac w;
    if (n % 2 == 0) {
      w.num = (part(s.e1) + part(s.e2)).scaled(s.even_sign);
    } else {
      w.num = (part(s.o1) + part(s.o2)).scaled(s.odd_sign);
    }
    return w.over(lin(1, 1));
  });
}

inline BaileyPair make_pair(std::string tag, int a_exp, Sequence alpha, Sequence beta) {
  BaileyPair p;
  p.a_exp = a_exp;
  p.step = 1;
  p.alpha = std::move(alpha);
  p.beta = std::move(beta);
  p.tag = std::move(tag);
  return p;
}

// Blocks used below, named by the quadratic form and the j range.
constexpr Block B2_0_nm1{2, 0, 0, -1}, B2_0_n{2, 0, 0, 0}, B2_0_n1{2, 0, -1, 0};
constexpr Block B2_2_nm1{2, 2, 0, -1}, B2_2_n{2, 2, 0, 0}, B2_2_n1{2, 2, -1, 0};
constexpr Block B1_0_n{1, 0, 0, 0}, B1_0_nm1{1, 0, 1, -1};
constexpr Block B1_1_n{1, 1, 0, 0}, B1_1_nm1{1, 1, 0, -1}, B1_1_n1{1, 1, -1, 0};
constexpr Block B4_3_nm1{4, 3, 0, -1}, B4_3_n{4, 3, 0, 0}, B4_3_n1{4, 3, -1, 0};
constexpr Block B4_1_nm1{4, 1, 0, -1}, B4_1_n{4, 1, 0, 0}, B4_1_n1{4, 1, -1, 0};

inline BaileyPair build_pair(const std::string& id);

}  // namespace detail

/// Identifiers known to pair_catalog(), in display order.
inline const std::vector<std::string>& pair_ids() {
  static const std::vector<std::string> ids{
      "unit", "slater0", "slater1", "slater2", "slater3", "bk",   "bk_q", "bk1",  "bk1q",
      "andrews0", "andrews1", "andrews2", "cor1", "cor1q", "cor2", "cor2q", "cor3", "cor3q",
      "d1", "d1q", "d2", "d2q", "d3", "d3q"};
  return ids;
}

/// A named pair from the built-in catalog. Pairs are built once and shared, so
/// their memoized terms persist across calls.
inline BaileyPair pair_catalog(const std::string& id) {
  static std::mutex mu;
  static std::map<std::string, BaileyPair> built;
  {
    std::lock_guard lock(mu);
    auto it = built.find(id);
    if (it != built.end()) return it->second;
  }
  BaileyPair p = detail::build_pair(id);
  std::lock_guard lock(mu);
  return built.emplace(id, std::move(p)).first->second;
}

namespace detail {

inline BaileyPair build_pair(const std::string& id) {
  if (id == "unit") {
    return make_pair(id, 0, closed_form([](Exponent n) { return n == 0 ? Frac::mono(1, 0) : Frac::mono(0, 0); }),
                     closed_form([](Exponent n) { return Frac{}.over(qq(n) * qq(n)); }));
  }
  if (id == "slater0") {
    return make_pair(
        id, 0, closed_form([](Exponent n) { return Frac::mono(n == 0 ? 1 : 2 * sgn(n), 0); }),
        closed_form([](Exponent n) { return Frac::mono(sgn(n), 0).over(q2q2(n)); }));
  }
  if (id == "slater1") {
    return make_pair(
        id, 0,
        closed_form([](Exponent n) {
          if (n == 0) return Frac::mono(1, 0);
          return Frac{QSeries::from_terms({{n, Rational(sgn(n))}, {-n, Rational(sgn(n))}}), QSeries::constant(1)};
        }),
        closed_form([](Exponent n) { return Frac::mono(sgn(n), -n).over(q2q2(n)); }));
  }
  if (id == "slater2") {
    return make_pair(
        id, 0,
        closed_form([](Exponent n) {
          if (n == 0) return Frac::mono(1, 0);
          return Frac::mono(sgn(n), -tri(n + 1)).times(QSeries::from_terms({{0, 1}, {n, 1}}));
        }),
        closed_form([](Exponent n) { return Frac::mono(sgn(n), -tri(n + 1)).over(qq(n)); }));
  }
  if (id == "slater3") {
    return make_pair(
        id, 0,
        closed_form([](Exponent n) {
          if (n == 0) return Frac::mono(1, 0);
          return Frac::mono(sgn(n), -n * (n + 3) / 2).times(QSeries::from_terms({{0, 1}, {3 * n, 1}}));
        }),
        closed_form([](Exponent n) { return Frac::mono(sgn(n), -n * (n + 3) / 2).over(qq(n)); }));
  }
  if (id == "bk") {
    return make_pair(id, 0, odd_even_alpha({1, 2, -2, 0, B2_2_nm1, -1, 2, 0, 0, B2_0_n}),
                     closed_form([](Exponent n) {
                       if (n == 0) return Frac::mono(0, 0);
                       return Frac::mono(sgn(n), 0).times(qq2(n - 1)).over(qq(2 * n - 1));
                     }));
  }
  if (id == "bk_q") {
    return make_pair(id, 1,
                     q_alpha({1, {2, 2, 0, B2_2_nm1}, {2, 0, 0, B2_0_n}, -1, {2, 4, 2, B2_0_n}, {2, 2, 0, B2_2_n1}}),
                     closed_form([](Exponent n) { return Frac::mono(sgn(n), 0).times(qq2(n)).over(qq(2 * n + 1)); }));
  }
  if (id == "bk1" || id == "bk1q") {
    const bool q = id == "bk1q";
    BaileyPair p = bailey_step(pair_catalog(q ? "bk_q" : "bk"), RhoPair::one(ThetaArg::neg_q(q ? 1 : 0)));
    p.tag = id;
    return p;
  }
  if (id == "andrews0") {
    return make_pair(
        id, 0, closed_form([](Exponent n) {
          const Exponent h = n / 2;
          Frac w;
          if (n % 2 == 0) {
            w.num = block(B1_0_n, 3 * h * h + h, h) - block(B1_0_nm1, 3 * h * h - h, h);
          } else {
            w.num = block(B1_1_nm1, 3 * h * h + 2 * h, h) - block(B1_1_n1, 3 * h * h + 4 * h + 1, h);
          }
          return w;
        }),
        closed_form([](Exponent n) { return Frac{}.over(poch_finite(ThetaArg::q(n + 1), 1, n)); }));
  }
  if (id == "andrews1") {
    return make_pair(id, 0, odd_even_alpha({-1, 3, -2, 0, B1_1_nm1, 1, 3, 1, 0, B1_0_n}), closed_form([](Exponent n) {
                       if (n == 0) return Frac::mono(0, 0);
                       return Frac{}.over(poch_finite(ThetaArg::q(n), 1, n));
                     }));
  }
  if (id == "andrews2") {
    return make_pair(id, 1,
                     q_alpha({1, {3, 2, 0, B1_1_nm1}, {3, 1, 0, B1_0_n}, -1, {3, 5, 2, B1_0_n}, {3, 4, 1, B1_1_n1}}),
                     closed_form([](Exponent n) { return Frac{}.over(poch_finite(ThetaArg::q(n + 1), 1, n + 1)); }));
  }
  if (id == "cor1") {
    return make_pair(id, 0, odd_even_alpha({1, 2, -2, 1, B2_0_nm1, -1, 2, 0, 0, B2_2_n}), closed_form([](Exponent n) {
                       if (n == 0) return Frac::mono(0, 0);
                       return Frac::mono(sgn(n), 1 - n).over(q2q2(n - 1)).over(lin(1, 2 * n - 1));
                     }));
  }
  if (id == "cor1q") {
    return make_pair(id, 1,
                     q_alpha({1, {2, 0, 0, B2_2_n}, {2, 2, 1, B2_0_nm1}, -1, {2, 2, 1, B2_0_n1}, {2, 4, 2, B2_2_n}}),
                     closed_form([](Exponent n) {
                       return Frac::mono(sgn(n), -n).over(q2q2(n)).over(lin(1, 2 * n + 1));
                     }));
  }
  if (id == "cor2") {
    return make_pair(id, 0, odd_even_alpha({1, 2, -2, 0, B4_3_nm1, -1, 2, 0, 0, B4_1_n}), closed_form([](Exponent n) {
                       if (n == 0) return Frac::mono(0, 0);
                       return Frac::mono(sgn(n), -tri(n)).over(qq(n - 1)).over(lin(1, 2 * n - 1));
                     }));
  }
  if (id == "cor2q") {
    return make_pair(id, 1,
                     q_alpha({1, {2, 0, 0, B4_1_n}, {2, 2, 0, B4_3_nm1}, -1, {2, 2, 0, B4_3_n1}, {2, 4, 2, B4_1_n}}),
                     closed_form([](Exponent n) {
                       return Frac::mono(sgn(n), -tri(n + 1)).over(qq(n)).over(lin(1, 2 * n + 1));
                     }));
  }
  if (id == "cor3") {
    return make_pair(id, 0, odd_even_alpha({1, 2, -2, 1, B4_1_nm1, -1, 2, 0, 0, B4_3_n}), closed_form([](Exponent n) {
                       if (n == 0) return Frac::mono(0, 0);
                       return Frac::mono(sgn(n), 1 - tri(n + 1)).over(qq(n - 1)).over(lin(1, 2 * n - 1));
                     }));
  }
  if (id == "cor3q") {
    return make_pair(id, 1,
                     q_alpha({1, {2, 0, 0, B4_3_n}, {2, 2, 1, B4_1_nm1}, -1, {2, 2, 1, B4_1_n1}, {2, 4, 2, B4_3_n}}),
                     closed_form([](Exponent n) {
                       return Frac::mono(sgn(n), -n * (n + 3) / 2).over(qq(n)).over(lin(1, 2 * n + 1));
                     }));
  }
  if (id == "d1") {
    // the even part carries 2(1 - q^{2n}), the odd part -2(1 - q^{2n+1})
    return make_pair(
        id, 0, closed_form([](Exponent n) {
          const Exponent h = n / 2;
          Frac w;
          if (n % 2 == 0) {
            w.num = block(B2_0_nm1, 4 * h * h - h + 1, h).scaled(2) * lin(1, 2 * h);
          } else {
            w.num = block(B2_2_n, 4 * h * h + 3 * h + 1, h).scaled(-2) * lin(1, 2 * h + 1);
          }
          return w;
        }),
        Sequence([](Exponent n, Exponent order) {
          QSeries acc = QSeries::zero(order);
          const QSeries lead = poch_finite(ThetaArg::neg_q(1), 1, n);
          for (Exponent j = 1; j <= n; ++j) {
            Frac w = Frac::mono(sgn(j), tri(j) + 1);
            w.times(poch_finite(ThetaArg::neg_q(0), 1, j));
            w.over(lead).over(qq(n - j)).over(q2q2(j - 1)).over(lin(1, 2 * j - 1));
            acc = acc + w.series(order);
          }
          return acc;
        }));
  }
  if (id == "d1q") {
    return make_pair(id, 1,
                     q_alpha({1, {4, 1, 0, B2_2_n}, {4, 3, 1, B2_0_nm1}, -1, {4, 5, 2, B2_0_n1}, {4, 7, 3, B2_2_n}}),
                     Sequence([](Exponent n, Exponent order) {
                       QSeries acc = QSeries::zero(order);
                       const QSeries lead = poch_finite(ThetaArg::neg_q(1), 1, n);
                       for (Exponent j = 0; j <= n; ++j) {
                         Frac w = Frac::mono(sgn(j), tri(j));
                         w.over(lead).over(qq(n - j)).over(qq(j)).over(lin(1, 2 * j + 1));
                         acc = acc + w.series(order);
                       }
                       return acc;
                     }));
  }
  // d2/d3 and their q-versions: beta_n = sum_j (-1)^j q^{e(j)} / ((q)_{n-j} (q)_{j-1 or j} (1 - q^{2j -+ 1}))
  auto d_beta = [](Exponent first, std::function<Exponent(Exponent)> e) {
    return Sequence([first, e](Exponent n, Exponent order) {
      QSeries acc = QSeries::zero(order);
      for (Exponent j = first; j <= n; ++j) {
        Frac w = Frac::mono(sgn(j), e(j));
        if (first == 1) {
          w.over(qq(n - j)).over(qq(j - 1)).over(lin(1, 2 * j - 1));
        } else {
          w.over(qq(n - j)).over(qq(j)).over(lin(1, 2 * j + 1));
        }
        acc = acc + w.series(order);
      }
      return acc;
    });
  };
  if (id == "d2") {
    return make_pair(id, 0, odd_even_alpha({1, 6, -2, 0, B4_3_nm1, -1, 6, 4, 1, B4_1_n}),
                     d_beta(1, [](Exponent j) { return tri(j + 1); }));
  }
  if (id == "d2q") {
    return make_pair(id, 1,
                     q_alpha({1, {6, 2, 0, B4_1_n}, {6, 4, 0, B4_3_nm1}, -1, {6, 8, 2, B4_3_n1}, {6, 10, 4, B4_1_n}}),
                     d_beta(0, [](Exponent j) { return tri(j + 1); }));
  }
  if (id == "d3") {
    return make_pair(id, 0, odd_even_alpha({1, 6, -2, 1, B4_1_nm1, -1, 6, 4, 1, B4_3_n}),
                     d_beta(1, [](Exponent j) { return tri(j) + 1; }));
  }
  if (id == "d3q") {
    return make_pair(id, 1,
                     q_alpha({1, {6, 2, 0, B4_3_n}, {6, 4, 1, B4_1_nm1}, -1, {6, 8, 3, B4_1_n1}, {6, 10, 4, B4_3_n}}),
                     d_beta(0, [](Exponent j) { return tri(j); }));
  }
  throw Error(ErrorKind::UnknownId, "unknown pair id '" + id + "'");
}

}  // namespace detail

}  // namespace qmock
