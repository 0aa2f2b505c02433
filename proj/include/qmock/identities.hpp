#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmock/expr.hpp"
#include "qmock/pair_catalog.hpp"
#include "qmock/report.hpp"

namespace qmock {

/// c q^e prod (x; q^m)_inf^power times f_{a,b,c}(x, y, q^d).
struct HeckeForm {
  struct Part {
    ThetaArg x;
    Exponent m;
    int power;
  };
  Rational coeff = 1;
  Exponent exp = 0;
  std::vector<Part> parts;
  FSpec f;

  Lazy lazy() const {
    std::vector<Lazy> fs{Lazy::monomial(coeff, exp), lazy_hecke_f(f)};
    for (const auto& p : parts) {
      Lazy l = lazy_poch_infinite(p.x, p.m);
      if (p.power < 0) l = l.inverse();
      for (int i = 0; i < std::abs(p.power); ++i) fs.push_back(l);
    }
    return lazy_product(fs);
  }
};

/// The Bailey-lemma route to the double sum: double_sum * c q^e equals the
/// beta side of the limiting form for (pair, rho) at base q^dilation.
struct LimitPath {
  std::string pair;
  RhoPair rho;
  Exponent dilation = 1;
  Rational coeff = 1;
  Exponent exp = 0;
};

using TermFn = std::function<PochTerm(Exponent n, Exponent j)>;

struct IdentityEntry {
  std::string id;
  std::string sum_of;  // for corollary entries: the identity whose double sum is the left side
  // sum_factor * sum_{n >= first} sum_{j = j_first}^{n} term(n, j)
  TermFn term;
  Exponent first = 0;
  Exponent j_first = 0;
  bool starred = false;
  Rational sum_factor = 1;
  std::optional<HeckeForm> hecke;
  std::optional<std::string> appell;
  std::optional<std::string> classical;
  std::optional<LimitPath> path;
};

namespace detail {

inline constexpr ThetaArg kQ1 = ThetaArg::q(1), kQ2 = ThetaArg::q(2), kQ4 = ThetaArg::q(4);
inline constexpr ThetaArg kM0 = ThetaArg::neg_q(0), kM1 = ThetaArg::neg_q(1), kM2 = ThetaArg::neg_q(2);

inline HeckeForm hform(Rational c, Exponent e, std::vector<HeckeForm::Part> parts, Exponent a, Exponent b,
                       ThetaArg x, ThetaArg y, Exponent d = 1) {
  HeckeForm h;
  h.coeff = std::move(c);
  h.exp = e;
  h.parts = std::move(parts);
  h.f = FSpec{a, b, a, x, y, d};
  return h;
}

// prefactors that recur
inline std::vector<HeckeForm::Part> over_qinf() { return {{kQ1, 1, -1}}; }                    // 1/(q)_inf
inline std::vector<HeckeForm::Part> odd_over_even() { return {{kQ1, 2, 1}, {kQ2, 2, -1}}; }  // (q;q^2)_inf/(q^2;q^2)_inf
inline std::vector<HeckeForm::Part> mq_over_qinf() { return {{kM1, 1, 1}, {kQ1, 1, -1}}; }  // (-q)_inf/(q)_inf

inline ThetaArg P(Exponent e) { return ThetaArg::q(e); }
inline ThetaArg N(Exponent e) { return ThetaArg::neg_q(e); }

inline RhoPair inf() { return RhoPair::inf_inf(); }
inline RhoPair one(ThetaArg x) { return RhoPair::one(x); }

// the table below omits the forms an entry does not have
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wmissing-field-initializers"
inline std::vector<IdentityEntry> build_identities() {
  using T = PochTerm;
  const auto S = parity_sign;
  std::vector<IdentityEntry> out;
  auto add = [&](IdentityEntry e) { out.push_back(std::move(e)); };

  // ----- sums built on the Bringmann-Kane pairs
  add({.id = "W1",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), n * n + c2(j + 1)).p(kM0, 1, j).p(kQ1, 2, j - 1).p(kM1, 1, n, -1).p(kQ1, 1, n - j, -1).p(kQ1, 1, 2 * j - 1, -1);
       },
       .first = 1, .j_first = 1,
       .hecke = hform(-2, 2, over_qinf(), 3, 5, P(5), P(5)),
       .appell = "4 m(-q^17,q^48,q^24) - 4 q^-5 m(-q,q^48,q^24)"
                 " - 2 q^2 [J8 J12 J96 J7,16 Jb4,24 J6,48 J30,96 / J24 J48 J3,8 J2,12 J14,96 J46,96]",
       .path = LimitPath{"bk1", inf(), 1, 1, 0}});
  add({.id = "W2",
       .term = [=](Exponent n, Exponent j) {
         return T(S(n + j), c2(j + 1)).p(kQ1, 2, n).p(kM0, 1, j).p(kQ1, 2, j - 1).p(kM1, 1, n, -1).p(kQ1, 1, n - j, -1).p(kQ1, 1, 2 * j - 1, -1);
       },
       .first = 1, .j_first = 1, .starred = true,
       .hecke = hform(1, 1, odd_over_even(), 1, 3, N(2), N(2)),
       .appell = "4 m(-q,q^8,q^4) + q [J1,8^2 J3,8^3 J2,16 / J8^4 J16]",
       .classical = "2 q T1 - q S1",
       .path = LimitPath{"bk1", RhoPair::sqrt_pair(), 1, 1, 0}});
  add({.id = "W3",
       .term = [=](Exponent n, Exponent j) {
         return T(S(n + j), n * n + j * j + j).p(kQ1, 2, n).p(kM0, 2, j).p(kQ2, 4, j - 1).p(kM2, 2, n, -1).p(kQ2, 2, n - j, -1).p(kQ2, 2, 2 * j - 1, -1);
       },
       .first = 1, .j_first = 1,
       .hecke = hform(2, 3, odd_over_even(), 1, 2, N(7), N(7), 4),
       .appell = "4 m(-q,q^12,q^4) + 2 q^3 [Jb1,12^2 / Jb1,4]",
       .path = LimitPath{"bk1", one(P(1)), 2, 1, 0}});
  add({.id = "W4",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), n * n + n + c2(j + 1)).p(kM1, 1, j).p(kQ1, 2, j).p(kM1, 1, n, -1).p(kQ1, 1, n - j, -1).p(kQ1, 1, 2 * j + 1, -1);
       },
       .hecke = hform(1, 0, over_qinf(), 3, 5, P(3), P(3)),
       .appell = "-2 q^-4 m(-q^5,q^48,q^24) - 2 q^-2 m(-q^11,q^48,q^24)"
                 " + [J8 J12 J96 J3,16 Jb4,24 J6,48 J18,96 J30,96 / J24 J48 J1,8 J2,12 J6,96 J26,96 J38,96]",
       .path = LimitPath{"bk1q", inf(), 1, 1, 0}});

  // ----- first corollary family
  add({.id = "M1",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), n * n + c2(j)).p(kM0, 1, j).p(kM1, 1, n, -1).p(kQ1, 1, n - j, -1).p(kQ2, 2, j - 1, -1).lin(2 * j - 1, -1);
       },
       .first = 1, .j_first = 1,
       .hecke = hform(-2, 1, over_qinf(), 3, 5, P(4), P(6)),
       .appell = "4 q^-3 m(-q^7,q^48,q^24) + 4 m(-q^25,q^48,q^-24) - 2"
                 " - 2 [J8 J12 J96 J1,16 Jb4,24 J6,48 J18,96 / J24 J48 J3,8 J2,12 J2,96 J34,96]",
       .path = LimitPath{"d1", inf(), 1, 1, 1}});
  add({.id = "M2",
       .term = [=](Exponent n, Exponent j) {
         return T(S(n + j), c2(j)).p(kQ1, 2, n).p(kM0, 1, j).p(kM1, 1, n, -1).p(kQ1, 1, n - j, -1).p(kQ2, 2, j - 1, -1).lin(2 * j - 1, -1);
       },
       .first = 1, .j_first = 1, .starred = true,
       .hecke = hform(1, 0, odd_over_even(), 1, 3, N(1), N(3)),
       .appell = "4 m(-q^5,q^8,q^4) - 2 - [J1,8^3 J3,8^2 J6,16 / J8^4 J16]",
       .classical = "4 T0 + 2 - 2 [J8^3 J4,8 / J2,8^2 Jb1,8] + [J2,4 J8,16 J1,8 J6,16 / Jb1,4 Jb1,8 Jb3,8]",
       .path = LimitPath{"d1", RhoPair::sqrt_pair(), 1, 1, 1}});
  add({.id = "M3",
       .term = [=](Exponent n, Exponent j) {
         return T(S(n + j), n * n + j * j - j).p(kQ1, 2, n).p(kM0, 2, j).p(kM2, 2, n, -1).p(kQ2, 2, n - j, -1).p(kQ4, 4, j - 1, -1).lin(4 * j - 2, -1);
       },
       .first = 1, .j_first = 1,
       .hecke = hform(2, 1, odd_over_even(), 1, 2, N(5), N(9), 4),
       .appell = "4 m(-q^7,q^12,q^4) - 2 + 2 [J12^3 Jb5,12 / J4,12 Jb1,12 Jb3,12]",
       .path = LimitPath{"d1", one(P(1)), 2, 1, 2}});
  add({.id = "M4",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), n * n + n + c2(j)).p(kM1, 1, n, -1).p(kQ1, 1, n - j, -1).p(kQ1, 1, j, -1).lin(2 * j + 1, -1);
       },
       .hecke = hform(1, 0, over_qinf(), 3, 5, P(2), P(4)),
       .appell = "2 m(-q^29,q^48,q^24) - 1 - 2 q^-1 m(-q^13,q^48,q^-24)"
                 " + q [J8 J12 J96^3 J5,16 Jb4,24 J6,48 J18,48 / J24 J48^2 J1,8 J2,12 J10,96 J22,96 J42,96]",
       .path = LimitPath{"d1q", inf(), 1, 1, 0}});
  add({.id = "M5",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), c2(n + 1) + c2(j)).p(kQ1, 1, n - j, -1).p(kQ1, 1, j, -1).lin(2 * j + 1, -1);
       },
       .hecke = hform(1, 0, mq_over_qinf(), 1, 2, P(1), P(3), 2),
       .appell = "2 m(q^5,q^6,q^2) - 1 - q [J6^3 / J2,6 J3,6]",
       .classical = "1 + q omega",
       .path = LimitPath{"d1q", one(N(1)), 1, 1, 0}});

  // ----- second family
  add({.id = "M6",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), n * n + c2(j + 1)).p(kQ1, 1, n - j, -1).p(kQ1, 1, j - 1, -1).lin(2 * j - 1, -1);
       },
       .first = 1, .j_first = 1,
       .hecke = hform(-1, 2, over_qinf(), 3, 7, P(5), P(6)),
       .appell = "m(-q^49,q^120,q^-3) - q^-3 m(-q^89,q^120,q^-3) + q^-3 + q^-14 m(-q^119,q^120,q^3) - q^-14"
                 " - q^-1 m(-q^79,q^120,q^3) + q^-1"
                 " - q^-11 [J12,48 J16,40 J2,20 J3,40 Jb17,40 J40 / J1 J3,120 Jb6,40 J20 J80]"
                 " + q^-4 [J24,48 J1,40 J4,40 Jb1,40 J8,20 Jb4,40 J18,40 J80 / J1 J3,120 Jb6,40 Jb2,40 J20^2 J40]"
                 " + q^-12 [J24,48 J1,40 J4,40 Jb1,40 J8,20 Jb16,40 J42,80^2 / J1 J3,120 Jb6,40 Jb2,40 J20^2 J80]",
       .path = LimitPath{"d2", inf(), 1, 1, 0}});
  add({.id = "M7",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), c2(n + 1) + c2(j + 1)).p(kM0, 1, n).p(kQ1, 1, n - j, -1).p(kQ1, 1, j - 1, -1).lin(2 * j - 1, -1);
       },
       .first = 1, .j_first = 1,
       .hecke = hform(-2, 2, mq_over_qinf(), 1, 3, P(4), P(5), 2),
       .appell = "2 q^-1 m(-q,q^16,q^-1) - 2 q^-1 [J4,8 J16,32 J1,16 J14,32 / J1,2 Jb2,16 Jb0,16]",
       .path = LimitPath{"d2", one(N(0)), 1, 1, 0}});
  add({.id = "M8",
       .term = [=](Exponent n, Exponent j) {
         return T(S(n + j), c2(j + 1)).p(kQ1, 2, n).p(kQ1, 1, n - j, -1).p(kQ1, 1, j - 1, -1).lin(2 * j - 1, -1);
       },
       .first = 1, .j_first = 1, .starred = true, .sum_factor = 2,
       .hecke = hform(1, 1, odd_over_even(), 1, 5, N(2), N(3)),
       .appell = "2 m(-q^7,q^24,q^6) + 2 q^-2 m(-q,q^24,q^-6) + q [J1 J3,8 J2,16 / J2 J16]",
       .path = LimitPath{"d2", RhoPair::sqrt_pair(), 1, Rational(1, 2), 0}});
  add({.id = "M9",
       .term = [=](Exponent n, Exponent j) {
         return T(S(n + j), n * n + j * j + j).p(kQ1, 2, n).p(kQ2, 2, n - j, -1).p(kQ2, 2, j - 1, -1).lin(4 * j - 2, -1);
       },
       .first = 1, .j_first = 1,
       .hecke = hform(1, 3, odd_over_even(), 1, 3, N(7), N(9), 4),
       .appell = "m(-q^8,q^32,q^-2) - q^-1 [J64^2 J28,64 / J32 J4,64] + q^-1 [J8,16 J32,64 J4,32 J24,64 / Jb1,4 Jb6,32 Jb2,32]",
       .classical = "-A(-q^8) + [J32^3 J14,32 Jb10,32 / J16,32 J2,32 Jb6,32 Jb8,32] - q^-1 [J64^2 J28,64 / J32 J4,64]"
                    " + q^-1 [J8,16 J32,64 J4,32 J24,64 / Jb1,4 Jb6,32 Jb2,32]",
       .path = LimitPath{"d2", one(P(1)), 2, 1, 0}});
  add({.id = "M10",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), n + j * j + j).p(kM0, 1, 2 * n).p(kQ2, 2, n - j, -1).p(kQ2, 2, j - 1, -1).lin(4 * j - 2, -1);
       },
       .first = 1, .j_first = 1,
       .hecke = hform(-2, 3, mq_over_qinf(), 1, 5, P(5), P(7), 2),
       .appell = "-2 q^-1 m(-q^10,q^48,q^-2) - 2 q^-4 m(-q^2,q^48,q^-2)"
                 " - 4 q^-3 [J8,32 J20,48 Jb22,48 J2,24 J6,48 J96 / J1,2 Jb8,48 Jb0,48 J24 J2,48]"
                 " + 2 q^6 [J16,32 J4,48 Jb2,48 J10,24 Jb4,48 J20,48 J96 / J1,2 Jb8,48 Jb0,48 J24^2 J48]"
                 " + 2 q^-4 [J16,32 J4,48 Jb2,48 J10,24 Jb20,48 J44,96^2 / J1,2 Jb8,48 Jb0,48 J24^2 J96]",
       .path = LimitPath{"d2", RhoPair::two(N(0), N(1)), 2, 1, 0}});
  add({.id = "M11",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), n * n + n + c2(j + 1)).p(kQ1, 1, n - j, -1).p(kQ1, 1, j, -1).lin(2 * j + 1, -1);
       },
       .hecke = hform(1, 0, over_qinf(), 3, 7, P(3), P(4)),
       .appell = "q^-8 m(-q^17,q^120,q^-3) + q^-6 m(-q^23,q^120,q^3) - q^-1 m(-q^47,q^120,q^3) + q^-12 m(-q^7,q^120,q^3)"
                 " + q^-9 [J12,48 J1,40 J8,40 Jb19,40 J6,20 Jb12,40 J18,40 J40^2 / J1 J3,120 Jb14,40 Jb10,40 J20^3 J80]"
                 " + q^-4 [J12,48 J1,40 J8,40 Jb19,40 J6,20 Jb8,40 J19,40^2 Jb1,40^2 / J1 J3,120 Jb14,40 Jb10,40 J20^3 J40 J80]"
                 " - q^-4 [J24,48 J1,40 J12,40 Jb1,40 J4,20 Jb12,40 J18,40 J80 / J1 J3,120 Jb14,40 Jb10,40 J20^2 J40]"
                 " - q^-8 [J24,48 J1,40 J12,40 Jb1,40 J4,20 Jb8,40 J38,80^2 / J1 J3,120 Jb14,40 Jb10,40 J20^2 J80]",
       .path = LimitPath{"d2q", inf(), 1, 1, 0}});
  add({.id = "M12",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), c2(n + 1) + c2(j + 1)).p(kM1, 1, n).p(kQ1, 1, n - j, -1).p(kQ1, 1, j, -1).lin(2 * j + 1, -1);
       },
       .hecke = hform(1, 0, mq_over_qinf(), 1, 3, P(2), P(3), 2),
       .appell = "-q^-1 m(-q^3,q^16,q) + q [J4,8 J16,32 J5,16 J6,32 / J1,2 Jb6,16 Jb4,16]",
       .path = LimitPath{"d2q", one(N(1)), 1, 1, 0}});

  // ----- third family
  add({.id = "M13",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), n * n + c2(j)).p(kQ1, 1, n - j, -1).p(kQ1, 1, j - 1, -1).lin(2 * j - 1, -1);
       },
       .first = 1, .j_first = 1,
       .hecke = hform(-1, 1, over_qinf(), 3, 7, P(4), P(7)),
       .appell = "m(-q^59,q^120,q^-9) - q^-7 m(-q^19,q^120,q^-9) - q^-4 m(-q^29,q^120,q^9) - q^-10 m(-q^11,q^120,q^-9)"
                 " - q^-8 [J12,48 J3,40 J16,40 Jb17,40 J2,20 Jb4,40 J14,40 J40^2 / J1 J9,120 Jb10,40 Jb2,40 J20^3 J80]"
                 " - q^-9 [J12,48 J3,40 J16,40 Jb17,40 J2,20 Jb16,40 J17,40^2 Jb3,40^2 / J1 J9,120 Jb10,40 Jb2,40 J20^3 J40 J80]"
                 " + q^-2 [J24,48 J3,40 J4,40 Jb3,40 J8,20 Jb4,40 J14,40 J80 / J1 J9,120 Jb10,40 Jb2,40 J20^2 J40]"
                 " + q^-10 [J24,48 J3,40 J4,40 Jb3,40 J8,20 Jb16,40 J34,80^2 / J1 J9,120 Jb10,40 Jb2,40 J20^2 J80]",
       .path = LimitPath{"d3", inf(), 1, 1, 1}});
  add({.id = "M14",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), c2(n + 1) + c2(j)).p(kM0, 1, n).p(kQ1, 1, n - j, -1).p(kQ1, 1, j - 1, -1).lin(2 * j - 1, -1);
       },
       .first = 1, .j_first = 1,
       .hecke = hform(-2, 1, mq_over_qinf(), 1, 3, P(3), P(6), 2),
       .appell = "2 m(-q^7,q^16,q^-3) - 2 [J4,8 J16,32 J1,16 J14,32 / J1,2 Jb2,16 Jb4,16]",
       .path = LimitPath{"d3", one(N(0)), 1, 1, 1}});
  add({.id = "M15",
       .term = [=](Exponent n, Exponent j) {
         return T(S(n + j), c2(j)).p(kQ1, 2, n).p(kQ1, 1, n - j, -1).p(kQ1, 1, j - 1, -1).lin(2 * j - 1, -1);
       },
       .first = 1, .j_first = 1, .starred = true, .sum_factor = 2,
       .hecke = hform(1, 0, odd_over_even(), 1, 5, N(1), N(4)),
       .appell = "2 m(-q^13,q^24,q^2) - 2 q^-1 m(-q^5,q^24,q^2) + [J1 J1,8 J6,16 / J2 J16]",
       .path = LimitPath{"d3", RhoPair::sqrt_pair(), 1, Rational(1, 2), 1}});
  add({.id = "M16",
       .term = [=](Exponent n, Exponent j) {
         return T(S(n + j), n * n + j * j - j).p(kQ1, 2, n).p(kQ2, 2, n - j, -1).p(kQ2, 2, j - 1, -1).lin(4 * j - 2, -1);
       },
       .first = 1, .j_first = 1,
       .hecke = hform(1, 1, odd_over_even(), 1, 3, N(5), N(11), 4),
       .appell = "-q^-1 m(-q^8,q^32,q^-6) + 1/2 + [J32^3 J10,32 Jb6,32 / J6,32 J16,32 Jb0,32 Jb10,32]"
                 " + q^-1 [J8,16 J32,64 J4,32 J24,64 / Jb1,4 Jb2,32 Jb10,32]",
       .classical = "1/2 + q^-1 U1(q^8) - q^-1 [J32^3 Jb10,32 J14,32 / Jb16,32 J6,32 J8,32 Jb2,32]"
                    " + [J32^3 J10,32 Jb6,32 / J6,32 J16,32 Jb0,32 Jb10,32]"
                    " + q^-1 [J8,16 J32,64 J4,32 J24,64 / Jb1,4 Jb2,32 Jb10,32]",
       .path = LimitPath{"d3", one(P(1)), 2, 1, 2}});
  add({.id = "M17",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), n + j * j - j).p(kM0, 1, 2 * n).p(kQ2, 2, n - j, -1).p(kQ2, 2, j - 1, -1).lin(4 * j - 2, -1);
       },
       .first = 1, .j_first = 1,
       .hecke = hform(-2, 1, mq_over_qinf(), 1, 5, P(3), P(9), 2),
       .appell = "2 m(-q^22,q^48,q^-6) + 2 q^-1 m(-q^14,q^48,q^-6)"
                 " - 2 q^3 [J8,32 J20,48 Jb18,48 J2,24 Jb4,48 J12,48 J48^2 / J1,2 Jb16,48 Jb8,48 J24^3 J96]"
                 " - 2 q^-1 [J8,32 J20,48 Jb18,48 J2,24 Jb20,48 J18,48^2 Jb6,48^2 / J1,2 Jb16,48 Jb8,48 J24^3 J48 J96]"
                 " + 2 q^10 [J16,32 J4,48 Jb6,48 J10,24 Jb4,48 J12,48 J96 / J1,2 Jb16,48 Jb8,48 J24^2 J48]"
                 " + 2 [J16,32 J4,48 Jb6,48 J10,24 Jb20,48 J36,96^2 / J1,2 Jb16,48 Jb8,48 J24^2 J96]",
       .path = LimitPath{"d3", RhoPair::two(N(0), N(1)), 2, 1, 2}});
  add({.id = "M18",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), n * n + n + c2(j)).p(kQ1, 1, n - j, -1).p(kQ1, 1, j, -1).lin(2 * j + 1, -1);
       },
       .hecke = hform(1, 0, over_qinf(), 3, 7, P(2), P(5)),
       .appell = "m(-q^67,q^120,q^-9) + q^-9 m(-q^13,q^120,q^9) - q^-2 m(-q^37,q^120,q^9) - q^-1 m(-q^43,q^120,q^-9)"
                 " + q^-7 [J12,48 J3,40 J8,40 Jb17,40 J6,20 Jb12,40 J14,40 J40^2 / J1 J9,120 Jb18,40 Jb6,40 J20^3 J80]"
                 " + q^-4 [J12,48 J3,40 J8,40 Jb17,40 J6,20 Jb8,40 J17,40^2 Jb3,40^2 / J1 J9,120 Jb18,40 Jb6,40 J20^3 J40 J80]"
                 " - q^-3 [J24,48 J3,40 J12,40 Jb3,40 J4,20 Jb12,40 J14,40 J80 / J1 J9,120 Jb18,40 Jb6,40 J20^2 J40]"
                 " - q^-7 [J24,48 J3,40 J12,40 Jb3,40 J4,20 Jb8,40 J34,80^2 / J1 J9,120 Jb18,40 Jb6,40 J20^2 J80]",
       .path = LimitPath{"d3q", inf(), 1, 1, 0}});
  add({.id = "M19",
       .term = [=](Exponent n, Exponent j) {
         return T(S(j), c2(n + 1) + c2(j)).p(kM1, 1, n).p(kQ1, 1, n - j, -1).p(kQ1, 1, j, -1).lin(2 * j + 1, -1);
       },
       .hecke = hform(1, 0, mq_over_qinf(), 1, 3, P(1), P(4), 2),
       .appell = "m(-q^11,q^16,q^-3) + q [J4,8 J16,32 J5,16 J6,32 / J1,2 Jb8,16 Jb2,16]",
       .path = LimitPath{"d3q", one(N(1)), 1, 1, 0}});

  // ----- identities with classical mock theta functions; the left side is
  // the double sum of another entry
  auto corollary = [&](const std::string& id, const std::string& of) {
    for (const auto& e : out) {
      if (e.id != of) continue;
      IdentityEntry c;
      c.id = id;
      c.sum_of = of;
      c.term = e.term;
      c.first = e.first;
      c.j_first = e.j_first;
      c.starred = e.starred;
      c.sum_factor = e.sum_factor;
      c.classical = e.classical;
      return c;
    }
    throw Error(ErrorKind::UnknownId, of);
  };
  std::vector<IdentityEntry> extra{corollary("C8a", "M2"), corollary("C8b", "M5"), corollary("C8c", "M9"),
                                   corollary("C8d", "M16"), corollary("ID0", "W2")};
  for (auto& e : extra) out.push_back(std::move(e));
  return out;
}
#pragma GCC diagnostic pop

}  // namespace detail

inline const std::vector<IdentityEntry>& identity_catalog() {
  static const std::vector<IdentityEntry> entries = detail::build_identities();
  return entries;
}

/// W1..W4, M1..M19: the ones with double-sum, Hecke, and Appell-Lerch forms.
inline std::vector<std::string> main_identity_ids() {
  std::vector<std::string> ids;
  for (const auto& e : identity_catalog()) {
    if (e.sum_of.empty()) ids.push_back(e.id);
  }
  return ids;
}

inline std::vector<std::string> corollary_identity_ids() { return {"C8a", "C8b", "C8c", "C8d", "ID0"}; }

inline const IdentityEntry& identity_entry(const std::string& id) {
  for (const auto& e : identity_catalog()) {
    if (e.id == id) return e;
  }
  throw Error(ErrorKind::UnknownId, "unknown identity id '" + id + "'");
}

// ---------------------------------------------------------------------------
// Evaluation of each form.

inline QSeries double_sum_row(const IdentityEntry& e, Exponent n, Exponent order) {
  QSeries acc = QSeries::zero(order);
  for (Exponent j = e.j_first; j <= n; ++j) acc = acc + e.term(n, j).series(order);
  return acc;
}

struct DoubleSumResult {
  QSeries value;
  std::optional<StarredSum> starred;  // the unscaled even/odd limits
};

inline DoubleSumResult eval_double_sum_detail(const IdentityEntry& e, Exponent order, SumOptions opt = {}) {
  opt.first = e.first;
  const RowFn row = [&e](Exponent n, Exponent N) { return double_sum_row(e, n, N); };
  DoubleSumResult r;
  if (e.starred) {
    r.starred = sum_starred(row, order, opt);
    r.value = r.starred->average.scaled(e.sum_factor);
  } else {
    r.value = sum_rows(row, order, opt).scaled(e.sum_factor);
  }
  return r;
}

inline QSeries eval_double_sum(const IdentityEntry& e, Exponent order) { return eval_double_sum_detail(e, order).value; }
inline QSeries eval_double_sum(const std::string& id, Exponent order) {
  return eval_double_sum(identity_entry(id), order);
}

inline QSeries eval_hecke_form(const IdentityEntry& e, Exponent order) {
  if (!e.hecke) throw Error(ErrorKind::UnknownId, e.id + " has no Hecke form");
  return e.hecke->lazy().at(order);
}

inline QSeries eval_appell_form(const IdentityEntry& e, Exponent order) {
  if (!e.appell) throw Error(ErrorKind::UnknownId, e.id + " has no Appell-Lerch form");
  return eval_expr(parse_expr(*e.appell), order);
}

inline QSeries eval_classical_form(const IdentityEntry& e, Exponent order) {
  if (!e.classical) throw Error(ErrorKind::UnknownId, e.id + " has no classical form");
  return eval_expr(parse_expr(*e.classical), order);
}

/// The beta side of the Bailey limiting form along the entry's path, divided
/// back by the path's scale so it is directly comparable with the double sum.
inline QSeries eval_limit_path(const IdentityEntry& e, Exponent order) {
  if (!e.path) throw Error(ErrorKind::UnknownId, e.id + " has no Bailey-lemma path");
  const LimitPath& p = *e.path;
  LimitOptions opt;
  opt.dilation = p.dilation;
  opt.starred_lhs = e.starred;
  // lhs = c q^e * double_sum, so the sum is needed through order + e
  const QSeries lhs = limit_identity(pair_catalog(p.pair), p.rho, order + p.exp, opt).lhs;
  return lhs.shifted(-p.exp).scaled(1 / p.coeff).truncated(order);
}

// ---------------------------------------------------------------------------
// Verification.

struct FormTiming {
  std::string form;
  double elapsed_ms = 0;
};

struct IdentityReport {
  std::string id;
  Exponent order = 0;
  std::vector<FormTiming> forms;
  Report comparisons;
  bool all_equal() const { return comparisons.all_equal(); }
};

/// Evaluates every form present and compares them pairwise.
inline IdentityReport verify_identity(const IdentityEntry& e, Exponent order) {
  IdentityReport rep;
  rep.id = e.id;
  rep.order = order;
  struct Form {
    std::string name;
    std::optional<QSeries> value;
    std::string error;
  };
  std::vector<Form> forms;
  auto eval = [&](const std::string& name, const std::function<QSeries()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Form form{name, std::nullopt, {}};
    try {
      form.value = f();
    } catch (const std::exception& ex) {
      form.error = ex.what();
    }
    rep.forms.push_back({name, elapsed_ms(t0)});
    forms.push_back(std::move(form));
  };
  eval("double_sum", [&] { return eval_double_sum(e, order); });
  if (e.hecke) eval("hecke", [&] { return eval_hecke_form(e, order); });
  if (e.appell) eval("appell", [&] { return eval_appell_form(e, order); });
  if (e.classical) eval("classical", [&] { return eval_classical_form(e, order); });

  for (std::size_t a = 0; a < forms.size(); ++a) {
    for (std::size_t b = a + 1; b < forms.size(); ++b) {
      const Form &x = forms[a], &y = forms[b];
      Record r = run_check(e.id, x.name + " = " + y.name, order, [&]() -> EqualityReport {
        if (!x.value) throw Error(ErrorKind::PreconditionFailed, x.name + " failed: " + x.error);
        if (!y.value) throw Error(ErrorKind::PreconditionFailed, y.name + " failed: " + y.error);
        return series_eq_upto(*x.value, *y.value, order);
      });
      r.elapsed_ms = rep.forms[a].elapsed_ms + rep.forms[b].elapsed_ms;
      rep.comparisons.add(std::move(r));
    }
  }
  return rep;
}

inline IdentityReport verify_identity(const std::string& id, Exponent order) {
  return verify_identity(identity_entry(id), order);
}

}  // namespace qmock
