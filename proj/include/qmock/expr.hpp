#pragma once

// A small notation for sums of Appell-Lerch series, theta quotients, and
// classical mock theta functions, close to how such identities are printed:
//
//   4 m(-q^17,q^48,q^24) - 4 q^-5 m(-q,q^48,q^24) - 2 q^2 [J8 J12 Jb4,24 / J24 J3,8^2]
//   1/2 + q^-1 U1(q^8) - A(-q^8) + 2 q T1
//
// J<m> is J_{m,3m}, J<a>,<m> is j(q^a,q^m), Jb<a>,<m> is j(-q^a,q^m).

#include <cctype>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qmock/classical.hpp"
#include "qmock/hecke.hpp"
#include "qmock/theta_quotient.hpp"

namespace qmock {

struct ClassicalAtom {
  std::string name;
  int sign = 1;
  Exponent m = 1;  // evaluated at sign * q^m
};

struct ExprTerm {
  Rational coeff = 1;
  Exponent exp = 0;
  std::variant<std::monostate, AppellSpec, ThetaQuotient, ClassicalAtom> atom;
};

struct Expr {
  std::vector<ExprTerm> terms;
  std::string source;
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  Expr parse() {
    Expr e;
    e.source = std::string(s_);
    skip();
    int sign = 1;
    if (eat('-')) sign = -1;
    else eat('+');
    for (;;) {
      ExprTerm t = term();
      t.coeff *= sign;
      e.terms.push_back(std::move(t));
      skip();
      if (at_end()) break;
      if (eat('+')) sign = 1;
      else if (eat('-')) sign = -1;
      else fail("expected + or -");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError,
                what + " at offset " + std::to_string(i_) + " in '" + std::string(s_) + "'");
  }

  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[i_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (peek() == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool starts(std::string_view w) const { return s_.substr(i_, w.size()) == w; }

  Exponent integer() {
    skip();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++i_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    Exponent v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) v = 10 * v + (s_[i_++] - '0');
    return neg ? -v : v;
  }

  // q, q^k, q^-k
  Exponent q_power() {
    expect('q');
    if (peek() == '^') {
      ++i_;
      return integer();
    }
    return 1;
  }

  // -q^k, q^k, 1, -1
  ThetaArg arg() {
    skip();
    int sign = 1;
    if (eat('-')) sign = -1;
    skip();
    if (peek() == '1') {
      ++i_;
      return {sign, 0};
    }
    return {sign, q_power()};
  }

  ThetaQuotient quotient() {
    ThetaQuotient tq;
    bool below = false;
    for (;;) {
      skip();
      if (eat(']')) break;
      if (eat('/')) {
        if (below) fail("second '/' in quotient");
        below = true;
        continue;
      }
      if (!eat('J')) fail("expected a J-symbol");
      JSymbol j;
      if (peek() == 'b') {
        ++i_;
        j.kind = JKind::Barred;
      }
      const Exponent first = integer();
      if (peek() == ',') {
        ++i_;
        j.a = first;
        j.m = integer();
      } else {
        if (j.kind == JKind::Barred) fail("Jb needs two indices");
        j.kind = JKind::Cubed;
        j.m = first;
      }
      int power = 1;
      if (peek() == '^') {
        ++i_;
        power = static_cast<int>(integer());
      }
      if (below) tq.over(j, power);
      else tq.times(j, power);
    }
    return tq;
  }

  ExprTerm term() {
    ExprTerm t;
    skip();
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const Exponent num = integer();
      Exponent den = 1;
      if (peek() == '/') {
        ++i_;
        den = integer();
      }
      t.coeff = Rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
      t.coeff.canonicalize();
      any = true;
    }
    skip();
    if (peek() == 'q') {
      t.exp = q_power();
      any = true;
    }
    skip();
    if (starts("m(")) {
      i_ += 2;
      AppellSpec a;
      a.x = arg();
      expect(',');
      const ThetaArg mod = arg();
      if (mod.sign < 0 || mod.exp < 1) fail("Appell-Lerch modulus must be q^M with M >= 1");
      a.modulus = mod.exp;
      expect(',');
      a.z = arg();
      expect(')');
      t.atom = a;
    } else if (eat('[')) {
      t.atom = quotient();
    } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
      ClassicalAtom c;
      while (std::isalnum(static_cast<unsigned char>(peek()))) c.name += s_[i_++];
      classical_term(c.name, 0);  // validates the name
      if (eat('(')) {
        const ThetaArg x = arg();
        if (x.exp < 1) fail("classical argument must be +-q^m with m >= 1");
        c.sign = x.sign;
        c.m = x.exp;
        expect(')');
      }
      t.atom = c;
    } else if (!any) {
      fail("empty term");
    }
    return t;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Expr parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

inline Lazy lazy_term(const ExprTerm& t) {
  Lazy base = std::visit(
      [](const auto& a) -> Lazy {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return Lazy::constant(1);
        } else if constexpr (std::is_same_v<T, AppellSpec>) {
          return lazy_appell_m(a);
        } else if constexpr (std::is_same_v<T, ThetaQuotient>) {
          return a.lazy();
        } else {
          return lazy_classical(a.name, a.sign, a.m);
        }
      },
      t.atom);
  return base.scaled(t.coeff).shifted(t.exp);
}

inline Lazy lazy_expr(const Expr& e) {
  std::vector<Lazy> parts;
  for (const auto& t : e.terms) parts.push_back(lazy_term(t));
  return lazy_sum(parts);
}

inline QSeries eval_expr(const Expr& e, Exponent order) { return lazy_expr(e).at(order); }

}  // namespace qmock
