#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qmock/products.hpp"
#include "qmock/series_io.hpp"
#include "qmock/theta_quotient.hpp"

using namespace qmock;

namespace {

QSeries S(const char* text, Exponent order = kExactOrder) { return parse_series(text, order); }

void expect_equal(const QSeries& a, const QSeries& b, Exponent n) {
  const auto r = series_eq_upto(a, b, n);
  EXPECT_TRUE(r.equal()) << "first mismatch at q^" << r.mismatch->exponent << ": "
                         << r.mismatch->left << " vs " << r.mismatch->right;
}

}  // namespace

TEST(PochFinite, SmallProducts) {
  EXPECT_TRUE(poch_finite(ThetaArg::q(1), 1, 2).identical(S("1 - q - q^2 + q^3")));
  EXPECT_TRUE(poch_finite(ThetaArg::neg_q(0), 1, 0).identical(S("1")));
}

TEST(PochFinite, LeadingFactorTwo) {
  for (Exponent j = 1; j <= 8; ++j) {
    const QSeries lhs = poch_finite(ThetaArg::neg_q(0), 1, j);
    const QSeries rhs = poch_finite(ThetaArg::neg_q(1), 1, j - 1).scaled(2);
    EXPECT_TRUE(lhs.identical(rhs)) << j;
    // brute force
    const auto w = oracle::poch(-1, 1, 1, j - 1, 60).scaled(2);
    expect_equal(lhs, w.series(), 60);
  }
}

TEST(PochFinite, NegativeExponents) {
  // (q^-2; q)_3 = (1 - q^-2)(1 - q^-1)(1 - 1) = 0
  EXPECT_TRUE(poch_finite(ThetaArg::q(-2), 1, 3).is_zero());
  // (q^-2; q)_2 = (1 - q^-2)(1 - q^-1) = q^-3 - q^-2 - q^-1 + 1
  EXPECT_TRUE(poch_finite(ThetaArg::q(-2), 1, 2).identical(S("q^-3 - q^-2 - q^-1 + 1")));
}

TEST(PochFinite, TruncatedAgreesWithExact) {
  const QSeries exact = poch_finite(ThetaArg::neg_q(-3), 2, 9);
  const QSeries cut = poch_finite(ThetaArg::neg_q(-3), 2, 9, 20);
  EXPECT_EQ(cut.order(), 20);
  expect_equal(exact.truncated(20), cut, 20);
}

TEST(PochInfinite, EulerPentagonal) {
  EXPECT_TRUE(poch_infinite(ThetaArg::q(1), 1, 7).identical(S("1 - q - q^2 + q^5 + q^7", 7)));
  expect_equal(poch_infinite(ThetaArg::q(1), 1, 7), oracle::poch(1, 1, 1, 8, 7).series(), 7);
}

TEST(PochInfinite, DistinctParts) {
  EXPECT_TRUE(poch_infinite(ThetaArg::neg_q(1), 1, 3).identical(S("1 + q + q^2 + 2*q^3", 3)));
}

TEST(PochInfinite, UnitCheck) {
  const QSeries p = poch_infinite(ThetaArg::q(1), 1, 40);
  expect_equal(p * series_invert(p, 40), QSeries::constant(1).truncated(40), 40);
}

TEST(PochInfinite, ZeroFactor) {
  try {
    poch_infinite(ThetaArg::q(0), 3, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroFactor);
  }
  try {
    poch_infinite(ThetaArg::q(-4), 2, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroFactor);
  }
}

TEST(PochInfinite, AgainstOracle) {
  for (int s : {1, -1}) {
    for (Exponent e = 1; e <= 5; ++e) {
      for (Exponent m = 1; m <= 4; ++m) {
        expect_equal(poch_infinite({s, e}, m, 30), oracle::poch_inf(s, e, m, 30).series(), 30);
      }
    }
  }
}

TEST(PochInfinite, NegativeStartWithSignFlip) {
  // (-q^-1; q)_inf = (1 + q^-1)(1 + 1)(-q; q)_inf
  const QSeries lhs = poch_infinite(ThetaArg::neg_q(-1), 1, 20);
  const QSeries rhs = S("2*q^-1 + 2") * poch_infinite(ThetaArg::neg_q(1), 1, 21);
  expect_equal(lhs, rhs, 20);
  EXPECT_EQ(poch_infinite_lower_bound(ThetaArg::neg_q(-1), 1), -1);
}

TEST(ThetaJ, MatchesEulerProduct) {
  const QSeries j = theta_j(ThetaArg::q(1), 3, 7);
  EXPECT_TRUE(j.identical(S("1 - q - q^2 + q^5 + q^7", 7)));
  expect_equal(j, oracle::theta(1, 1, 3, -10, 7).series(), 7);
}

TEST(ThetaJ, VanishesAtOne) {
  EXPECT_TRUE(theta_j(ThetaArg::q(0), 1, 20).is_zero());
  EXPECT_TRUE(theta_j(ThetaArg::q(0), 1, 20).exact());
  EXPECT_TRUE(theta_j(ThetaArg::q(10), 5, 20).is_zero());
}

TEST(ThetaJ, MinusOne) {
  const QSeries j = theta_j(ThetaArg::neg_q(0), 1, 10);
  EXPECT_EQ(j.coeff(0), 2);
  // j(-1, q) = 2 (-q;q)_inf^2 (q;q)_inf
  const QSeries p = poch_infinite(ThetaArg::neg_q(1), 1, 10);
  const QSeries r = (p * p * poch_infinite(ThetaArg::q(1), 1, 10)).scaled(2);
  expect_equal(j, r, 10);
}

TEST(ThetaJ, SumEqualsProductSmallGrid) {
  for (int s : {1, -1}) {
    for (Exponent m = 1; m <= 6; ++m) {
      for (Exponent a = -9; a <= 9; ++a) {
        expect_equal(theta_j_sum({s, a}, m, 40), theta_j_product({s, a}, m, 40), 40);
      }
    }
  }
}

TEST(ThetaJ, AgainstOracleNegativeArgument) {
  const QSeries j = theta_j(ThetaArg::q(-24), 48, 60);
  expect_equal(j, oracle::theta(1, -24, 48, -200, 60).series(), 60);
  EXPECT_LE(theta_lower_bound(ThetaArg::q(-24), 48), j.min_exp());
}

TEST(JSymbol, Examples) {
  EXPECT_TRUE(j_symbol(JKind::Plain, 1, 3, 7).identical(S("1 - q - q^2 + q^5 + q^7", 7)));
  const QSeries jb = j_symbol(JKind::Barred, 0, 16, 64);
  EXPECT_EQ(jb.coeff(0), 2);
  expect_equal(jb, oracle::theta(-1, 0, 16, 0, 64).series(), 64);
  EXPECT_TRUE(j_symbol(JKind::Plain, 0, 5, 30).is_zero());
  // J_m = (q^m; q^m)_inf
  expect_equal(j_symbol(JKind::Cubed, 0, 2, 40), poch_infinite(ThetaArg::q(2), 2, 40), 40);
}

TEST(JSymbol, MemoIsTransparent) {
  const QSeries a = theta_j(ThetaArg::neg_q(3), 7, 50);
  const QSeries b = theta_j(ThetaArg::neg_q(3), 7, 20);
  const QSeries c = theta_j_sum(ThetaArg::neg_q(3), 7, 20);
  EXPECT_TRUE(b.identical(c));
  EXPECT_TRUE(a.truncated(20).identical(c));
}

TEST(ThetaQuotient, EulerOverEuler) {
  ThetaQuotient tq;
  tq.times(JSymbol{JKind::Cubed, 0, 1}).over(JSymbol{JKind::Plain, 1, 3});
  expect_equal(tq.lazy().at(30), QSeries::constant(1).truncated(30), 30);
}

TEST(ThetaQuotient, VanishingDenominatorNamed) {
  ThetaQuotient tq;
  tq.over(JSymbol{JKind::Plain, 0, 8});
  try {
    tq.lazy();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZeroTheta);
    EXPECT_NE(std::string(e.what()).find("q^8"), std::string::npos);
  }
}
