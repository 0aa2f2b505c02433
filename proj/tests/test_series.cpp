#include <gtest/gtest.h>

#include <random>

#include "qmock/series.hpp"
#include "qmock/series_io.hpp"

using namespace qmock;

namespace {

QSeries S(const char* text, Exponent order = kExactOrder) { return parse_series(text, order); }

QSeries random_series(std::mt19937& rng, Exponent order) {
  std::uniform_int_distribution<int> coef(-5, 5), den(1, 3), lo(-3, 2), len(0, 8);
  std::vector<QSeries::Term> t;
  const Exponent start = lo(rng);
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    Rational c(coef(rng), den(rng));
    c.canonicalize();
    t.emplace_back(start + i, c);
  }
  return QSeries::from_terms(t, order);
}

}  // namespace

TEST(SeriesAdd, CancellationKeepsOrder) {
  const QSeries r = S("1 - q", 10) + S("q", 10);
  EXPECT_TRUE(r.identical(S("1", 10)));
}

TEST(SeriesAdd, AdditiveIdentity) {
  const QSeries r = S("q^-1", 5) + QSeries::zero(5);
  EXPECT_TRUE(r.identical(S("q^-1", 5)));
}

TEST(SeriesAdd, OrderIsMinimum) {
  const QSeries r = S("1 + q", 3) + S("1 + q^2", 8);
  EXPECT_TRUE(r.identical(S("2 + q + q^2", 3)));
}

TEST(SeriesMul, Telescoping) {
  const Exponent n = 12;
  std::vector<QSeries::Term> t;
  for (Exponent e = 0; e <= n; ++e) t.emplace_back(e, 1);
  const QSeries geo = QSeries::from_terms(t, n);
  const QSeries r = S("1 - q") * geo;
  EXPECT_EQ(r.order(), n);
  EXPECT_TRUE(r.identical(QSeries::constant(1).truncated(n)));
}

TEST(SeriesMul, ExponentsAdd) {
  EXPECT_TRUE((S("q^-1") * S("q")).identical(S("1")));
}

TEST(SeriesMul, HandExpansion) {
  EXPECT_TRUE((S("1 - q") * S("1 - q^2")).identical(S("1 - q - q^2 + q^3")));
}

TEST(SeriesMul, OrderRule) {
  const QSeries a = S("q^2 + q^3", 10);
  const QSeries b = S("q^-1 + 1", 6);
  EXPECT_EQ((a * b).order(), std::min<Exponent>(10 - 1, 6 + 2));
}

TEST(SeriesInvert, Geometric) {
  EXPECT_TRUE(series_invert(S("1 - q"), 4).identical(S("1 + q + q^2 + q^3 + q^4", 4)));
}

TEST(SeriesInvert, RationalConstant) {
  EXPECT_TRUE(series_invert(S("2"), 4).identical(S("1/2", 4)));
}

TEST(SeriesInvert, ShiftedGeometric) {
  const QSeries r = series_invert(S("q^2 - q^3"), 3);
  EXPECT_TRUE(r.identical(S("q^-2 + q^-1 + 1 + q + q^2 + q^3", 3)));
  EXPECT_EQ(r.min_exp(), -2);
}

TEST(SeriesInvert, ZeroLeadingTerm) {
  try {
    series_invert(QSeries::zero(5), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroLeadingTerm);
  }
}

TEST(SeriesInvert, NonUnitLeadingCoefficient) {
  const QSeries a = S("3 + q - 2*q^5", 20);
  const QSeries b = series_invert(a, 20);
  EXPECT_TRUE(series_eq_upto(a * b, QSeries::constant(1).truncated(20), 20));
}

TEST(SeriesInvert, LimitedByOperandOrder) {
  // a known through q^6 with min_exp 2 gives an inverse known through q^2
  const QSeries b = series_invert(S("q^2 + q^3", 6), 10);
  EXPECT_EQ(b.order(), 2);
}

TEST(SeriesDilate, Examples) {
  EXPECT_TRUE(series_dilate(S("1 + q"), 2).identical(S("1 + q^2")));
  EXPECT_TRUE(series_dilate(S("q^-1 - q"), 3).identical(S("q^-3 - q^3")));
  const QSeries s = S("1 + q + q^2");
  EXPECT_TRUE(series_dilate(series_dilate(s, 2), 3).identical(series_dilate(s, 6)));
}

TEST(SeriesDilate, OrderMapping) {
  EXPECT_EQ(series_dilate(S("1 + q", 5), 3).order(), 17);
}

TEST(SeriesSubstitute, NegativeBase) {
  EXPECT_TRUE(series_substitute(S("1 + q + q^2"), -1, 2).identical(S("1 - q^2 + q^4")));
}

TEST(SeriesEq, Examples) {
  EXPECT_TRUE(series_eq_upto(S("1 + q"), S("1 + q"), 5).equal());
  EXPECT_TRUE(series_eq_upto(S("1 + q"), S("1 + q + q^6"), 5).equal());
  const auto r = series_eq_upto(S("1 + q"), S("1 + 2*q"), 5);
  ASSERT_FALSE(r.equal());
  EXPECT_EQ(r.mismatch->exponent, 1);
  EXPECT_EQ(r.mismatch->left, 1);
  EXPECT_EQ(r.mismatch->right, 2);
}

TEST(SeriesEq, InsufficientPrecision) {
  try {
    series_eq_upto(S("1", 3), S("1", 10), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientPrecision);
  }
}

TEST(SeriesCoeff, BeyondOrderThrows) {
  EXPECT_THROW(S("1 + q", 3).coeff(4), Error);
  EXPECT_EQ(S("1 + q", 3).coeff(1), 1);
}

TEST(SeriesCanonical, ZeroTermsDropped) {
  const QSeries s = QSeries::from_terms({{1, 1}, {1, -1}, {2, 0}, {3, 2}}, 10);
  ASSERT_EQ(s.terms().size(), 1u);
  EXPECT_EQ(s.min_exp(), 3);
  EXPECT_EQ(QSeries::zero(7).min_exp(), 8);
}

TEST(SeriesProperties, RingAxiomsOnRandomSeries) {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    const QSeries a = random_series(rng, 12), b = random_series(rng, 10), c = random_series(rng, 14);
    const Exponent n = 6;
    EXPECT_TRUE(series_eq_upto(a + b, b + a, n));
    EXPECT_TRUE(series_eq_upto((a + b) + c, a + (b + c), n));
    const QSeries ab = a * b, ba = b * a;
    EXPECT_EQ(ab.order(), ba.order());
    if (ab.order() >= n) {
      EXPECT_TRUE(series_eq_upto(ab, ba, n));
    }
    const QSeries l = (a * b) * c, r = a * (b * c);
    const Exponent m = std::min(l.order(), r.order());
    EXPECT_TRUE(series_eq_upto(l, r, m));
    const QSeries dl = a * (b + c), dr = a * b + a * c;
    const Exponent k = std::min(dl.order(), dr.order());
    EXPECT_TRUE(series_eq_upto(dl, dr, k));
  }
}

TEST(SeriesProperties, InverseIsTwoSided) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const QSeries a = random_series(rng, 30);
    if (a.is_zero()) continue;
    const QSeries b = series_invert(a, 15);
    const QSeries ab = a * b, ba = b * a;
    const Exponent n = std::min({ab.order(), ba.order(), Exponent{15}});
    EXPECT_TRUE(series_eq_upto(ab, QSeries::constant(1).truncated(n), n));
    EXPECT_TRUE(series_eq_upto(ba, QSeries::constant(1).truncated(n), n));
  }
}

TEST(SeriesProperties, DilateIsRingHomomorphism) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const QSeries a = random_series(rng, 10), b = random_series(rng, 9);
    for (Exponent m : {2, 3, 5}) {
      const QSeries l = series_dilate(a * b, m), r = series_dilate(a, m) * series_dilate(b, m);
      const Exponent n = std::min(l.order(), r.order());
      EXPECT_TRUE(series_eq_upto(l, r, n));
      const QSeries ls = series_dilate(a + b, m), rs = series_dilate(a, m) + series_dilate(b, m);
      EXPECT_TRUE(ls.identical(rs));
    }
  }
}

TEST(SeriesIo, TextRoundTrip) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const QSeries a = random_series(rng, 40);
    const QSeries b = parse_series(to_string(a), a.order());
    EXPECT_TRUE(a.identical(b)) << to_string(a);
  }
  EXPECT_EQ(to_string(S("1 + 2*q + 3*q^2 - 1/2*q^-3")), "-1/2*q^-3 + 1 + 2*q + 3*q^2");
  EXPECT_EQ(to_string(QSeries::zero(3)), "0");
}

TEST(SeriesIo, JsonRoundTrip) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const QSeries a = random_series(rng, trial % 2 ? 40 : kExactOrder);
    const auto j = to_json(a);
    const QSeries b = series_from_json(j);
    EXPECT_TRUE(a.identical(b));
    EXPECT_EQ(to_json(b).dump(), j.dump());
  }
}

TEST(SeriesIo, JsonRejectsNonCanonical) {
  auto j = nlohmann::json::parse(R"({"min_exp":0,"order":5,"coeffs":[[0,"1/1"],[0,"2/1"]]})");
  EXPECT_THROW(series_from_json(j), Error);
  j = nlohmann::json::parse(R"({"min_exp":0,"order":5,"coeffs":[[0,"0/1"]]})");
  EXPECT_THROW(series_from_json(j), Error);
  j = nlohmann::json::parse(R"({"min_exp":0,"order":5,"coeffs":[[7,"1/1"]]})");
  EXPECT_THROW(series_from_json(j), Error);
}

TEST(SeriesIo, ParseErrors) {
  EXPECT_THROW(parse_series("1 + q^"), Error);
  EXPECT_THROW(parse_series("1 + 2q"), Error);
  EXPECT_THROW(parse_series("1/0"), Error);
}
