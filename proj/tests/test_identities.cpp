#include <gtest/gtest.h>

#include <thread>

#include "oracle.hpp"
#include "qmock/series_io.hpp"
#include "qmock/suites.hpp"

using namespace qmock;

namespace {

void expect_equal(const QSeries& a, const QSeries& b, Exponent n) {
  const auto r = series_eq_upto(a, b, n);
  if (!r.equal()) {
    ADD_FAILURE() << "differ at q^" << r.mismatch->exponent << ": " << rational_to_string(r.mismatch->left)
                  << " vs " << rational_to_string(r.mismatch->right);
  }
}

void expect_all_equal(const IdentityReport& rep) {
  for (const auto& r : rep.comparisons.records) EXPECT_EQ(r.status, Status::Equal) << record_line(r);
  EXPECT_FALSE(rep.comparisons.records.empty());
}

oracle::Window mono(Exponent e, int sign, Exponent hi) {
  oracle::Window w(0, hi);
  w.add(e, sign);
  return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// classical mock theta functions against brute force

TEST(Classical, OmegaAgainstBruteForce) {
  const Exponent N = 30;
  oracle::Window acc(0, N);
  for (Exponent n = 0; n <= 8; ++n) {
    const auto inv = oracle::poch_inv(1, 1, 2, n + 1, N);
    acc = acc + mono(2 * n * (n + 1), 1, N) * inv * inv;
  }
  expect_equal(eval_classical("omega", N), acc.series(), N);
  EXPECT_TRUE(eval_classical("omega", 3).identical(parse_series("1 + 2*q + 3*q^2 + 4*q^3", 3)));
}

TEST(Classical, SecondOrderAAgainstBruteForce) {
  const Exponent N = 30;
  oracle::Window acc(0, N);
  for (Exponent n = 0; n <= N; ++n) {
    acc = acc + mono(n + 1, 1, N) * oracle::poch(-1, 2, 2, n, N) * oracle::poch_inv(1, 1, 2, n + 1, N);
  }
  const QSeries a = eval_classical("A", N);
  expect_equal(a, acc.series(), N);
  EXPECT_EQ(a.min_exp(), 1);
  EXPECT_EQ(a.coeff(1), 1);
  EXPECT_EQ(a.coeff(2), 2);  // n = 0 and n = 1 both contribute q^2
}

TEST(Classical, EighthOrderAgainstBruteForce) {
  const Exponent N = 30;
  oracle::Window t0(0, N), u1(0, N), s1(0, N), t1(0, N);
  for (Exponent n = 0; n <= 6; ++n) {
    t0 = t0 + mono((n + 1) * (n + 2), 1, N) * oracle::poch(-1, 2, 2, n, N) * oracle::poch_inv(-1, 1, 2, n + 1, N);
    u1 = u1 + mono((n + 1) * (n + 1), 1, N) * oracle::poch(-1, 1, 2, n, N) * oracle::poch_inv(-1, 2, 4, n + 1, N);
    s1 = s1 + mono(n * (n + 2), 1, N) * oracle::poch(-1, 1, 2, n, N) * oracle::poch_inv(-1, 2, 2, n, N);
    t1 = t1 + mono(n * (n + 1), 1, N) * oracle::poch(-1, 2, 2, n, N) * oracle::poch_inv(-1, 1, 2, n + 1, N);
  }
  expect_equal(eval_classical("T0", N), t0.series(), N);
  expect_equal(eval_classical("U1", N), u1.series(), N);
  expect_equal(eval_classical("S1", N), s1.series(), N);
  expect_equal(eval_classical("T1", N), t1.series(), N);
  EXPECT_EQ(eval_classical("T0", 10).min_exp(), 2);
}

TEST(Classical, UnknownNameIsRejected) {
  try {
    eval_classical("nu", 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownId);
  }
}

TEST(Classical, SubstitutedArgument) {
  const QSeries a = eval_classical("A", 6);
  expect_equal(lazy_classical("A", -1, 8).at(48), series_substitute(a, -1, 8), 48);
}

// ---------------------------------------------------------------------------
// double sums

TEST(DoubleSum, M5LowestTerms) {
  EXPECT_TRUE(eval_double_sum("M5", 2).identical(parse_series("1 + q + 2*q^2", 2)));
  EXPECT_EQ(eval_double_sum("M4", 10).coeff(0), 1);
}

TEST(DoubleSum, AgainstBruteForce) {
  const Exponent N = 24;
  // M5: sum (-1)^j q^{C(n+1,2)+C(j,2)} / ((q)_{n-j} (q)_j (1 - q^{2j+1}))
  oracle::Window m5(0, N), w1(0, N), m10(0, N);
  for (Exponent n = 0; n <= 12; ++n) {
    for (Exponent j = 0; j <= n; ++j) {
      m5 = m5 + mono(n * (n + 1) / 2 + j * (j - 1) / 2, j % 2 ? -1 : 1, N) * oracle::poch_inv(1, 1, 1, n - j, N) *
                    oracle::poch_inv(1, 1, 1, j, N) * oracle::geometric(1, 2 * j + 1, 0, N);
    }
  }
  // W1: sum_{n>=1, 1<=j<=n} (-1)^j q^{n^2+C(j+1,2)} (-1)_j (q;q^2)_{j-1} / ((-q)_n (q)_{n-j} (q)_{2j-1})
  for (Exponent n = 1; n <= 6; ++n) {
    for (Exponent j = 1; j <= n; ++j) {
      w1 = w1 + mono(n * n + j * (j + 1) / 2, j % 2 ? -1 : 1, N) * oracle::poch(-1, 0, 1, j, N) *
                    oracle::poch(1, 1, 2, j - 1, N) * oracle::poch_inv(-1, 1, 1, n, N) *
                    oracle::poch_inv(1, 1, 1, n - j, N) * oracle::poch_inv(1, 1, 1, 2 * j - 1, N);
    }
  }
  // M10: sum (-1)^j q^{n+j^2+j} (-1)_{2n} / ((q^2;q^2)_{n-j} (q^2;q^2)_{j-1} (1 - q^{4j-2}))
  for (Exponent n = 1; n <= N; ++n) {
    for (Exponent j = 1; j <= n; ++j) {
      if (n + j * j + j > N) break;
      m10 = m10 + mono(n + j * j + j, j % 2 ? -1 : 1, N) * oracle::poch(-1, 0, 1, 2 * n, N) *
                      oracle::poch_inv(1, 2, 2, n - j, N) * oracle::poch_inv(1, 2, 2, j - 1, N) *
                      oracle::geometric(1, 4 * j - 2, 0, N);
    }
  }
  expect_equal(eval_double_sum("M5", N), m5.series(), N);
  expect_equal(eval_double_sum("W1", N), w1.series(), N);
  expect_equal(eval_double_sum("M10", N), m10.series(), N);
}

TEST(DoubleSum, StarredFlagsAndFactors) {
  for (const auto& e : identity_catalog()) {
    if (!e.sum_of.empty()) continue;
    const bool starred = e.id == "W2" || e.id == "M2" || e.id == "M8" || e.id == "M15";
    EXPECT_EQ(e.starred, starred) << e.id;
    const bool two = e.id == "M8" || e.id == "M15";
    EXPECT_EQ(e.sum_factor, two ? 2 : 1) << e.id;
  }
}

TEST(DoubleSum, StarredParitiesDifferAndAverage) {
  for (const char* id : {"W2", "M2", "M8", "M15"}) {
    const IdentityEntry& e = identity_entry(id);
    const auto d = eval_double_sum_detail(e, 20);
    ASSERT_TRUE(d.starred.has_value());
    EXPECT_FALSE(series_eq_upto(d.starred->even, d.starred->odd, 20).equal()) << id;
    const QSeries avg = (d.starred->even + d.starred->odd).scaled(Rational(1, 2)).scaled(e.sum_factor);
    EXPECT_TRUE(avg.identical(d.value)) << id;
  }
}

TEST(DoubleSum, CapsAreEnforced) {
  SumOptions tight;
  tight.row_cap = 3;
  try {
    eval_double_sum_detail(identity_entry("W2"), 20, tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StabilizationFailure);
  }
  try {
    eval_double_sum_detail(identity_entry("M10"), 20, tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConvergent);
  }
}

// ---------------------------------------------------------------------------
// Hecke and Appell-Lerch forms

TEST(HeckeForm, M1AgainstBruteForce) {
  // -2q/(q)_inf f_{3,5,3}(q^4, q^6, q)
  const Exponent N = 30;
  const auto f = oracle::hecke(3, 5, 3, 1, 4, 1, 6, 1, 0, N, 40);
  const auto want = mono(1, 1, N).scaled(-2) * oracle::reciprocal(oracle::poch_inf(1, 1, 1, N)) * f;
  expect_equal(eval_hecke_form(identity_entry("M1"), N), want.series(), N);
}

TEST(HeckeForm, W3AgainstBruteForce) {
  // 2q^3 (q;q^2)_inf/(q^2;q^2)_inf f_{1,2,1}(-q^7, -q^7, q^4)
  const Exponent N = 30;
  const auto f = oracle::hecke(1, 2, 1, -1, 7, -1, 7, 4, 0, N, 40);
  const auto want = mono(3, 1, N).scaled(2) * oracle::poch_inf(1, 1, 2, N) *
                    oracle::reciprocal(oracle::poch_inf(1, 2, 2, N)) * f;
  expect_equal(eval_hecke_form(identity_entry("W3"), N), want.series(), N);
}

TEST(AppellForm, ParsedStructure) {
  const Expr m5 = parse_expr(*identity_entry("M5").appell);
  ASSERT_EQ(m5.terms.size(), 3u);
  const auto& a = std::get<AppellSpec>(m5.terms[0].atom);
  EXPECT_EQ(m5.terms[0].coeff, 2);
  EXPECT_EQ(a.x, ThetaArg::q(5));
  EXPECT_EQ(a.modulus, 6);
  EXPECT_EQ(a.z, ThetaArg::q(2));
  EXPECT_EQ(m5.terms[1].coeff, -1);
  EXPECT_TRUE(std::holds_alternative<std::monostate>(m5.terms[1].atom));
  EXPECT_EQ(m5.terms[2].exp, 1);
  EXPECT_EQ(std::get<ThetaQuotient>(m5.terms[2].atom).factors.size(), 3u);

  const Expr m16 = parse_expr(*identity_entry("M16").appell);
  bool half = false;
  for (const auto& t : m16.terms) {
    if (std::holds_alternative<std::monostate>(t.atom) && t.coeff == Rational(1, 2)) half = true;
  }
  EXPECT_TRUE(half);

  const Expr m12 = parse_expr(*identity_entry("M12").appell);
  ASSERT_EQ(m12.terms.size(), 2u);
  EXPECT_EQ(m12.terms[0].coeff, -1);
  EXPECT_EQ(m12.terms[0].exp, -1);
}

TEST(AppellForm, NotationEvaluatesAsDefined) {
  const Exponent N = 30;
  // J1 = (q)_inf, J3,8 = j(q^3, q^8), Jb0,16 = j(-1, q^16)
  expect_equal(eval_expr(parse_expr("[J1]"), N), oracle::poch_inf(1, 1, 1, N).series(), N);
  expect_equal(eval_expr(parse_expr("[J3,8]"), N), oracle::theta(1, 3, 8, 0, N).series(), N);
  expect_equal(eval_expr(parse_expr("[Jb0,16]"), N), oracle::theta(-1, 0, 16, 0, N).series(), N);
  expect_equal(eval_expr(parse_expr("1/2 - q^2 + 3 q"), N), parse_series("1/2 + 3*q - q^2"), N);
  expect_equal(eval_expr(parse_expr("2 m(q,q^2,-1)"), N), QSeries::constant(1), N);
  expect_equal(eval_expr(parse_expr("q^-1 U1(q^8) - A(-q^8)"), N),
               (lazy_classical("U1", 1, 8).shifted(-1) - lazy_classical("A", -1, 8)).at(N), N);
}

TEST(AppellForm, ParseErrors) {
  for (const char* bad : {"", "2 +", "m(q,q^0,q)", "[J1 / J2 / J3]", "[Jb3]", "m(q,q^2", "2 q^"}) {
    try {
      parse_expr(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
    }
  }
  try {
    parse_expr("3 zeta");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownId);
  }
}

// ---------------------------------------------------------------------------
// verification engine

TEST(VerifyIdentity, M5TiesAllFourForms) {
  const auto rep = verify_identity("M5", 40);
  EXPECT_EQ(rep.forms.size(), 4u);
  EXPECT_EQ(rep.comparisons.records.size(), 6u);
  expect_all_equal(rep);
}

TEST(VerifyIdentity, W1AtOrderForty) { expect_all_equal(verify_identity("W1", 40)); }

TEST(VerifyIdentity, HeavyEntryAtOrderForty) { expect_all_equal(verify_identity("M6", 40)); }

TEST(VerifyIdentity, PerturbedConstantIsCaught) {
  IdentityEntry e = identity_entry("M5");
  e.appell = "2 m(q^5,q^6,q^2) - 1 - q [J6^3 / J2,6 J3,6] + q^7";
  const auto rep = verify_identity(e, 20);
  bool found = false;
  for (const auto& r : rep.comparisons.records) {
    if (r.label == "double_sum = appell") {
      ASSERT_EQ(r.status, Status::Mismatch);
      EXPECT_EQ(r.first_mismatch->exponent, 7);
      found = true;
    }
    if (r.label == "double_sum = hecke") {
      EXPECT_EQ(r.status, Status::Equal);
    }
  }
  EXPECT_TRUE(found);

  IdentityEntry h = identity_entry("M1");
  h.hecke->coeff = 2;
  const auto rh = verify_identity(h, 20);
  EXPECT_EQ(rh.comparisons.count(Status::Mismatch), 2u);  // hecke against both other forms
}

TEST(VerifyIdentity, FailingFormBecomesErrorRecord) {
  IdentityEntry e = identity_entry("M5");
  e.appell = "m(q,q^2,q^2)";  // j(q^2, q^2) vanishes
  const auto rep = verify_identity(e, 10);
  EXPECT_EQ(rep.comparisons.count(Status::Error), 3u);
  EXPECT_EQ(rep.comparisons.count(Status::Equal), 3u);
}

TEST(VerifyIdentity, UnknownId) {
  try {
    verify_identity("M20", 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownId);
  }
}

TEST(VerifyIdentity, CorollaryEntries) {
  for (const auto& id : corollary_identity_ids()) {
    SCOPED_TRACE(id);
    expect_all_equal(verify_identity(id, 40));
  }
}

TEST(VerifyIdentity, ConcurrentRunsAgree) {
  const std::vector<std::string> ids{"M3", "M7", "M12", "W4"};
  std::vector<IdentityReport> par(ids.size());
  std::vector<std::thread> ts;
  for (std::size_t i = 0; i < ids.size(); ++i) ts.emplace_back([&, i] { par[i] = verify_identity(ids[i], 30); });
  for (auto& t : ts) t.join();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto seq = verify_identity(ids[i], 30);
    ASSERT_EQ(seq.comparisons.records.size(), par[i].comparisons.records.size());
    for (std::size_t k = 0; k < seq.comparisons.records.size(); ++k) {
      EXPECT_EQ(seq.comparisons.records[k].status, par[i].comparisons.records[k].status);
    }
    expect_all_equal(par[i]);
  }
}

TEST(CrossPath, LimitLhsMatchesDoubleSum) {
  // one infinite/infinite, one sqrt (starred), one two-parameter, one at base q^2
  for (const char* id : {"M1", "W2", "M10", "M16", "M19"}) {
    const IdentityEntry& e = identity_entry(id);
    SCOPED_TRACE(id);
    expect_equal(eval_double_sum(e, 30), eval_limit_path(e, 30), 30);
  }
}

// ---------------------------------------------------------------------------
// suites

TEST(Suites, FunctionLawsPass) {
  SuiteOptions o;
  const Report r = suite_function_laws(o);
  for (const auto& rec : r.records) EXPECT_EQ(rec.status, Status::Equal) << record_line(rec);
  EXPECT_GE(r.records.size(), 12u);
}

TEST(Suites, HmSubsetPasses) {
  SuiteOptions o;
  o.ids = {"M1", "M5", "M8"};
  const Report r = suite_hm(o);
  EXPECT_EQ(r.records.size(), 4u);  // M1 has both argument orders
  EXPECT_TRUE(r.all_equal());
}

TEST(Suites, UnknownSuite) { EXPECT_THROW(run_suite("nope", {}), Error); }

TEST(Suites, NaturalIdOrder) {
  Report r;
  for (const char* id : {"M10", "M2", "W1", "M1", "C8a"}) r.add({id, "x", Status::Equal, 1, std::nullopt, 0, {}});
  r.sort_by_id();
  std::vector<std::string> got;
  for (const auto& x : r.records) got.push_back(x.id);
  EXPECT_EQ(got, (std::vector<std::string>{"C8a", "M1", "M2", "M10", "W1"}));
}
