#pragma once

// Verification suites shared by the CLI and the acceptance binary. Every
// check is an exact coefficient comparison; nothing here is probabilistic
// except the choice of sample points, which uses fixed seeds.

#include <algorithm>
#include <atomic>
#include <future>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qmock/identities.hpp"

namespace qmock {

struct SuiteOptions {
  Exponent order = 40;
  Exponent n_max = 10;
  std::vector<std::string> ids;  // empty means all
  unsigned jobs = 0;             // 0 means hardware concurrency
};

namespace detail {

inline bool selected(const SuiteOptions& o, const std::string& id) {
  return o.ids.empty() || std::find(o.ids.begin(), o.ids.end(), id) != o.ids.end();
}

inline EqualityReport pair_outcome(const PairReport& r, std::string& detail) {
  if (r.equal()) return {};
  detail = r.mismatch->which + "_" + std::to_string(r.mismatch->n);
  return {r.mismatch->at};
}

inline Record pair_record(const std::string& id, const std::string& label, Exponent order,
                          const std::function<PairReport()>& f) {
  std::string where;
  Record r = run_check(id, label, order, [&] { return pair_outcome(f(), where); });
  if (!where.empty()) r.message = "at " + where;
  return r;
}

/// Runs fn over items on a small thread pool; the output keeps input order.
template <class T, class F>
std::vector<Report> parallel_map(const std::vector<T>& items, unsigned jobs, F fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<Report> out(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();) out[i] = fn(items[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(jobs, items.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

inline Report merge(const std::vector<Report>& parts) {
  Report r;
  for (const auto& p : parts) r.append(p);
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bailey pairs and their transforms

inline Report suite_pairs(const SuiteOptions& o) {
  Report rep;
  for (const auto& id : pair_ids()) {
    if (!detail::selected(o, id)) continue;
    rep.add(detail::pair_record(id, "pair relation n<=" + std::to_string(o.n_max), o.order,
                                [&] { return verify_pair(pair_catalog(id), o.n_max, o.order); }));
  }
  return rep;
}

/// Theorem 1.1 and 1.3 on every seed, 1.2 on every eligible pair, the inverse,
/// their compositions, and the recurrence that pins down 1.1's alpha.
inline Report suite_transforms(const SuiteOptions& o) {
  Report rep;
  const Exponent n = o.n_max, N = o.order;
  auto add_valid = [&](const std::string& id, const std::string& label, const std::function<BaileyPair()>& make) {
    rep.add(detail::pair_record(id, label + " is a pair", N, [&] { return verify_pair(make(), n, N); }));
  };
  auto add_equal = [&](const std::string& id, const std::string& label, const std::function<BaileyPair()>& x,
                       const std::function<BaileyPair()>& y) {
    rep.add(detail::pair_record(id, label, N, [&] { return pairs_equal(x(), y(), n, N); }));
  };

  const std::vector<std::string> seeds{"unit", "slater0", "slater1", "slater2", "slater3"};
  for (const auto& id : seeds) {
    const auto p = [id] { return pair_catalog(id); };
    add_valid(id, "main1(" + id + ")", [&] { return thm_main1(p()); });
    add_valid(id, "main3(" + id + ")", [&] { return thm_main3(p()); });
    add_equal(id, "main3 = main2 . main1", [&] { return thm_main3(p()); }, [&] { return thm_main2(thm_main1(p())); });
    add_equal(id, "main1_inverse . main1 = id", [&] { return thm_main1_inverse(thm_main1(p())); }, p);
    rep.add(run_check(id, "main1 recurrence", N, [&]() -> EqualityReport {
      const BaileyPair src = p();
      const BaileyPair m = thm_main1(src);
      for (Exponent k = 0; k + 2 <= n; ++k) {
        QSeries lhs = apply(Frac{}.over(one_minus(1, 2 * k + 4)), m.alpha, k + 2, N);
        if (k > 0) lhs = lhs + apply(Frac::mono(-1, 2 * k).over(one_minus(1, 2 * k)), m.alpha, k, N);
        const auto r = series_eq_upto(lhs, src.alpha(k + 1, N).scaled(-1), N);
        if (!r.equal()) return r;
      }
      return {};
    }));
  }
  // every catalog pair relative to 1 with alpha_0 = beta_0 = 0 feeds Theorem 1.2
  for (const auto& id : pair_ids()) {
    const BaileyPair p = pair_catalog(id);
    if (p.a_exp != 0 || p.step != 1 || !is_constant(p.alpha(0, N), 0)) continue;
    add_valid(id, "main2(" + id + ")", [id] { return thm_main2(pair_catalog(id)); });
  }
  // named outputs
  const std::vector<std::pair<std::string, std::string>> main1_out{
      {"slater0", "bk"}, {"slater1", "cor1"}, {"slater2", "cor2"}, {"slater3", "cor3"}};
  for (const auto& [s, t] : main1_out) {
    add_equal(t, "main1(" + s + ") = " + t, [s = s] { return thm_main1(pair_catalog(s)); },
              [t = t] { return pair_catalog(t); });
    const std::string tq = t == "bk" ? "bk_q" : t + "q";
    add_equal(tq, "main3(" + s + ") = " + tq, [s = s] { return thm_main3(pair_catalog(s)); },
              [tq] { return pair_catalog(tq); });
  }
  return rep;
}

/// The base-change route from the Bringmann-Kane pair to Andrews' pairs.
inline Report suite_chain(const SuiteOptions& o) {
  Report rep;
  const Exponent N = o.order;
  const Exponent n = std::min<Exponent>(o.n_max, 8);
  rep.add(detail::pair_record("andrews1", "-2 base_change(bk) = dilate(andrews1, 2)", N, [&] {
    return pairs_equal(scaled(base_change(pair_catalog("bk")), -2), dilated(pair_catalog("andrews1"), 2), n, N);
  }));
  rep.add(detail::pair_record("andrews2", "main2(-andrews1) = andrews2", N, [&] {
    return pairs_equal(thm_main2(scaled(pair_catalog("andrews1"), -1)), pair_catalog("andrews2"), n, N);
  }));
  rep.add(detail::pair_record("andrews0", "main1_inverse(-andrews1) = andrews0", N, [&] {
    return pairs_equal(thm_main1_inverse(scaled(pair_catalog("andrews1"), -1)), pair_catalog("andrews0"), n, N);
  }));
  rep.add(run_check("bk", "base_change(bk) beta_n = -1/(2 (q^2n;q^2)_n), n<=6", N, [&]() -> EqualityReport {
    const BaileyPair c = base_change(pair_catalog("bk"));
    for (Exponent k = 1; k <= std::min<Exponent>(n, 6); ++k) {
      const QSeries want = series_invert(poch_finite(ThetaArg::q(2 * k), 2, k, N), N).scaled(Rational(-1, 2));
      const auto r = series_eq_upto(c.beta(k, N), want, N);
      if (!r.equal()) return r;
    }
    return as_report(c.beta(0, N).is_zero());
  }));
  return rep;
}

/// The constructor pipelines exposed by `qmock derive`.
inline std::vector<std::string> chain_ids() { return {"bk-to-andrews", "slater-to-corollaries"}; }

inline Report run_chain(const std::string& chain, const SuiteOptions& o) {
  if (chain == "bk-to-andrews") {
    Report r = suite_chain(o);
    r.records.pop_back();  // the beta closed form is not one of the three equalities
    return r;
  }
  if (chain == "slater-to-corollaries") {
    Report rep;
    const Exponent N = o.order, n = o.n_max;
    for (const char* s : {"slater1", "slater2", "slater3"}) {
      const std::string k(1, std::string(s).back());
      rep.add(detail::pair_record("cor" + k, std::string("main1(") + s + ") = cor" + k, N, [&] {
        return pairs_equal(thm_main1(pair_catalog(s)), pair_catalog("cor" + k), n, N);
      }));
      rep.add(detail::pair_record("cor" + k + "q", std::string("main3(") + s + ") = cor" + k + "q", N, [&] {
        return pairs_equal(thm_main3(pair_catalog(s)), pair_catalog("cor" + k + "q"), n, N);
      }));
    }
    return rep;
  }
  throw Error(ErrorKind::UnknownId, "unknown chain '" + chain + "'");
}

// ---------------------------------------------------------------------------
// Identities

/// All forms pairwise, one record per comparison.
inline Report suite_identities(const SuiteOptions& o) {
  std::vector<std::string> ids;
  for (const auto& id : main_identity_ids()) {
    if (detail::selected(o, id)) ids.push_back(id);
  }
  auto parts = detail::parallel_map(ids, o.jobs, [&](const std::string& id) {
    return verify_identity(id, o.order).comparisons;
  });
  return detail::merge(parts);
}

inline Report suite_corollary(const SuiteOptions& o) {
  Report rep;
  for (const auto& id : corollary_identity_ids()) {
    if (detail::selected(o, id)) rep.append(verify_identity(id, o.order).comparisons);
  }
  return rep;
}

/// Double sum against the beta side of the Bailey limiting form.
inline Report suite_cross_path(const SuiteOptions& o) {
  std::vector<std::string> ids;
  for (const auto& id : main_identity_ids()) {
    if (detail::selected(o, id)) ids.push_back(id);
  }
  auto parts = detail::parallel_map(ids, o.jobs, [&](const std::string& id) {
    const IdentityEntry& e = identity_entry(id);
    const LimitPath& p = *e.path;
    Report r;
    r.add(run_check(id, "double_sum = limit lhs (" + p.pair + ", " + p.rho.str() + ", d=" + std::to_string(p.dilation) + ")",
                    o.order, [&] { return series_eq_upto(eval_double_sum(e, o.order), eval_limit_path(e, o.order), o.order); }));
    return r;
  });
  return detail::merge(parts);
}

/// The even and odd partial sums of each starred entry settle to different
/// series, and their average is the closed form.
inline Report suite_starred(const SuiteOptions& o) {
  Report rep;
  const Exponent N = o.order;
  for (const auto& e : identity_catalog()) {
    if (!e.starred || !e.sum_of.empty() || !detail::selected(o, e.id)) continue;
    std::optional<DoubleSumResult> ds;
    Record split = run_check(e.id, "even != odd partial sums", N, [&]() -> EqualityReport {
      ds = eval_double_sum_detail(e, N);
      return as_report(!series_eq_upto(ds->starred->even, ds->starred->odd, N).equal());
    });
    if (split.status == Status::Equal) {
      const Mismatch m = *series_eq_upto(ds->starred->even, ds->starred->odd, N).mismatch;
      split.message = "first differs at q^" + std::to_string(m.exponent) + ": " + rational_to_string(m.left) +
                      " vs " + rational_to_string(m.right);
    }
    rep.add(split);
    rep.add(run_check(e.id, "average = hecke", N, [&] {
      return series_eq_upto(ds ? ds->value : eval_double_sum(e, N), eval_hecke_form(e, N), N);
    }));
    rep.add(run_check(e.id, "average = appell", N, [&] {
      return series_eq_upto(ds ? ds->value : eval_double_sum(e, N), eval_appell_form(e, N), N);
    }));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Hecke-type expansions

struct HmCase {
  std::string where;  // identity that uses it
  Exponent n;
  int p;
  ThetaArg x, y;
  Exponent d;
};

/// Every generic specialization f_{n,n+p,n}(x, y, q^d) used in the proofs.
inline std::vector<HmCase> hm_cases() {
  const auto P = ThetaArg::q;
  const auto N = ThetaArg::neg_q;
  return {
      {"M1", 3, 2, P(4), P(6), 1},    {"M1", 3, 2, P(6), P(4), 1},     {"M2", 1, 2, N(1), N(3), 1},
      {"M3", 1, 1, N(5), N(9), 4},    {"M4", 3, 2, P(2), P(4), 1},     {"M5", 1, 1, P(1), P(3), 2},
      {"M6", 3, 4, P(5), P(6), 1},    {"M7", 1, 2, P(4), P(5), 2},     {"M8", 1, 4, N(2), N(3), 1},
      {"M9", 1, 2, N(7), N(9), 4},    {"M10", 1, 4, P(5), P(7), 2},    {"M11", 3, 4, P(3), P(4), 1},
      {"M12", 1, 2, P(2), P(3), 2},   {"M13", 3, 4, P(4), P(7), 1},    {"M14", 1, 2, P(3), P(6), 2},
      {"M15", 1, 4, N(1), N(4), 1},   {"M16", 1, 2, N(5), N(11), 4},   {"M17", 1, 4, P(3), P(9), 2},
      {"M18", 3, 4, P(2), P(5), 1},   {"M19", 1, 2, P(1), P(4), 2},
  };
}

inline Report suite_hm(const SuiteOptions& o) {
  const auto cases = hm_cases();
  std::vector<HmCase> chosen;
  for (const auto& c : cases) {
    if (detail::selected(o, c.where)) chosen.push_back(c);
  }
  auto parts = detail::parallel_map(chosen, o.jobs, [&](const HmCase& c) {
    // p = 4 expansions are the expensive ones
    const Exponent order = c.p == 4 ? std::min<Exponent>(o.order, 30) : o.order;
    const FSpec f{c.n, c.n + c.p, c.n, c.x, c.y, c.d};
    Report r;
    r.add(run_check(c.where, f.str() + " = hm_expand", order,
                    [&] { return series_eq_upto(hecke_f(f, order), hm_expand(c.n, c.p, c.x, c.y, c.d, order), order); }));
    return r;
  });
  return detail::merge(parts);
}

// ---------------------------------------------------------------------------
// Function laws

namespace detail {

inline bool appell_ok(const AppellSpec& s) {
  try {
    s.validate();
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// Random specs with modulus <= 16 for which every spec a law touches is generic.
inline std::vector<AppellSpec> appell_samples(unsigned seed, int count) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> mod(1, 16), sg(0, 1);
  std::vector<AppellSpec> out;
  while (static_cast<int>(out.size()) < count) {
    const Exponent m = mod(rng);
    std::uniform_int_distribution<Exponent> ex(-2 * m, 2 * m);
    const AppellSpec s{{sg(rng) ? 1 : -1, ex(rng)}, m, {sg(rng) ? 1 : -1, ex(rng)}};
    if (appell_ok(s) && appell_ok({s.x.inverse(), m, s.z.inverse()}) && appell_ok({ThetaArg::q(m) * s.x, m, s.z})) {
      out.push_back(s);
    }
  }
  return out;
}

/// z0 J_M^3 j(z/z0) j(x z z0) / (j(z0) j(z) j(x z0) j(x z)), all in base q^M.
inline ThetaQuotient change_of_z(ThetaArg x, Exponent M, ThetaArg z, ThetaArg z0) {
  ThetaQuotient tq;
  tq.mono = z0;
  tq.times(ThetaArg::q(M), 3 * M, 3)
      .times(z / z0, M)
      .times(x * z * z0, M)
      .over(z0, M)
      .over(z, M)
      .over(x * z0, M)
      .over(x * z, M);
  return tq;
}

inline Lazy lazy_poch(ThetaArg x, Exponent m, Exponent n) { return Lazy::exact(poch_finite(x, m, n)); }

}  // namespace detail

inline Report suite_function_laws(const SuiteOptions& o) {
  Report rep;
  const Exponent N = o.order;
  using detail::appell_samples;

  rep.add(run_check("m1", "m(x,q,z) = x^-1 m(1/x,q,1/z), 24 samples", N, [&]() -> EqualityReport {
    for (const auto& s : appell_samples(11, 24)) {
      const Lazy r = Lazy::arg(s.x.inverse()) * lazy_appell_m({s.x.inverse(), s.modulus, s.z.inverse()});
      auto eq = series_eq_upto(appell_m(s, N), r.at(N), N);
      if (!eq.equal()) return eq;
    }
    return {};
  }));
  rep.add(run_check("m2", "m(qx,q,z) = 1 - x m(x,q,z), 24 samples", N, [&]() -> EqualityReport {
    for (const auto& s : appell_samples(12, 24)) {
      const Lazy r = Lazy::constant(1) - Lazy::arg(s.x) * lazy_appell_m(s);
      auto eq = series_eq_upto(appell_m({ThetaArg::q(s.modulus) * s.x, s.modulus, s.z}, N), r.at(N), N);
      if (!eq.equal()) return eq;
    }
    return {};
  }));
  rep.add(run_check("m3", "change of z, >= 20 samples", N, [&]() -> EqualityReport {
    std::mt19937 rng(13);
    int checked = 0;
    for (const auto& s : appell_samples(14, 60)) {
      std::uniform_int_distribution<Exponent> ex(-2 * s.modulus, 2 * s.modulus);
      std::uniform_int_distribution<int> sg(0, 1);
      const ThetaArg z0{sg(rng) ? 1 : -1, ex(rng)};
      const AppellSpec s0{s.x, s.modulus, z0};
      if (!detail::appell_ok(s0)) continue;
      const Lazy rhs = lazy_appell_m(s0) + detail::change_of_z(s.x, s.modulus, s.z, z0).lazy();
      auto eq = series_eq_upto(appell_m(s, N), rhs.at(N), N);
      if (!eq.equal()) return eq;
      ++checked;
    }
    return as_report(checked >= 20);
  }));
  rep.add(run_check("m3", "m(-q^25,q^48,q^-24) = m(-q^25,q^48,q^6) + theta quotient", N, [&] {
    const ThetaArg x = ThetaArg::neg_q(25), z = ThetaArg::q(-24), z0 = ThetaArg::q(6);
    const Lazy rhs = lazy_appell_m({x, 48, z0}) + detail::change_of_z(x, 48, z, z0).lazy();
    return series_eq_upto(appell_m({x, 48, z}, N), rhs.at(N), N);
  }));
  rep.add(run_check("mprod", "m(q,q^2,-1) = 1/2 exactly", N, [&] {
    const QSeries m = appell_m({ThetaArg::q(1), 2, ThetaArg::neg_q(0)}, N);
    return as_report(m.identical(QSeries::constant(Rational(1, 2)).truncated(N)));
  }));

  // theta laws on the grid m <= 12, |a| <= 24
  const Exponent TN = std::max<Exponent>(N, 60);
  rep.add(run_check("theta", "bilateral sum = triple product, m<=12, |a|<=24", TN, [&]() -> EqualityReport {
    for (int s : {1, -1}) {
      for (Exponent m = 1; m <= 12; ++m) {
        for (Exponent a = -24; a <= 24; ++a) {
          auto eq = series_eq_upto(theta_j_sum({s, a}, m, TN), theta_j_product({s, a}, m, TN), TN);
          if (!eq.equal()) return eq;
        }
      }
    }
    return {};
  }));
  rep.add(run_check("j1", "j(q^n x, q) = (-1)^n q^-C(n,2) x^-n j(x, q), |n|<=4", N, [&]() -> EqualityReport {
    for (int s : {1, -1}) {
      for (Exponent m = 1; m <= 12; ++m) {
        for (Exponent a = -24; a <= 24; ++a) {
          const ThetaArg x{s, a};
          for (Exponent n = -4; n <= 4; ++n) {
            const ThetaArg f = ThetaArg{parity_sign(n), -m * c2(n)} * x.pow(-n);
            const Lazy rhs = Lazy::arg(f) * lazy_theta(x, m);
            auto eq = series_eq_upto(theta_j(ThetaArg::q(n * m) * x, m, N), rhs.at(N), N);
            if (!eq.equal()) return eq;
          }
        }
      }
    }
    return {};
  }));
  rep.add(run_check("j2", "j(x, q) = j(q/x, q) = -x j(1/x, q)", N, [&]() -> EqualityReport {
    for (int s : {1, -1}) {
      for (Exponent m = 1; m <= 12; ++m) {
        for (Exponent a = -24; a <= 24; ++a) {
          const ThetaArg x{s, a};
          const QSeries j = theta_j(x, m, N);
          auto eq = series_eq_upto(j, theta_j(ThetaArg::q(m) / x, m, N), N);
          if (!eq.equal()) return eq;
          eq = series_eq_upto(j, (Lazy::arg(-x) * lazy_theta(x.inverse(), m)).at(N), N);
          if (!eq.equal()) return eq;
        }
      }
    }
    return {};
  }));

  // finite sums from the base-change lemma
  rep.add(run_check("littlefact1", "(q^-n)_k = (q)_n/(q)_{n-k} (-1)^k q^{C(k,2)-nk}, k<=n<=10", 128,
                    [&]() -> EqualityReport {
                      for (Exponent n = 0; n <= 10; ++n) {
                        for (Exponent k = 0; k <= n; ++k) {
                          const QSeries lhs = poch_finite(ThetaArg::q(-n), 1, k);
                          const QSeries num = poch_finite(ThetaArg::q(1), 1, n);
                          const QSeries den = poch_finite(ThetaArg::q(1), 1, n - k);
                          const QSeries mono = QSeries::monomial(parity_sign(k), c2(k) - n * k);
                          // both sides are polynomials of degree < 128
                          auto eq = series_eq_upto(lhs * den, num * mono, 128);
                          if (!eq.equal()) return eq;
                        }
                      }
                      return {};
                    }));
  rep.add(run_check("littlefact2", "base-change finite sum, r<=n<=8", N, [&]() -> EqualityReport {
    for (Exponent n = 0; n <= 8; ++n) {
      for (Exponent r = 0; r <= n; ++r) {
        std::vector<Lazy> terms;
        for (Exponent k = 0; k <= n - r; ++k) {
          const QSeries num = QSeries::monomial(parity_sign(k), 2 * n * k) *
                              poch_finite(ThetaArg::q(-(n - r)), 1, k) * poch_finite(ThetaArg::neg_q(-(n - r)), 1, k);
          const Lazy den = (detail::lazy_poch(ThetaArg::q(1), 1, k) * detail::lazy_poch(ThetaArg::q(2 * r + 1), 1, k));
          terms.push_back(Lazy::exact(num) * den.inverse());
        }
        const Lazy rhs = lazy_product({Lazy::exact(QSeries::constant(1) + QSeries::monomial(1, 2 * r)).scaled(Rational(1, 2)),
                                       detail::lazy_poch(ThetaArg::q(1), 1, 2 * r),
                                       detail::lazy_poch(ThetaArg::neg_q(0), 1, 2 * n),
                                       detail::lazy_poch(ThetaArg::q(2), 2, n + r).inverse()});
        auto eq = series_eq_upto(lazy_sum(terms).at(N), rhs.at(N), N);
        if (!eq.equal()) return eq;
      }
    }
    return {};
  }));
  rep.add(run_check("chu-vandermonde", "q->q^2, n->n-1, a=q, c=q^3, n<=10", N, [&]() -> EqualityReport {
    for (Exponent n = 1; n <= 10; ++n) {
      const Exponent m = n - 1;
      std::vector<Lazy> terms;
      for (Exponent k = 0; k <= m; ++k) {
        // (c q^{2m} / a)^k = q^{(2m+2)k}
        const QSeries num = QSeries::monomial(1, (2 * m + 2) * k) * poch_finite(ThetaArg::q(1), 2, k) *
                            poch_finite(ThetaArg::q(-2 * m), 2, k);
        const Lazy den = detail::lazy_poch(ThetaArg::q(2), 2, k) * detail::lazy_poch(ThetaArg::q(3), 2, k);
        terms.push_back(Lazy::exact(num) * den.inverse());
      }
      const Lazy rhs = detail::lazy_poch(ThetaArg::q(2), 2, m) * detail::lazy_poch(ThetaArg::q(3), 2, m).inverse();
      auto eq = series_eq_upto(lazy_sum(terms).at(N), rhs.at(N), N);
      if (!eq.equal()) return eq;
    }
    return {};
  }));
  const Exponent HN = std::min<Exponent>(N, 30);
  rep.add(run_check("heine", "second Heine at z=-q^2n, a=q^{r-n}, b=-q^{r-n}, c=q^{2r+1}, r<=n<=6", HN,
                    [&]() -> EqualityReport {
                      for (Exponent n = 0; n <= 6; ++n) {
                        for (Exponent r = 0; r <= n; ++r) {
                          const ThetaArg a = ThetaArg::q(r - n), b = ThetaArg::neg_q(r - n), c = ThetaArg::q(2 * r + 1),
                                         z = ThetaArg::neg_q(2 * n);
                          std::vector<Lazy> lhs;
                          for (Exponent k = 0; k <= n - r; ++k) {  // (a)_k terminates
                            const QSeries num = poch_finite(a, 1, k) * poch_finite(b, 1, k) * z.pow(k).series();
                            const Lazy den = detail::lazy_poch(c, 1, k) * detail::lazy_poch(ThetaArg::q(1), 1, k);
                            lhs.push_back(Lazy::exact(num) * den.inverse());
                          }
                          // (abz/c)_k = (q^-1)_k vanishes for k >= 2; (bz)_inf/(bz)_k = (bz q^k)_inf
                          const ThetaArg cb = c / b, abzc = a * b * z / c, bz = b * z;
                          const Lazy pre = lazy_poch_infinite(cb, 1) *
                                           (lazy_poch_infinite(c, 1) * lazy_poch_infinite(z, 1)).inverse();
                          std::vector<Lazy> rhs;
                          for (Exponent k = 0; k <= 1; ++k) {
                            const ThetaArg t = bz * ThetaArg::q(k);
                            if (t.sign > 0 && t.exp <= 0) continue;  // (t)_inf contains 1 - q^0
                            const QSeries num = poch_finite(abzc, 1, k) * poch_finite(b, 1, k) * cb.pow(k).series();
                            rhs.push_back(lazy_product({pre, lazy_poch_infinite(t, 1), Lazy::exact(num),
                                                        detail::lazy_poch(ThetaArg::q(1), 1, k).inverse()}));
                          }
                          auto eq = series_eq_upto(lazy_sum(lhs).at(HN), lazy_sum(rhs).at(HN), HN);
                          if (!eq.equal()) return eq;
                        }
                      }
                      return {};
                    }));
  return rep;
}

// ---------------------------------------------------------------------------

inline std::vector<std::string> suite_names() {
  return {"pairs", "transforms", "chain", "identities", "corollary", "hm", "props", "starred", "cross-path"};
}

/// `props` bundles the function laws; `all` runs every suite.
inline Report run_suite(const std::string& name, const SuiteOptions& o) {
  if (name == "pairs") return suite_pairs(o);
  if (name == "transforms") {
    Report r = suite_transforms(o);
    r.append(suite_chain(o));
    return r;
  }
  if (name == "chain") return suite_chain(o);
  if (name == "identities") {
    Report r = suite_identities(o);
    r.append(suite_corollary(o));
    return r;
  }
  if (name == "corollary") return suite_corollary(o);
  if (name == "hm") return suite_hm(o);
  if (name == "props") return suite_function_laws(o);
  if (name == "starred") return suite_starred(o);
  if (name == "cross-path") return suite_cross_path(o);
  if (name == "all") {
    Report r;
    for (const char* s : {"pairs", "transforms", "identities", "hm", "props", "starred", "cross-path"}) {
      r.append(run_suite(s, o));
    }
    return r;
  }
  throw Error(ErrorKind::UnknownId, "unknown suite '" + name + "'");
}

}  // namespace qmock
