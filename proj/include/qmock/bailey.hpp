#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qmock/lazy.hpp"
#include "qmock/products.hpp"
#include "qmock/summation.hpp"

namespace qmock {

using SeqFn = std::function<QSeries(Exponent n, Exponent order)>;

/// A lazily evaluated sequence of series n -> s_n, memoized per index at the
/// deepest order requested so far.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(SeqFn fn) : impl_(std::make_shared<Impl>(std::move(fn))) {}

  QSeries operator()(Exponent n, Exponent order) const {
    if (!impl_) throw Error(ErrorKind::PreconditionFailed, "empty sequence");
    if (n < 0) throw Error(ErrorKind::PreconditionFailed, "sequence index must be nonnegative");
    {
      std::lock_guard lock(impl_->mu);
      auto it = impl_->memo.find(n);
      if (it != impl_->memo.end() && it->second.order() >= order) {
        return it->second.exact() ? it->second : it->second.truncated(order);
      }
    }
    QSeries s = impl_->fn(n, order);
    if (s.order() < order) {
      throw Error(ErrorKind::InsufficientPrecision, "sequence term " + std::to_string(n) +
                                                        " came back at order " +
                                                        std::to_string(s.order()));
    }
    std::lock_guard lock(impl_->mu);
    auto [it, fresh] = impl_->memo.emplace(n, s);
    if (!fresh && s.order() > it->second.order()) it->second = s;
    return s;
  }

 private:
  struct Impl {
    explicit Impl(SeqFn f) : fn(std::move(f)) {}
    SeqFn fn;
    std::mutex mu;
    std::map<Exponent, QSeries> memo;
  };
  std::shared_ptr<Impl> impl_;
};

/// (alpha_n, beta_n) relative to (a, q^step) with a = q^{step * a_exp}.
struct BaileyPair {
  int a_exp = 0;
  Exponent step = 1;
  Sequence alpha;
  Sequence beta;
  std::string tag;

  ThetaArg a() const { return ThetaArg::q(step * a_exp); }

  std::string base_str() const {
    std::string a_str = a_exp == 0 ? "1" : (step == 1 ? "q" : "q^" + std::to_string(step));
    if (step == 1) return a_str;
    return "(" + a_str + ",q^" + std::to_string(step) + ")";
  }
};

/// An exact rational function num/den of q; both parts are exact Laurent
/// polynomials and den has a nonzero lowest coefficient.
struct Frac {
  QSeries num = QSeries::constant(1);
  QSeries den = QSeries::constant(1);

  static Frac mono(const Rational& c, Exponent e) { return {QSeries::monomial(c, e), QSeries::constant(1)}; }
  static Frac arg(ThetaArg x) { return mono(x.sign, x.exp); }

  bool is_zero() const { return num.is_zero(); }
  Exponent min_exp() const { return num.min_exp() - den.min_exp(); }

  Frac& times(const QSeries& p) {
    num = num * p;
    return *this;
  }
  Frac& over(const QSeries& p) {
    den = den * p;
    return *this;
  }
  friend Frac operator*(const Frac& x, const Frac& y) { return {x.num * y.num, x.den * y.den}; }

  /// Expansion through q^order.
  QSeries series(Exponent order) const {
    if (num.is_zero()) return QSeries::zero(order);
    const QSeries inv = series_invert(den, order - num.min_exp());
    return (num * inv).truncated(order);
  }
};

/// w * s_n through q^order, reading s_n only as deep as needed.
inline QSeries apply(const Frac& w, const Sequence& s, Exponent n, Exponent order) {
  if (w.is_zero()) return QSeries::zero(order);
  const QSeries sn = s(n, order - w.min_exp());
  if (sn.is_zero()) return QSeries::zero(order);
  return (w.series(order - sn.min_exp()) * sn).truncated(order);
}

inline QSeries one_minus(int sign, Exponent e) {
  return QSeries::from_terms({{0, 1}, {e, Rational(-sign)}});
}

inline bool is_constant(const QSeries& s, const Rational& c) {
  const Exponent n = s.exact() ? 64 : s.order();
  return series_eq_upto(s, QSeries::constant(c).truncated(n), n).equal();
}

// ---------------------------------------------------------------------------
// The pair relation and its inverse.

/// beta_n = sum_k alpha_k / ((Q;Q)_{n-k} (aQ;Q)_{n+k}), Q = q^step.
inline QSeries beta_from_alpha_at(const Sequence& alpha, int a_exp, Exponent step, Exponent n,
                                  Exponent order) {
  const ThetaArg Q = ThetaArg::q(step), aQ = ThetaArg::q(step * (a_exp + 1));
  QSeries acc = QSeries::zero(order);
  for (Exponent k = 0; k <= n; ++k) {
    Frac w;
    w.over(poch_finite(Q, step, n - k)).over(poch_finite(aQ, step, n + k));
    acc = acc + apply(w, alpha, k, order);
  }
  return acc;
}

/// alpha_n = (1 - a Q^{2n}) sum_j (aQ)_{n+j-1} (-1)^{n-j} Q^{C(n-j,2)} beta_j / (Q)_{n-j};
/// alpha_0 = beta_0 (the vanishing prefactor cancels the pole of (aQ)_{-1}).
inline QSeries alpha_from_beta_at(const Sequence& beta, int a_exp, Exponent step, Exponent n,
                                  Exponent order) {
  if (n == 0) return beta(0, order).truncated(order);
  const ThetaArg Q = ThetaArg::q(step), aQ = ThetaArg::q(step * (a_exp + 1));
  QSeries acc = QSeries::zero(order);
  for (Exponent j = 0; j <= n; ++j) {
    const Exponent m = n - j;
    Frac w = Frac::mono((m % 2 != 0) ? -1 : 1, step * (m * (m - 1) / 2));
    w.times(poch_finite(aQ, step, n + j - 1)).times(one_minus(1, step * (a_exp + 2 * n)));
    w.over(poch_finite(Q, step, m));
    acc = acc + apply(w, beta, j, order);
  }
  return acc;
}

inline Sequence beta_from_alpha(const Sequence& alpha, int a_exp, Exponent step) {
  return Sequence([=](Exponent n, Exponent order) { return beta_from_alpha_at(alpha, a_exp, step, n, order); });
}

inline Sequence alpha_from_beta(const Sequence& beta, int a_exp, Exponent step) {
  return Sequence([=](Exponent n, Exponent order) { return alpha_from_beta_at(beta, a_exp, step, n, order); });
}

inline std::vector<QSeries> pair_beta_from_alpha(const Sequence& alpha, int a_exp, Exponent step,
                                                 Exponent n_max, Exponent order) {
  std::vector<QSeries> out;
  for (Exponent n = 0; n <= n_max; ++n) out.push_back(beta_from_alpha_at(alpha, a_exp, step, n, order));
  return out;
}

inline std::vector<QSeries> pair_alpha_from_beta(const Sequence& beta, int a_exp, Exponent step,
                                                 Exponent n_max, Exponent order) {
  std::vector<QSeries> out;
  for (Exponent n = 0; n <= n_max; ++n) out.push_back(alpha_from_beta_at(beta, a_exp, step, n, order));
  return out;
}

struct SeqMismatch {
  std::string which;  // "alpha" or "beta"
  Exponent n;
  Mismatch at;
};

struct PairReport {
  std::optional<SeqMismatch> mismatch;
  bool equal() const { return !mismatch.has_value(); }
};

/// Stored beta against the beta implied by alpha, for n <= n_max.
inline PairReport verify_pair(const BaileyPair& p, Exponent n_max, Exponent order) {
  for (Exponent n = 0; n <= n_max; ++n) {
    const QSeries want = beta_from_alpha_at(p.alpha, p.a_exp, p.step, n, order);
    const auto r = series_eq_upto(p.beta(n, order), want, order);
    if (!r.equal()) return {SeqMismatch{"beta", n, *r.mismatch}};
  }
  return {};
}

/// Sequencewise comparison; also checks that the bases agree.
inline PairReport pairs_equal(const BaileyPair& x, const BaileyPair& y, Exponent n_max, Exponent order) {
  if (x.a_exp != y.a_exp || x.step != y.step) {
    throw Error(ErrorKind::PreconditionFailed,
                "comparing pairs relative to " + x.base_str() + " and " + y.base_str());
  }
  for (Exponent n = 0; n <= n_max; ++n) {
    auto r = series_eq_upto(x.alpha(n, order), y.alpha(n, order), order);
    if (!r.equal()) return {SeqMismatch{"alpha", n, *r.mismatch}};
    r = series_eq_upto(x.beta(n, order), y.beta(n, order), order);
    if (!r.equal()) return {SeqMismatch{"beta", n, *r.mismatch}};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Elementary operations on pairs.

inline BaileyPair scaled(const BaileyPair& p, const Rational& c, std::string tag = {}) {
  BaileyPair out = p;
  out.alpha = Sequence([s = p.alpha, c](Exponent n, Exponent order) { return s(n, order).scaled(c); });
  out.beta = Sequence([s = p.beta, c](Exponent n, Exponent order) { return s(n, order).scaled(c); });
  out.tag = tag.empty() ? rational_to_string(c) + "*" + p.tag : std::move(tag);
  return out;
}

/// q -> q^m in both sequences; the pair becomes relative to (a^m, q^{m step}).
inline BaileyPair dilated(const BaileyPair& p, Exponent m) {
  if (m < 1) throw Error(ErrorKind::PreconditionFailed, "dilation must be >= 1");
  if (m == 1) return p;
  auto dil = [m](Sequence s) {
    return Sequence([s, m](Exponent n, Exponent order) {
      return series_dilate(s(n, detail::floor_div(order, m)), m);
    });
  };
  BaileyPair out = p;
  out.step = p.step * m;
  out.alpha = dil(p.alpha);
  out.beta = dil(p.beta);
  out.tag = p.tag + "(q^" + std::to_string(m) + ")";
  return out;
}

// ---------------------------------------------------------------------------
// rho specializations and the Bailey lemma.

struct RhoParam {
  enum class Kind { Finite, Infinity, SqrtPair };
  Kind kind = Kind::Infinity;
  ThetaArg value;

  static RhoParam finite(ThetaArg x) { return {Kind::Finite, x}; }
  static RhoParam infinity() { return {Kind::Infinity, {}}; }
  static RhoParam sqrt_pair() { return {Kind::SqrtPair, {}}; }

  std::string str() const {
    switch (kind) {
      case Kind::Finite: return value.str();
      case Kind::Infinity: return "inf";
      case Kind::SqrtPair: return "sqrt";
    }
    return "?";
  }
};

/// (rho1, rho2); the square-root pair (sqrt(Q), -sqrt(Q)) fills both slots.
struct RhoPair {
  RhoParam r1 = RhoParam::infinity(), r2 = RhoParam::infinity();

  static RhoPair inf_inf() { return {}; }
  static RhoPair one(ThetaArg x) { return {RhoParam::finite(x), RhoParam::infinity()}; }
  static RhoPair two(ThetaArg x, ThetaArg y) { return {RhoParam::finite(x), RhoParam::finite(y)}; }
  static RhoPair sqrt_pair() { return {RhoParam::sqrt_pair(), RhoParam::sqrt_pair()}; }

  std::string str() const {
    if (r1.kind == RhoParam::Kind::SqrtPair) return "(sqrt(q),-sqrt(q))";
    return "(" + r1.str() + "," + r2.str() + ")";
  }
};

namespace detail {

/// The rho-dependent factors of the Bailey lemma in base Q = q^step.
class BaileyKernel {
 public:
  BaileyKernel(const RhoPair& rho, int a_exp, Exponent step) : a_exp_(a_exp), step_(step) {
    using K = RhoParam::Kind;
    const bool s1 = rho.r1.kind == K::SqrtPair, s2 = rho.r2.kind == K::SqrtPair;
    if (s1 != s2) {
      throw Error(ErrorKind::NonGenericRho, "the square-root specialization must fill both slots");
    }
    if (s1) {
      shape_ = Shape::Sqrt;
    } else if (rho.r1.kind == K::Infinity && rho.r2.kind == K::Infinity) {
      shape_ = Shape::InfInf;
    } else if (rho.r1.kind == K::Infinity || rho.r2.kind == K::Infinity) {
      shape_ = Shape::OneFinite;
      rho1_ = rho.r1.kind == K::Finite ? rho.r1.value : rho.r2.value;
    } else {
      shape_ = Shape::TwoFinite;
      rho1_ = rho.r1.value;
      rho2_ = rho.r2.value;
    }
    label_ = rho.str();
    check_generic();
  }

  /// (rho1)_n (rho2)_n (aQ/rho1 rho2)^n, with the infinite limits taken.
  Frac numerator(Exponent n) const {
    const Exponent Q = step_;
    switch (shape_) {
      case Shape::InfInf:
        return Frac::mono(1, Q * (a_exp_ * n + n * n));
      case Shape::OneFinite: {
        Frac w = Frac::arg(aq_over(rho1_).pow(n)) * Frac::mono(n % 2 ? -1 : 1, Q * (n * (n - 1) / 2));
        return w.times(poch_finite(rho1_, Q, n));
      }
      case Shape::TwoFinite: {
        Frac w = Frac::arg(aq_over(rho1_ * rho2_).pow(n));
        return w.times(poch_finite(rho1_, Q, n)).times(poch_finite(rho2_, Q, n));
      }
      case Shape::Sqrt: {
        Frac w = Frac::arg((-a()).pow(n));
        return w.times(poch_finite(ThetaArg::q(Q), 2 * Q, n));
      }
    }
    return {};
  }

  /// (aQ/rho1)_n (aQ/rho2)_n.
  QSeries denominator(Exponent n) const {
    const Exponent Q = step_;
    switch (shape_) {
      case Shape::InfInf: return QSeries::constant(1);
      case Shape::OneFinite: return poch_finite(aq_over(rho1_), Q, n);
      case Shape::TwoFinite: return poch_finite(aq_over(rho1_), Q, n) * poch_finite(aq_over(rho2_), Q, n);
      case Shape::Sqrt: return poch_finite(ThetaArg::q(Q * (2 * a_exp_ + 1)), 2 * Q, n);
    }
    return {};
  }

  /// alpha'_n / alpha_n.
  Frac alpha_weight(Exponent n) const {
    Frac w = numerator(n);
    return w.over(denominator(n));
  }

  /// Coefficient of beta_k in beta'_n.
  Frac beta_weight(Exponent n, Exponent k) const {
    const Exponent Q = step_;
    Frac w = numerator(k);
    w.over(denominator(n)).over(poch_finite(ThetaArg::q(Q), Q, n - k));
    if (shape_ == Shape::TwoFinite) w.times(poch_finite(aq_over(rho1_ * rho2_), Q, n - k));
    if (shape_ == Shape::Sqrt) w.times(poch_finite(-a(), Q, n - k));
    return w;
  }

  /// (aQ/rho1)_inf (aQ/rho2)_inf / ((aQ)_inf (aQ/rho1 rho2)_inf).
  Lazy prefactor() const {
    const Exponent Q = step_;
    const ThetaArg aQ = ThetaArg::q(Q * (a_exp_ + 1));
    std::vector<Lazy> f{lazy_poch_infinite(aQ, Q).inverse()};
    switch (shape_) {
      case Shape::InfInf: break;
      case Shape::OneFinite: f.push_back(lazy_poch_infinite(aq_over(rho1_), Q)); break;
      case Shape::TwoFinite:
        f.push_back(lazy_poch_infinite(aq_over(rho1_), Q));
        f.push_back(lazy_poch_infinite(aq_over(rho2_), Q));
        f.push_back(lazy_poch_infinite(aq_over(rho1_ * rho2_), Q).inverse());
        break;
      case Shape::Sqrt:
        f.push_back(lazy_poch_infinite(ThetaArg::q(Q * (2 * a_exp_ + 1)), 2 * Q));
        f.push_back(lazy_poch_infinite(-a(), Q).inverse());
        break;
    }
    return lazy_product(f);
  }

  const std::string& label() const { return label_; }

 private:
  enum class Shape { InfInf, OneFinite, TwoFinite, Sqrt };

  ThetaArg a() const { return ThetaArg::q(step_ * a_exp_); }
  ThetaArg aq_over(ThetaArg r) const { return ThetaArg::q(step_ * (a_exp_ + 1)) / r; }

  // (x; Q)_n has a zero factor for large n iff x = +Q^{-k}, k >= 0
  bool poch_hits_zero(ThetaArg x) const { return x.sign > 0 && x.exp <= 0 && x.exp % step_ == 0; }

  void check_generic() const {
    auto reject = [&](ThetaArg x, const char* what) {
      if (poch_hits_zero(x)) {
        throw Error(ErrorKind::NonGenericRho,
                    "rho = " + label_ + " makes (" + x.str() + "; q^" + std::to_string(step_) + ") vanish in " + what);
      }
    };
    if (shape_ == Shape::OneFinite || shape_ == Shape::TwoFinite) reject(aq_over(rho1_), "(aq/rho1)_n");
    if (shape_ == Shape::TwoFinite) {
      reject(aq_over(rho2_), "(aq/rho2)_n");
      reject(aq_over(rho1_ * rho2_), "(aq/rho1 rho2)_inf");
    }
  }

  int a_exp_;
  Exponent step_;
  Shape shape_ = Shape::InfInf;
  ThetaArg rho1_, rho2_;
  std::string label_;
};

}  // namespace detail

/// One application of the Bailey lemma.
inline BaileyPair bailey_step(const BaileyPair& p, const RhoPair& rho) {
  auto kernel = std::make_shared<detail::BaileyKernel>(rho, p.a_exp, p.step);
  BaileyPair out = p;
  out.alpha = Sequence([kernel, s = p.alpha](Exponent n, Exponent order) {
    return apply(kernel->alpha_weight(n), s, n, order);
  });
  out.beta = Sequence([kernel, s = p.beta](Exponent n, Exponent order) {
    QSeries acc = QSeries::zero(order);
    for (Exponent k = 0; k <= n; ++k) acc = acc + apply(kernel->beta_weight(n, k), s, k, order);
    return acc;
  });
  out.tag = p.tag + rho.str();
  return out;
}

struct LimitOptions {
  Exponent dilation = 1;
  bool starred_lhs = false;  // the beta side only converges as an even/odd average
  Exponent first = 0;        // first n of both sums
  SumOptions sum;
};

struct LimitResult {
  QSeries lhs;
  QSeries rhs;
  std::optional<StarredSum> starred;
};

/// The beta side of the limiting form, sum_n (rho1)_n (rho2)_n (aq/rho1 rho2)^n beta_n.
inline QSeries limit_lhs_rows(const detail::BaileyKernel& k, const BaileyPair& p, Exponent n, Exponent order) {
  return apply(k.numerator(n), p.beta, n, order);
}

/// Both sides of the limiting form of the Bailey lemma. The pair is first
/// dilated by q -> q^d; rho stays literal.
inline LimitResult limit_identity(const BaileyPair& pair, const RhoPair& rho, Exponent order,
                                  const LimitOptions& opt = {}) {
  const BaileyPair p = dilated(pair, opt.dilation);
  const detail::BaileyKernel k(rho, p.a_exp, p.step);
  SumOptions so = opt.sum;
  so.first = opt.first;

  LimitResult out;
  const RowFn lhs_row = [&](Exponent n, Exponent N) { return limit_lhs_rows(k, p, n, N); };
  if (opt.starred_lhs) {
    out.starred = sum_starred(lhs_row, order, so);
    out.lhs = out.starred->average;
  } else {
    out.lhs = sum_rows(lhs_row, order, so);
  }

  const Lazy pre = k.prefactor();
  const RowFn rhs_row = [&](Exponent n, Exponent N) { return apply(k.alpha_weight(n), p.alpha, n, N); };
  const QSeries s = sum_rows(rhs_row, order - pre.lower_bound(), so);
  if (s.is_zero()) {
    out.rhs = QSeries::zero(order);
  } else {
    out.rhs = (pre.at(order - s.min_exp()) * s).truncated(order);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constructors from the general theorems.

namespace detail {

inline void require_base_one(const BaileyPair& p, const char* who) {
  if (p.a_exp != 0 || p.step != 1) {
    throw Error(ErrorKind::PreconditionFailed, std::string(who) + " needs a pair relative to 1, got " + p.base_str());
  }
}

inline void require_initial(const BaileyPair& p, const Rational& v, const char* who) {
  if (!is_constant(p.alpha(0, 40), v) || !is_constant(p.beta(0, 40), v)) {
    throw Error(ErrorKind::PreconditionFailed,
                std::string(who) + " needs alpha_0 = beta_0 = " + rational_to_string(v));
  }
}

inline QSeries geometric_inverse(Exponent e, Exponent order) { return series_invert(one_minus(1, e), order); }

}  // namespace detail

/// From (alpha, beta) relative to 1 with alpha_0 = beta_0 = 1, a pair relative
/// to 1 with alpha'_0 = beta'_0 = 0 and beta'_n = -beta_{n-1}/(1 - q^{2n-1}).
inline BaileyPair thm_main1(const BaileyPair& p) {
  detail::require_base_one(p, "thm_main1");
  detail::require_initial(p, 1, "thm_main1");
  BaileyPair out = p;
  out.alpha = Sequence([s = p.alpha](Exponent n, Exponent order) {
    QSeries acc = QSeries::zero(order);
    const Exponent h = n / 2;
    if (n == 0) return acc;
    if (n % 2 == 0) {
      // -(1 - q^{4h}) q^{2h^2-2h} sum_{j<h} q^{-2j^2-2j} alpha_{2j+1}
      for (Exponent j = 0; j < h; ++j) {
        Frac w = Frac::mono(-1, 2 * h * h - 2 * h - 2 * j * j - 2 * j);
        acc = acc + apply(w.times(one_minus(1, 4 * h)), s, 2 * j + 1, order);
      }
    } else {
      for (Exponent j = 0; j <= h; ++j) {
        Frac w = Frac::mono(-1, 2 * h * h - 2 * j * j);
        acc = acc + apply(w.times(one_minus(1, 4 * h + 2)), s, 2 * j, order);
      }
    }
    return acc;
  });
  out.beta = Sequence([s = p.beta](Exponent n, Exponent order) {
    if (n == 0) return QSeries::zero(order);
    Frac w = Frac::mono(-1, 0);
    return apply(w.over(one_minus(1, 2 * n - 1)), s, n - 1, order);
  });
  out.tag = "main1(" + p.tag + ")";
  return out;
}

/// From a pair relative to 1 with alpha_0 = beta_0 = 0, a pair relative to q
/// with beta'_n = -beta_{n+1}. The n = 0 term q^0 alpha_0/(1 - q^0) is read as 0.
inline BaileyPair thm_main2(const BaileyPair& p) {
  detail::require_base_one(p, "thm_main2");
  detail::require_initial(p, 0, "thm_main2");
  BaileyPair out = p;
  out.a_exp = 1;
  out.alpha = Sequence([s = p.alpha](Exponent n, Exponent order) {
    Frac w1 = Frac::mono(-1, 0);
    w1.over(one_minus(1, 1)).over(one_minus(1, 2 * n + 2));
    QSeries acc = apply(w1, s, n + 1, order);
    if (n > 0) {
      Frac w2 = Frac::mono(1, 2 * n);
      w2.over(one_minus(1, 1)).over(one_minus(1, 2 * n));
      acc = acc + apply(w2, s, n, order);
    }
    return acc;
  });
  out.beta = Sequence([s = p.beta](Exponent n, Exponent order) { return s(n + 1, order).scaled(-1); });
  out.tag = "main2(" + p.tag + ")";
  return out;
}

/// From a pair relative to 1 with alpha_0 = beta_0 = 1, a pair relative to q
/// with beta''_n = beta_n/(1 - q^{2n+1}).
inline BaileyPair thm_main3(const BaileyPair& p) {
  detail::require_base_one(p, "thm_main3");
  detail::require_initial(p, 1, "thm_main3");
  BaileyPair out = p;
  out.a_exp = 1;
  out.alpha = Sequence([s = p.alpha](Exponent n, Exponent order) {
    const Exponent h = n / 2;
    QSeries acc = QSeries::zero(order);
    auto add = [&](int sign, Exponent e, Exponent k) {
      Frac w = Frac::mono(sign, e);
      acc = acc + apply(w.over(one_minus(1, 1)), s, k, order);
    };
    if (n % 2 == 0) {
      for (Exponent j = 0; j <= h; ++j) add(1, 2 * h * h - 2 * j * j, 2 * j);
      for (Exponent j = 0; j < h; ++j) add(-1, 2 * h * h + 2 * h - 2 * j * j - 2 * j, 2 * j + 1);
    } else {
      for (Exponent j = 0; j <= h; ++j) add(1, 2 * h * h + 2 * h - 2 * j * j - 2 * j, 2 * j + 1);
      for (Exponent j = 0; j <= h; ++j) add(-1, 2 * h * h + 4 * h + 2 - 2 * j * j, 2 * j);
    }
    return acc;
  });
  out.beta = Sequence([s = p.beta](Exponent n, Exponent order) {
    Frac w;
    return apply(w.over(one_minus(1, 2 * n + 1)), s, n, order);
  });
  out.tag = "main3(" + p.tag + ")";
  return out;
}

/// Inverse of thm_main1: needs alpha'_0 = 0 and alpha'_1 = -(1 - q^2). The
/// second alpha term is read as 0 for n <= 1, where alpha'_{n-1}/(1 - q^{2n-2})
/// is either undefined or 0/0 with alpha'_0 = 0.
inline BaileyPair thm_main1_inverse(const BaileyPair& p) {
  detail::require_base_one(p, "thm_main1_inverse");
  if (!is_constant(p.alpha(0, 40), 0)) {
    throw Error(ErrorKind::PreconditionFailed, "thm_main1_inverse needs alpha'_0 = 0");
  }
  {
    const QSeries a1 = p.alpha(1, 40);
    const QSeries want = QSeries::from_terms({{0, -1}, {2, 1}});
    const Exponent n = a1.exact() ? 64 : a1.order();
    if (!series_eq_upto(a1, want.truncated(n), n).equal()) {
      throw Error(ErrorKind::PreconditionFailed, "thm_main1_inverse needs alpha'_1 = -(1 - q^2)");
    }
  }
  BaileyPair out = p;
  out.alpha = Sequence([s = p.alpha](Exponent n, Exponent order) {
    Frac w1 = Frac::mono(-1, 0);
    QSeries acc = apply(w1.over(one_minus(1, 2 * n + 2)), s, n + 1, order);
    if (n >= 2) {
      Frac w2 = Frac::mono(1, 2 * n - 2);
      acc = acc + apply(w2.over(one_minus(1, 2 * n - 2)), s, n - 1, order);
    }
    return acc;
  });
  out.beta = Sequence([s = p.beta](Exponent n, Exponent order) {
    Frac w = Frac::mono(-1, 0);
    return apply(w.times(one_minus(1, 2 * n + 1)), s, n + 1, order);
  });
  out.tag = "main1inv(" + p.tag + ")";
  return out;
}

/// Change of base: a pair relative to (1, q) becomes one relative to (1, q^2).
inline BaileyPair base_change(const BaileyPair& p) {
  detail::require_base_one(p, "base_change");
  BaileyPair out = p;
  out.step = 2;
  out.alpha = Sequence([s = p.alpha](Exponent n, Exponent order) {
    Frac w = Frac::mono(Rational(1, 2), n * n - n);
    return apply(w.times(QSeries::from_terms({{0, 1}, {2 * n, 1}})), s, n, order);
  });
  out.beta = Sequence([s = p.beta](Exponent n, Exponent order) {
    // 1/(-1;q)_{2n} sum_k q^{k^2-k} beta_k / (q^2;q^2)_{n-k}
    const QSeries lead = poch_finite(ThetaArg::neg_q(0), 1, 2 * n);
    QSeries acc = QSeries::zero(order);
    for (Exponent k = 0; k <= n; ++k) {
      Frac w = Frac::mono(1, k * k - k);
      w.over(lead).over(poch_finite(ThetaArg::q(2), 2, n - k));
      acc = acc + apply(w, s, k, order);
    }
    return acc;
  });
  out.tag = "basechange(" + p.tag + ")";
  return out;
}

}  // namespace qmock
