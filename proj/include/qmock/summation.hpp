#pragma once

#include <cstdlib>
#include <functional>
#include <optional>
#include <string>

#include "qmock/series.hpp"

namespace qmock {

/// Row cap for outer sums: QMOCK_ROW_CAP if set, else 4N + 64.
inline Exponent default_row_cap(Exponent order) {
  if (const char* env = std::getenv("QMOCK_ROW_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 4 * std::max<Exponent>(order, 0) + 64;
}

using RowFn = std::function<QSeries(Exponent n, Exponent order)>;

struct SumOptions {
  Exponent first = 0;
  std::optional<Exponent> row_cap;
  int quiet_rows = 2;  // consecutive vanishing rows that end the sum
};

/// sum_{n >= first} row(n) through q^order. The sum ends once `quiet_rows`
/// consecutive rows vanish through q^order; the caller vouches that row
/// exponents keep growing from there on.
inline QSeries sum_rows(const RowFn& row, Exponent order, const SumOptions& opt = {}) {
  const Exponent cap = opt.row_cap.value_or(default_row_cap(order));
  QSeries acc = QSeries::zero(order);
  int quiet = 0;
  for (Exponent n = opt.first; n < opt.first + cap; ++n) {
    const QSeries r = row(n, order).truncated(order);
    if (r.is_zero()) {
      if (++quiet >= opt.quiet_rows) return acc;
    } else {
      quiet = 0;
      acc = acc + r;
    }
  }
  throw Error(ErrorKind::NonConvergent,
              "outer sum did not settle within " + std::to_string(cap) + " rows at order " +
                  std::to_string(order));
}

struct StarredSum {
  QSeries even;     // limit of partial sums ending at an even index
  QSeries odd;      // limit of partial sums ending at an odd index
  QSeries average;  // (even + odd) / 2
  Exponent rows = 0;
};

/// Averaged sum for series whose partial sums oscillate: the even- and
/// odd-indexed partial sums are each taken as settled once they agree twice
/// in a row through q^order.
inline StarredSum sum_starred(const RowFn& row, Exponent order, const SumOptions& opt = {}) {
  const Exponent cap = opt.row_cap.value_or(default_row_cap(order));
  QSeries partial = QSeries::zero(order);
  std::optional<QSeries> last[2];
  int agree[2] = {0, 0};
  std::optional<QSeries> settled[2];
  for (Exponent n = opt.first; n < opt.first + cap; ++n) {
    partial = partial + row(n, order).truncated(order);
    const int parity = static_cast<int>(((n % 2) + 2) % 2);
    if (settled[parity]) continue;
    if (last[parity] && last[parity]->identical(partial)) {
      if (++agree[parity] >= 2) settled[parity] = partial;
    } else {
      agree[parity] = 0;
    }
    last[parity] = partial;
    if (settled[0] && settled[1]) {
      StarredSum s;
      s.even = *settled[0];
      s.odd = *settled[1];
      s.average = (s.even + s.odd).scaled(Rational(1, 2));
      s.rows = n - opt.first + 1;
      return s;
    }
  }
  throw Error(ErrorKind::StabilizationFailure,
              "even/odd partial sums did not settle within " + std::to_string(cap) +
                  " rows at order " + std::to_string(order));
}

}  // namespace qmock
