#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "qmock/error.hpp"

namespace qmock {

using Rational = mpq_class;
using Integer = mpz_class;

/// Always "num/den", also for integers ("3/1"). This is the report format.
inline std::string rational_to_fraction(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Shortest form: "3", "-1/2".
inline std::string rational_to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_str();
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
  if (r.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace qmock
