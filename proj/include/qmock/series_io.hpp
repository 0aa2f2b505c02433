#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "qmock/series.hpp"

namespace qmock {

/// Textual form: "1 + 2*q + 3*q^2 - 1/2*q^-3". The order is not printed.
inline std::string to_string(const QSeries& s) {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : s.terms()) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << rational_to_string(mag);
      continue;
    }
    if (mag != 1) os << rational_to_string(mag) << "*";
    os << "q";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

/// Inverse of to_string; the caller supplies the order the text is certified to.
inline QSeries parse_series(std::string_view text, Exponent order = kExactOrder) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s == "0") return QSeries::zero(order);
  std::vector<QSeries::Term> terms;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError, why + " in '" + std::string(text) + "'");
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!terms.empty()) {
      fail("expected sign");
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && !(s[end] == '-' && end > pos && s[end - 1] != '^')) {
      ++end;
    }
    const std::string term = s.substr(pos, end - pos);
    pos = end;
    if (term.empty()) fail("empty term");
    Rational coeff = 1;
    Exponent e = 0;
    const auto qpos = term.find('q');
    if (qpos == std::string::npos) {
      coeff = parse_rational(term);
    } else {
      if (qpos > 0) {
        if (qpos < 2 || term[qpos - 1] != '*') fail("expected '*' before q");
        coeff = parse_rational(term.substr(0, qpos - 1));
      }
      const std::string rest = term.substr(qpos + 1);
      if (rest.empty()) {
        e = 1;
      } else {
        if (rest[0] != '^' || rest.size() < 2) fail("expected '^' after q");
        try {
          std::size_t used = 0;
          e = std::stoll(rest.substr(1), &used);
          if (used != rest.size() - 1) fail("bad exponent");
        } catch (const std::logic_error&) {
          fail("bad exponent");
        }
      }
    }
    terms.emplace_back(e, sign < 0 ? Rational(-coeff) : coeff);
  }
  return QSeries::from_terms(std::move(terms), order);
}

/// {"min_exp": m, "order": N, "coeffs": [[e, "num/den"], ...]}; an exact
/// series carries "order": null.
inline nlohmann::json to_json(const QSeries& s) {
  nlohmann::json j;
  j["min_exp"] = s.exact() && s.is_zero() ? nlohmann::json(nullptr) : nlohmann::json(s.min_exp());
  j["order"] = s.exact() ? nlohmann::json(nullptr) : nlohmann::json(s.order());
  auto coeffs = nlohmann::json::array();
  for (const auto& [e, c] : s.terms()) coeffs.push_back({e, rational_to_fraction(c)});
  j["coeffs"] = std::move(coeffs);
  return j;
}

inline QSeries series_from_json(const nlohmann::json& j) {
  try {
    const Exponent order = j.at("order").is_null() ? kExactOrder : j.at("order").get<Exponent>();
    std::vector<QSeries::Term> terms;
    Exponent prev = 0;
    bool first = true;
    for (const auto& item : j.at("coeffs")) {
      const auto e = item.at(0).get<Exponent>();
      Rational c = parse_rational(item.at(1).get<std::string>());
      if (!first && e <= prev) throw Error(ErrorKind::ParseError, "exponents not increasing");
      if (c == 0) throw Error(ErrorKind::ParseError, "stored zero coefficient");
      if (e > order) throw Error(ErrorKind::ParseError, "term beyond order");
      first = false;
      prev = e;
      terms.emplace_back(e, std::move(c));
    }
    QSeries s = QSeries::from_terms(std::move(terms), order);
    if (!j.at("min_exp").is_null() && j.at("min_exp").get<Exponent>() != s.min_exp()) {
      throw Error(ErrorKind::ParseError, "min_exp does not match coefficients");
    }
    return s;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::ParseError, ex.what());
  }
}

}  // namespace qmock
