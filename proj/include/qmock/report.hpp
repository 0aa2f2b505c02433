#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qmock/series.hpp"

namespace qmock {

enum class Status { Equal, Mismatch, Error };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Equal: return "equal";
    case Status::Mismatch: return "mismatch";
    case Status::Error: return "error";
  }
  return "?";
}

inline Status parse_status(const std::string& s) {
  if (s == "equal") return Status::Equal;
  if (s == "mismatch") return Status::Mismatch;
  if (s == "error") return Status::Error;
  throw Error(ErrorKind::ParseError, "unknown status '" + s + "'");
}

struct Record {
  std::string id;
  std::string label;
  Status status = Status::Equal;
  Exponent order = 0;
  std::optional<Mismatch> first_mismatch;
  double elapsed_ms = 0;
  std::string message;  // error text, or extra detail such as a mismatch position
};

struct Report {
  std::vector<Record> records;

  void add(Record r) { records.push_back(std::move(r)); }
  void append(const Report& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
  }

  std::size_t count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [s](const Record& r) { return r.status == s; }));
  }
  bool all_equal() const { return count(Status::Equal) == records.size(); }

  /// Natural order on ids (M2 before M10); ties keep insertion order.
  void sort_by_id() {
    std::stable_sort(records.begin(), records.end(),
                     [](const Record& a, const Record& b) { return natural_less(a.id, b.id); });
  }

  static bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
        std::size_t i2 = i, j2 = j;
        while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
        while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
        const std::string x = a.substr(i, i2 - i), y = b.substr(j, j2 - j);
        if (x.size() != y.size()) return x.size() < y.size();
        if (x != y) return x < y;
        i = i2;
        j = j2;
      } else {
        if (a[i] != b[j]) return a[i] < b[j];
        ++i;
        ++j;
      }
    }
    return a.size() - i < b.size() - j;
  }
};

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

/// Runs a check and converts its outcome, including any exception, to a record.
/// The check returns the comparison, or nullopt for a plain pass.
inline Record run_check(std::string id, std::string label, Exponent order,
                        const std::function<EqualityReport()>& check) {
  Record r{std::move(id), std::move(label), Status::Equal, order, std::nullopt, 0, {}};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const EqualityReport eq = check();
    if (!eq.equal()) {
      r.status = Status::Mismatch;
      r.first_mismatch = eq.mismatch;
    }
  } catch (const std::exception& e) {  // library errors carry their kind as a prefix
    r.status = Status::Error;
    r.message = e.what();
  }
  r.elapsed_ms = elapsed_ms(t0);
  return r;
}

/// A check whose outcome is a boolean rather than a series comparison.
inline EqualityReport as_report(bool ok, Exponent at = 0) {
  if (ok) return {};
  return {Mismatch{at, 0, 0}};
}

// ---------------------------------------------------------------------------
// Serialization.

inline nlohmann::json to_json(const Record& r) {
  nlohmann::json j{{"id", r.id},
                   {"comparison", r.label},
                   {"status", status_name(r.status)},
                   {"order", r.order},
                   {"elapsed_ms", r.elapsed_ms}};
  if (r.first_mismatch) {
    j["first_mismatch"] = {{"exponent", r.first_mismatch->exponent},
                           {"left", rational_to_fraction(r.first_mismatch->left)},
                           {"right", rational_to_fraction(r.first_mismatch->right)}};
  } else {
    j["first_mismatch"] = nullptr;
  }
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

inline nlohmann::json to_json(const Report& rep) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& r : rep.records) items.push_back(to_json(r));
  return {{"records", items},
          {"summary",
           {{"total", rep.records.size()},
            {"equal", rep.count(Status::Equal)},
            {"mismatch", rep.count(Status::Mismatch)},
            {"error", rep.count(Status::Error)}}}};
}

inline Rational rational_from_json(const nlohmann::json& j) {
  Rational r(j.get<std::string>());
  r.canonicalize();
  return r;
}

inline Report report_from_json(const nlohmann::json& j) {
  Report rep;
  for (const auto& item : j.at("records")) {
    Record r;
    r.id = item.at("id").get<std::string>();
    r.label = item.at("comparison").get<std::string>();
    r.status = parse_status(item.at("status").get<std::string>());
    r.order = item.at("order").get<Exponent>();
    r.elapsed_ms = item.at("elapsed_ms").get<double>();
    if (!item.at("first_mismatch").is_null()) {
      const auto& m = item.at("first_mismatch");
      r.first_mismatch = Mismatch{m.at("exponent").get<Exponent>(), rational_from_json(m.at("left")),
                                  rational_from_json(m.at("right"))};
    }
    if (item.contains("message")) r.message = item.at("message").get<std::string>();
    rep.add(std::move(r));
  }
  const auto& s = j.at("summary");
  if (s.at("total").get<std::size_t>() != rep.records.size() ||
      s.at("equal").get<std::size_t>() != rep.count(Status::Equal) ||
      s.at("mismatch").get<std::size_t>() != rep.count(Status::Mismatch) ||
      s.at("error").get<std::size_t>() != rep.count(Status::Error)) {
    throw Error(ErrorKind::ParseError, "report summary does not match its records");
  }
  return rep;
}

inline std::string record_line(const Record& r) {
  std::ostringstream os;
  os << status_name(r.status) << "  " << r.id << "  " << r.label << "  order " << r.order;
  if (r.first_mismatch) {
    os << "  first mismatch at q^" << r.first_mismatch->exponent << ": "
       << rational_to_string(r.first_mismatch->left) << " vs " << rational_to_string(r.first_mismatch->right);
  }
  if (!r.message.empty()) os << "  (" << r.message << ")";
  os << "  " << static_cast<long long>(r.elapsed_ms + 0.5) << " ms";
  return os.str();
}

inline std::string summary_line(const Report& rep) {
  std::ostringstream os;
  os << rep.records.size() << " checks: " << rep.count(Status::Equal) << " equal, "
     << rep.count(Status::Mismatch) << " mismatch, " << rep.count(Status::Error) << " error";
  return os.str();
}

}  // namespace qmock
