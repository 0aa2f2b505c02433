#pragma once

// Batch driver behind the `qmock` executable. run_cli takes the streams as
// parameters so the whole command surface can be tested in-process.
//
//   qmock (expand|verify|derive|pair-check) [--set S] [--ids a,b,c] [--order N]
//         [--nmax M] [--format text|json] [--row-cap K] [--chain C] [--jobs J]
//
// Exit codes: 0 every record equal, 1 some mismatch or error record,
// 2 unknown id / chain / suite or bad usage, 3 unexpected failure.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qmock/series_io.hpp"
#include "qmock/suites.hpp"

namespace qmock {

struct RunConfig {
  std::string command;
  std::string set = "all";
  std::string chain;
  std::vector<std::string> ids;
  Exponent order = 40;
  Exponent n_max = 10;
  std::string format = "text";
  std::optional<Exponent> row_cap;
  unsigned jobs = 0;

  SuiteOptions suite() const { return {order, n_max, ids, jobs}; }
};

namespace detail {

inline constexpr int kExitEqual = 0, kExitMismatch = 1, kExitUsage = 2, kExitInternal = 3;

/// Pair components are written <pair>.alpha(n) or <pair>.beta(n).
inline std::optional<QSeries> expand_pair_component(const std::string& id, Exponent order) {
  const auto dot = id.find('.');
  if (dot == std::string::npos) return std::nullopt;
  const std::string pair = id.substr(0, dot), rest = id.substr(dot + 1);
  const auto ids = pair_ids();
  if (std::find(ids.begin(), ids.end(), pair) == ids.end()) return std::nullopt;
  for (const char* which : {"alpha", "beta"}) {
    const std::string w(which);
    if (rest.rfind(w + "(", 0) != 0 || rest.back() != ')') continue;
    const std::string num = rest.substr(w.size() + 1, rest.size() - w.size() - 2);
    char* end = nullptr;
    const long n = std::strtol(num.c_str(), &end, 10);
    if (num.empty() || *end != '\0' || n < 0) break;
    const BaileyPair p = pair_catalog(pair);
    return w == "alpha" ? p.alpha(n, order) : p.beta(n, order);
  }
  throw Error(ErrorKind::UnknownId, "unknown id '" + id + "' (pair components are alpha(n) and beta(n))");
}

/// Identity forms are written <id>.double_sum, .hecke, .appell, .classical,
/// and .limit; a bare identity id means its double sum.
inline std::optional<QSeries> expand_identity_form(const std::string& id, Exponent order) {
  const auto dot = id.find('.');
  const std::string key = id.substr(0, dot);
  const IdentityEntry* entry = nullptr;
  for (const auto& e : identity_catalog()) {
    if (e.id == key) entry = &e;
  }
  if (!entry) return std::nullopt;
  const std::string form = dot == std::string::npos ? "double_sum" : id.substr(dot + 1);
  if (form == "double_sum") return eval_double_sum(*entry, order);
  if (form == "hecke") return eval_hecke_form(*entry, order);
  if (form == "appell") return eval_appell_form(*entry, order);
  if (form == "classical") return eval_classical_form(*entry, order);
  if (form == "limit") return eval_limit_path(*entry, order);
  throw Error(ErrorKind::UnknownId, "unknown id '" + id + "'");
}

}  // namespace detail

/// Any catalog series: classical function, identity form, pair component,
/// or an expression in the m / J notation (e.g. "2 m(q^5,q^6,q^2) - 1").
inline QSeries expand_id(const std::string& id, Exponent order) {
  if (auto s = detail::expand_identity_form(id, order)) return *s;
  if (auto s = detail::expand_pair_component(id, order)) return *s;
  try {
    return eval_expr(parse_expr(id), order);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnknownId) throw Error(ErrorKind::UnknownId, "unknown id '" + id + "'");
    throw;
  }
}

namespace detail {

inline int exit_code(const Report& r) { return r.all_equal() ? kExitEqual : kExitMismatch; }

inline int emit_report(Report rep, const RunConfig& cfg, std::ostream& out, bool streamed) {
  rep.sort_by_id();
  if (cfg.format == "json") {
    out << to_json(rep).dump(2) << "\n";
  } else {
    if (!streamed) {
      for (const auto& r : rep.records) out << record_line(r) << "\n";
    }
    out << summary_line(rep) << "\n";
  }
  return exit_code(rep);
}

inline int cmd_expand(const RunConfig& cfg, std::ostream& out) {
  if (cfg.ids.empty()) throw Error(ErrorKind::UnknownId, "expand needs --ids");
  nlohmann::json items = nlohmann::json::array();
  for (const auto& id : cfg.ids) {
    const QSeries s = expand_id(id, cfg.order);
    if (cfg.format == "json") {
      items.push_back({{"id", id}, {"order", cfg.order}, {"series", to_json(s)}});
    } else {
      if (cfg.ids.size() > 1) out << id << ": ";
      out << to_string(s) << "\n";
    }
  }
  if (cfg.format == "json") out << items.dump(2) << "\n";
  return kExitEqual;
}

/// Text mode prints each suite's records as soon as the suite finishes.
inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::string> sets;
  if (cfg.set == "all") {
    sets = {"pairs", "transforms", "identities", "hm", "props", "starred", "cross-path"};
  } else {
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), cfg.set) == names.end()) {
      throw Error(ErrorKind::UnknownId, "unknown suite '" + cfg.set + "'");
    }
    sets = {cfg.set};
  }
  Report all;
  for (const auto& s : sets) {
    Report r = run_suite(s, cfg.suite());
    if (cfg.format == "text") {
      for (const auto& rec : r.records) out << record_line(rec) << "\n";
      out.flush();
    }
    all.append(r);
  }
  return emit_report(std::move(all), cfg, out, true);
}

inline int cmd_derive(const RunConfig& cfg, std::ostream& out) {
  if (cfg.chain.empty()) throw Error(ErrorKind::UnknownId, "derive needs --chain");
  return emit_report(run_chain(cfg.chain, cfg.suite()), cfg, out, false);
}

inline int cmd_pair_check(const RunConfig& cfg, std::ostream& out) {
  const auto known = pair_ids();
  for (const auto& id : cfg.ids) {
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw Error(ErrorKind::UnknownId, "unknown pair id '" + id + "'");
    }
  }
  return emit_report(suite_pairs(cfg.suite()), cfg, out, false);
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"Exact q-series verification of Bailey pairs and mock theta identities", "qmock"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--ids", cfg.ids, "Comma-separated ids")->delimiter(',');
  app.add_option("--order", cfg.order, "Truncation order N")->check(CLI::PositiveNumber);
  app.add_option("--nmax", cfg.n_max, "Largest pair index checked")->check(CLI::NonNegativeNumber);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--row-cap", cfg.row_cap, "Hard cap on outer-sum rows (same as QMOCK_ROW_CAP)")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "Worker threads, 0 for one per core");
  auto* expand = app.add_subcommand("expand", "Print a catalog series to order N");
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--set", cfg.set, "pairs|transforms|identities|hm|props|all (also chain, corollary, starred, cross-path)");
  auto* derive = app.add_subcommand("derive", "Run a derivation chain");
  derive->add_option("--chain", cfg.chain, "bk-to-andrews|slater-to-corollaries");
  auto* pair_check = app.add_subcommand("pair-check", "Check the Bailey pair relation for catalog pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return detail::kExitEqual;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return detail::kExitUsage;
  }

  if (cfg.row_cap) setenv("QMOCK_ROW_CAP", std::to_string(*cfg.row_cap).c_str(), 1);

  try {
    if (*expand) return detail::cmd_expand(cfg, out);
    if (*verify) return detail::cmd_verify(cfg, out);
    if (*derive) return detail::cmd_derive(cfg, out);
    if (*pair_check) return detail::cmd_pair_check(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const bool usage = e.kind() == ErrorKind::UnknownId || e.kind() == ErrorKind::ParseError;
    return usage ? detail::kExitUsage : detail::kExitInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return detail::kExitInternal;
  }
  return detail::kExitUsage;
}

}  // namespace qmock
