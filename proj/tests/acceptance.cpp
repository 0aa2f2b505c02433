// One PASS/FAIL line per acceptance criterion. Every comparison is exact
// coefficient equality; the exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <iostream>

#include "qmock/suites.hpp"

using namespace qmock;

namespace {

struct Criterion {
  const char* name;
  const char* what;
  std::function<Report()> run;
};

SuiteOptions opts(Exponent order, Exponent n_max = 10) {
  SuiteOptions o;
  o.order = order;
  o.n_max = n_max;
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"pairs", "every catalog pair satisfies the pair relation, n<=12, q^50",
       [] { return suite_pairs(opts(50, 12)); }},
      {"transforms", "theorem constructors, composition, inverse, recurrence, n<=10, q^40",
       [] { return suite_transforms(opts(40, 10)); }},
      {"chain", "base change bk -> andrews1 -> andrews2, andrews0; b'_n closed form",
       [] { return suite_chain(opts(40, 8)); }},
      {"identities", "W1-W4, M1-M19: double sum = Hecke = Appell-Lerch (and classical), q^40",
       [] { return suite_identities(opts(40)); }},
      {"corollary", "corollary identities and W2 = 2q T1 - q S1, q^40", [] { return suite_corollary(opts(40)); }},
      {"hm", "f_{n,n+p,n} = expansion at every generic specialization, q^40 (q^30 for p=4)",
       [] { return suite_hm(opts(40)); }},
      {"function-laws", "m1 m2 m3 mprod, j1 j2, sum = product, littlefacts, Chu-Vandermonde, Heine",
       [] { return suite_function_laws(opts(40)); }},
      {"starred", "W2 M2 M8 M15: even != odd partial sums, average = closed forms, q^20",
       [] { return suite_starred(opts(20)); }},
      {"cross-path", "double sum = Bailey limiting-form lhs for every identity, q^30",
       [] { return suite_cross_path(opts(30)); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    std::string crash;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      crash = e.what();
    }
    const bool ok = crash.empty() && !r.records.empty() && r.all_equal();
    failed += ok ? 0 : 1;
    std::printf("%s  %-14s %s  [%zu/%zu equal, %.1f s]\n", ok ? "PASS" : "FAIL", c.name, c.what,
                r.count(Status::Equal), r.records.size(), elapsed_ms(t0) / 1000.0);
    if (!crash.empty()) std::printf("      error: %s\n", crash.c_str());
    for (const auto& rec : r.records) {
      if (rec.status != Status::Equal) std::printf("      %s\n", record_line(rec).c_str());
    }
    if (std::string(c.name) == "starred") {
      for (const auto& rec : r.records) {
        if (!rec.message.empty()) std::printf("      %s %s\n", rec.id.c_str(), rec.message.c_str());
      }
    }
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
