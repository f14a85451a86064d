// Runs every suite once and prints one line per acceptance criterion.

#include "suites.hpp"

#include <cstdio>
#include <iostream>

using namespace iw;

namespace {

struct Criterion {
  int number;
  const char* suite;
  double limit_seconds;
};

// runtime limits per criterion
constexpr Criterion kCriteria[] = {
    {1, "schreier-oracle", 30},  {2, "schedule", 1},      {3, "norm-oracle", 300}, {4, "norm-axioms", 60},
    {5, "ell1-lower", 60},       {6, "aux-upper", 120},   {7, "basic-inequality", 180},
    {8, "c0-array", 300},        {9, "tilde", 180},       {10, "p-variant", 180},  {11, "dual", 240},
};

}  // namespace

int main() {
  HarnessConfig cfg;
  cfg.horizon = 4;
  cfg.interval_precision = Rational(1, 1000000);  // enclosure widths for the p = 2 suite
  int failed = 0;
  for (const auto& c : kCriteria) {
    auto rep = suites::run_suite(c.suite, cfg);
    const bool in_time = rep.runtime_seconds < c.limit_seconds;
    const bool ok = rep.pass() && in_time;
    failed += !ok;
    std::printf("%s criterion %2d %-17s %4zu assertions, %zu failed, %7.2f s (limit %.0f s)%s%s\n", ok ? "PASS" : "FAIL",
                c.number, c.suite, rep.rows.size(), rep.failures(), rep.runtime_seconds, c.limit_seconds,
                rep.error.empty() ? "" : " error: ", rep.error.c_str());
    for (const auto& row : rep.rows)
      if (!row.pass)
        std::printf("     failed: %s  [%s %s %s]\n", row.label.c_str(), to_string(row.lhs).c_str(),
                    relation_symbol(row.relation), to_string(row.rhs).c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, std::size(kCriteria));
  return failed == 0 ? 0 : 1;
}
