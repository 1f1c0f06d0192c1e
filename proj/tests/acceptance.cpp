// Runs the acceptance criteria and prints one line per criterion.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "solvgeo/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> ids;
  bool verbose = false;
  app.add_option("--criterion", ids, "criterion id (repeatable; all when omitted)")
      ->check(CLI::Range(1, solvgeo::kCriterionCount));
  app.add_flag("-v,--verbose", verbose, "print every check");
  CLI11_PARSE(app, argc, argv);
  if (ids.empty())
    for (int i = 1; i <= solvgeo::kCriterionCount; ++i) ids.push_back(i);

  solvgeo::ReportOptions opt;
  if (const char* s = std::getenv("SOLVGEO_SEED")) opt.seed = std::stoull(s, nullptr, 0);

  bool all = true;
  for (const int id : ids) {
    const solvgeo::CriterionResult r = solvgeo::run_criterion(id, opt);
    for (const auto& c : r.checks)
      if (verbose || !c.passed)
        std::cout << "  " << (c.passed ? "ok   " : "FAIL ") << c.name << "  value=" << c.value
                  << " bound=" << c.bound << (c.detail.empty() ? "" : "  " + c.detail) << '\n';
    std::cout << r.summary_line() << std::endl;
    all = all && r.passed();
  }
  return all ? 0 : 1;
}
