// Acceptance gate: `acceptance N` runs criterion N, `acceptance` runs all.
// One line per criterion; exit status 1 if any fails.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "qpi/check/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (int id = 1; id <= qpi::check::criterion_count; ++id) ids.push_back(id);
  }
  bool all = true;
  for (int id : ids) {
    const qpi::check::CriterionResult r = qpi::check::run_criterion(id);
    all = all && r.passed;
    char seconds[32];
    std::snprintf(seconds, sizeof seconds, "%.3f s", r.seconds);
    std::cout << "criterion " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << " (" << seconds
              << ") " << r.name << ": " << r.detail << std::endl;
  }
  return all ? 0 : 1;
}
