#include <algorithm>
#include <cstdlib>
#include <iostream>

#include "fq/reproduce.hpp"

// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any
// criterion fails.
int main() {
  fq::AcceptanceOptions options;
  if (const char* w = std::getenv("FQ_WORKERS")) options.workers = std::max(1, std::atoi(w));
  bool all = true;
  for (const auto& id : fq::criterion_ids()) {
    const auto r = fq::run_criterion(id, options);
    all = all && r.passed;
    std::cout << fq::format_results({r}) << std::flush;
  }
  return all ? 0 : 1;
}
