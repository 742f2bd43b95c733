#pragma once

#include <string>
#include <vector>

namespace fq {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  /// Directory holding table3.txt, table4.txt and tau12.fq.
  std::string data_dir = FQ_DATA_DIR;
  /// Worker count for the parallel enumeration timing.
  int workers = 8;
  /// Criterion ids to run; empty runs all.
  std::vector<std::string> only;
};

/// Ids C1..C10 in order.
std::vector<std::string> criterion_ids();

/// Runs one criterion; unknown ids throw PreconditionError. Exceptions
/// raised while evaluating are reported as failures.
CriterionResult run_criterion(const std::string& id, const AcceptanceOptions& options = {});

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// One "PASS <id> <title>: <detail>" or "FAIL ..." line per result.
std::string format_results(const std::vector<CriterionResult>& results);

}  // namespace fq
