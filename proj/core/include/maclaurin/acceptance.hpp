#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "maclaurin/report.hpp"

namespace maclaurin {

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  unsigned threads = 0;
  /// Multiplies every Monte Carlo sample count; 1 is the full suite.
  double sample_scale = 1.0;
  /// Criterion ids to run; empty runs all thirteen.
  std::vector<int> only;
  /// Receives one line per criterion as it finishes.
  std::ostream* log = nullptr;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceResult {
  std::vector<CriterionResult> criteria;
  Report report;  ///< rows of every Monte Carlo criterion

  bool all_passed() const noexcept;
};

AcceptanceResult run_acceptance(const AcceptanceOptions& options);

/// "[PASS] 07 name: detail (12.3 s)"
std::string format_criterion(const CriterionResult& r);

}  // namespace maclaurin
