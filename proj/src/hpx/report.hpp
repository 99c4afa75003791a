#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hpx/search.hpp"

namespace hpx {

struct SolveOptions {
  SearchOptions search;  // search.max_branches < 0 selects default_max_branches
  bool optimal = false;
  bool oracle_check = false;
  bool check_invariants = false;  // wraps search.on_step, a caller hook still runs first
};

struct OracleSummary {
  std::string status = "skipped";  // skipped, ok, violations, unavailable
  std::size_t atoms_checked = 0;
  std::size_t violations = 0;
  std::string detail;
};

struct RunReport {
  std::string domain;
  std::size_t fluents = 0;
  std::size_t actions = 0;
  int max_steps = 0;
  int max_branches = 0;
  std::string mode = "sequential";
  bool optimize = false;
  bool optimal = false;
  bool plan_found = false;
  bool verified = false;
  std::size_t occurrences = 0;
  std::size_t branches = 0;
  double wall_ms = 0;
  std::size_t nodes = 0;
  std::vector<std::size_t> knows_per_step;
  OracleSummary oracle;
  std::size_t invariant_violations = 0;

  /// Single line JSON object.
  std::string to_json() const;
};

struct SolveResult {
  std::optional<ConditionalPlan> plan;
  RunReport report;
  std::vector<std::string> trace;     // engine atoms of the replayed plan
  std::vector<std::string> problems;  // verification, oracle and invariant failures

  /// A plan was found but did not survive replay, the oracle or the
  /// invariant checks.
  bool inconsistent() const { return plan.has_value() && !problems.empty(); }
};

/// Search, replay, verification and optional checks. Throws DomainError on
/// an invalid domain.
SolveResult solve(const PlanningDomain& d, SolveOptions opts);

}  // namespace hpx
