#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hpx/plan.hpp"

namespace hpx {

struct SearchOptions {
  int max_steps = 8;
  int max_branches = 0;
  PlanMode mode = PlanMode::sequential;
  /// Skip actions that cannot change knowledge and treat static fluents as facts.
  bool optimize = false;
  int jobs = 1;
  /// Called after every successful expansion with the state before the step
  /// and its result. May run on several threads when jobs > 1.
  std::function<void(const CompiledDomain&, const BranchState&, const BranchStep&)> on_step;
};

struct SearchStats {
  std::size_t nodes = 0;
};

/// Some plan within the bounds, shallowest first (iterative deepening).
std::optional<ConditionalPlan> find_plan(const PlanningDomain& d, const SearchOptions& opts,
                                         SearchStats* stats = nullptr);

/// A plan with the fewest occurrences over all branches.
std::optional<ConditionalPlan> find_optimal_plan(const PlanningDomain& d, const SearchOptions& opts,
                                                 SearchStats* stats = nullptr);

/// Default branch bound: sensing actions times step bound.
int default_max_branches(const PlanningDomain& d, int max_steps);

/// Occurrence sets tried at a node, in search order.
std::vector<std::vector<ActionId>> candidate_sets(const CompiledDomain& cd, const BranchState& s, bool optimize);

}  // namespace hpx
