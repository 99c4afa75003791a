#pragma once

#include <string>
#include <vector>

#include "hpx/engine.hpp"

namespace hpx {

/// Structural and fixpoint properties of a single branch: closure is
/// idempotent, layer t1 is contained in layer t1+1, every layer covers
/// exactly t <= t1, consistency unless flagged, sensing results are known
/// one step later. Returns one message per violated property.
std::vector<std::string> check_branch(const CompiledDomain& cd, const BranchState& s);

/// check_branch on both results of a step, plus inheritance: the child
/// starts from the parent's layer at the split and the split is well formed.
std::vector<std::string> check_step(const CompiledDomain& cd, const BranchState& before, const BranchStep& r);

/// check_branch on every branch plus tree shape: parent < child, children
/// pairwise distinct, child layer at the split equals the parent's.
std::vector<std::string> check_state(const CompiledDomain& cd, const EpistemicState& s);

}  // namespace hpx
