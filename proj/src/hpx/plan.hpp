#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hpx/engine.hpp"

namespace hpx {

/// Tree form of a conditional plan. A node with no actions is a leaf.
/// After a branched sensing step `next[0]` continues the positive outcome
/// in the same branch and `next[1]` the negative outcome in a new branch.
struct ConditionalPlan {
  std::vector<ActionId> actions;
  SenseOutcome outcome = SenseOutcome::none;
  FluentId sensed = 0;
  std::vector<ConditionalPlan> next;

  bool is_leaf() const { return actions.empty(); }
  std::size_t occurrence_count() const;
  /// Number of branch events (extra branches used).
  std::size_t branch_count() const;
  std::size_t depth() const;

  bool operator==(const ConditionalPlan&) const = default;
};

enum class AtomKind { occ, sres, next_br };

struct PlanAtom {
  AtomKind kind = AtomKind::occ;
  std::string name;  // action name or literal (`-f` for negative)
  int step = 0;
  int branch = 0;
  int child = 0;  // nextBr only

  std::string to_string() const;
  auto operator<=>(const PlanAtom&) const = default;
};

class PlanFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Atoms with canonical branch numbering: at every step parents are visited
/// by increasing id and each branched sensing takes the next free id.
std::vector<PlanAtom> extract_atoms(const PlanningDomain& d, const ConditionalPlan& p);

/// Inverse of extract_atoms. Accepts any branch numbering satisfying the
/// tree constraints. Throws PlanFormatError.
ConditionalPlan parse_atoms(const PlanningDomain& d, const std::vector<PlanAtom>& atoms);

/// Parses `occ(a,0,0)`, `sRes(-f,1,1)`, `nextBr(1,0,1)`.
PlanAtom parse_atom_text(const std::string& text);

struct ReplayResult {
  EpistemicState state;
  std::vector<std::string> errors;
};

/// Runs the plan through the global engine until `max_steps`.
ReplayResult replay_plan(const CompiledDomain& cd, const ConditionalPlan& p, int max_steps, int max_branches);

struct BranchVerdict {
  int branch = 0;
  bool weak = false;
  bool strong = false;
};

struct VerificationReport {
  std::vector<BranchVerdict> branches;
  bool plan_found = false;
  std::vector<std::string> errors;
};

VerificationReport verify_state(const EpistemicState& s, const CompiledDomain& cd);
VerificationReport verify_plan(const PlanningDomain& d, const ConditionalPlan& p, int max_steps, int max_branches,
                               EngineOptions opts = {});

std::string render_plan_tree(const PlanningDomain& d, const ConditionalPlan& p);
std::string render_plan_atoms(const PlanningDomain& d, const ConditionalPlan& p);
/// One JSON object per occurrence with fields action, step, branch and,
/// for sensing, sensed, then_branch, else_branch.
std::string render_plan_json_lines(const PlanningDomain& d, const ConditionalPlan& p);

}  // namespace hpx
