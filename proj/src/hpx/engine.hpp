#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpx/model.hpp"

namespace hpx {

enum class PlanMode { sequential, concurrent };

struct EngineOptions {
  PlanMode mode = PlanMode::sequential;
  /// Treat static fluents as plain facts (holds/1) instead of knowledge.
  bool static_as_facts = false;
};

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class StepErrorKind { concurrency, executability, branch_budget, step_budget, unused_branch };

class StepError : public std::runtime_error {
 public:
  StepError(StepErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  StepErrorKind kind() const { return kind_; }

 private:
  StepErrorKind kind_;
};

/// knows(l, t, t1, br) for one branch and one eval step t1, all t <= t1.
class Layer {
 public:
  Layer() = default;
  Layer(int eval_step, std::size_t literals)
      : t1_(eval_step), lits_(literals), bits_(static_cast<std::size_t>(eval_step + 1) * literals, 0) {}

  bool empty() const { return t1_ < 0; }
  int eval_step() const { return t1_; }
  std::size_t literals() const { return lits_; }

  bool has(int t, std::size_t li) const {
    return t >= 0 && t <= t1_ && bits_[static_cast<std::size_t>(t) * lits_ + li] != 0;
  }
  bool has(int t, Literal l) const { return has(t, literal_index(l)); }
  /// Returns true if the atom is new.
  bool set(int t, std::size_t li) {
    auto& b = bits_[static_cast<std::size_t>(t) * lits_ + li];
    if (b) return false;
    b = 1;
    return true;
  }
  std::size_t count() const;

  /// Same knowledge, one eval step later (forward propagation).
  Layer extended() const;

  bool operator==(const Layer&) const = default;

 private:
  int t1_ = -1;
  std::size_t lits_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct HistoryStep {
  std::vector<ActionId> actions;
  std::optional<Literal> observed;
};

struct SensingResult {
  Literal literal;
  int step = 0;
};

/// Knowledge history of a single branch.
struct BranchState {
  int id = 0;
  int parent = -1;
  int used_from = 0;
  int horizon = 0;
  bool inconsistent = false;
  std::vector<Layer> layers;                       // by eval step; empty before the split
  std::vector<std::vector<std::uint32_t>> applied;  // global effect index, by step
  std::vector<HistoryStep> history;                // path from the root, by step
  std::vector<std::pair<ActionId, int>> occurrences;
  std::vector<SensingResult> sensing_results;

  const Layer& current() const { return layers[static_cast<std::size_t>(horizon)]; }
};

enum class SenseOutcome { none, branched, known_true, known_false };

struct BranchStep {
  BranchState same;
  std::optional<BranchState> child;
  SenseOutcome outcome = SenseOutcome::none;
  FluentId sensed = 0;
};

struct CompiledEffect {
  ActionId action = 0;
  Literal effect;
  std::vector<Literal> conditions;
};

/// A domain with the lookup tables the engine needs.
class CompiledDomain {
 public:
  explicit CompiledDomain(PlanningDomain d, EngineOptions opts = {});

  const PlanningDomain& domain() const { return d_; }
  const EngineOptions& options() const { return opts_; }
  std::size_t literal_count() const { return 2 * d_.fluent_count(); }
  const std::vector<CompiledEffect>& effects() const { return effects_; }
  std::span<const std::uint32_t> effects_of(ActionId a) const { return action_effects_[a]; }

  /// Static literal answered from init rather than from knowledge atoms.
  bool is_fact_literal(Literal l) const { return opts_.static_as_facts && d_.is_static(l.fluent); }

  /// Closed state of branch 0 at eval step 0. Throws DomainError if the
  /// initial knowledge is contradictory.
  BranchState initial() const;

  bool knows(const BranchState& s, Literal l, int t, int t1) const;
  bool executable(const BranchState& s, ActionId a) const;

  /// Throws StepError(concurrency) if the set violates the listing's
  /// concurrency constraints.
  void check_concurrency(std::span<const ActionId> actions) const;

  /// Executes `actions` at s.horizon. `child_id` names a branch created by
  /// an unknown sensing outcome. Budgets are the caller's concern except
  /// for the step bound.
  BranchStep step(const BranchState& s, std::span<const ActionId> actions, int child_id, int max_steps) const;

  /// Idle steps until `horizon == to`.
  BranchState advance(BranchState s, int to) const;

  /// Runs the knowledge rules on layer t1 to a fixpoint. Idempotent.
  void close(BranchState& s, int t1) const;

  bool weak_goal(const BranchState& s, int t) const;
  bool strong_goal(const BranchState& s, int t) const;

 private:
  void seed_facts(Layer& layer) const;
  void extend(BranchState& s, std::span<const Literal> sensed) const;

  PlanningDomain d_;
  EngineOptions opts_;
  std::vector<CompiledEffect> effects_;
  std::vector<std::vector<std::uint32_t>> action_effects_;
  std::vector<Literal> weak_;
  std::vector<Literal> strong_;
};

struct BranchEvent {
  int step = 0;
  int parent = 0;
  int child = 0;
  FluentId fluent = 0;
};

/// All branches of one run (the global view used by replay and traces).
struct EpistemicState {
  std::vector<BranchState> branches;
  std::vector<BranchEvent> events;
  int horizon = 0;
  int max_steps = 0;
  int max_branches = 0;
};

EpistemicState init_state(const CompiledDomain& cd, int max_steps, int max_branches);

/// Executes one step in every used branch. Branches missing from `occ` idle.
/// Children are numbered in order of creation, parents visited by id.
void step(EpistemicState& s, const CompiledDomain& cd, const std::map<int, std::vector<ActionId>>& occ);

bool knows_query(const EpistemicState& s, const CompiledDomain& cd, Literal l, int t, int t1, int br);

/// One atom per line, sorted: knows/4, sRes/3, nextBr/3, occ/3.
std::vector<std::string> trace_atoms(const EpistemicState& s, const CompiledDomain& cd);

/// Number of knows atoms per eval step summed over branches.
std::vector<std::size_t> knows_counts(const EpistemicState& s, const CompiledDomain& cd);

}  // namespace hpx
