#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hpx {

using FluentId = std::uint32_t;
using ActionId = std::uint32_t;

/// A signed fluent. `positive == false` is the complement `¬f`.
struct Literal {
  FluentId fluent = 0;
  bool positive = true;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

constexpr Literal complement(Literal l) { return {l.fluent, !l.positive}; }
constexpr Literal positify(Literal l) { return {l.fluent, true}; }
constexpr Literal pos(FluentId f) { return {f, true}; }
constexpr Literal neg(FluentId f) { return {f, false}; }

/// Dense index of a literal in tables sized `2 * fluent_count`.
constexpr std::size_t literal_index(Literal l) {
  return 2 * static_cast<std::size_t>(l.fluent) + (l.positive ? 0 : 1);
}

/// `when (and c1 ... cn) e`
struct EffectProposition {
  std::string id;
  Literal effect;
  std::vector<Literal> conditions;

  bool operator==(const EffectProposition&) const = default;
};

/// `:observe f`
struct KnowledgeProposition {
  FluentId fluent = 0;

  bool operator==(const KnowledgeProposition&) const = default;
};

struct Action {
  std::string name;
  std::vector<EffectProposition> effects;
  std::vector<KnowledgeProposition> observes;
  std::vector<Literal> executable;

  bool is_sensing() const { return !observes.empty(); }
  bool is_noop() const { return effects.empty() && observes.empty(); }
  bool operator==(const Action&) const = default;
};

struct OneofConstraint {
  std::vector<Literal> literals;

  bool operator==(const OneofConstraint&) const = default;
};

enum class GoalKind { weak, strong };

struct GoalProposition {
  GoalKind kind = GoalKind::strong;
  std::vector<Literal> literals;

  bool operator==(const GoalProposition&) const = default;
};

/// A ground planning domain: initial knowledge, actions and goals.
///
/// Fluents are referred to by index into `fluents`. Static fluents are a
/// subset whose value is fixed by `init` and never changed by an action.
struct PlanningDomain {
  std::string name;
  std::vector<std::string> fluents;
  std::vector<Action> actions;
  std::vector<Literal> init;
  std::vector<OneofConstraint> oneofs;
  std::vector<GoalProposition> goals;
  std::vector<FluentId> static_fluents;

  std::size_t fluent_count() const { return fluents.size(); }
  std::optional<FluentId> find_fluent(std::string_view name) const;
  std::optional<ActionId> find_action(std::string_view name) const;

  /// Returns the id of `name`, declaring it if it is new.
  FluentId intern_fluent(std::string_view name);

  bool is_static(FluentId f) const;

  /// Conjunction of all goal literals of one kind (duplicates removed).
  std::vector<Literal> goal_literals(GoalKind kind) const;

  /// Literal spelled with the ASCII negation prefix, e.g. `-open`.
  std::string literal_name(Literal l) const;

  bool operator==(const PlanningDomain&) const = default;
};

/// Synthesized effect-proposition id: `<action>_ep<ordinal>`, 1-based.
std::string effect_id(std::string_view action, std::size_t ordinal);

enum class ViolationKind {
  duplicate_fluent,
  bad_identifier,
  duplicate_action,
  undeclared_fluent,
  mixed_sensing_action,
  multiple_observations,
  contradictory_conditions,
  duplicate_effect_id,
  oneof_too_small,
  oneof_duplicate_literal,
  inconsistent_init,
  static_without_value,
  static_changed,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string to_string() const;
};

ValidationReport validate_domain(const PlanningDomain& d);

bool is_identifier(std::string_view s);

}  // namespace hpx
