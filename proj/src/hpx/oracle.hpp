#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpx/engine.hpp"
#include "hpx/plan.hpp"

namespace hpx {

/// Bit f set iff fluent f is true.
using World = std::uint32_t;

constexpr std::size_t kOracleMaxFluents = 16;

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool holds(World s, Literal l) { return (((s >> l.fluent) & 1U) != 0) == l.positive; }

/// Result of executing co-occurring actions in world s. Sensing actions
/// have no effect. Throws OracleError if a fluent is both added and removed.
World res(const PlanningDomain& d, std::span<const ActionId> actions, World s);
World res(const PlanningDomain& d, ActionId a, World s);

struct CState {
  World u = 0;
  std::vector<World> sigma;
};

/// Sensing filters sigma by agreement with u on the sensed fluent (before
/// any concurrent effects), then every world is progressed through res.
CState transition(const PlanningDomain& d, std::span<const ActionId> actions, const CState& c);

/// Throws OracleError on an empty set.
bool entails(const std::vector<World>& sigma, Literal l);

/// Worlds satisfying init and every oneof. Throws OracleError if empty or
/// if the domain has more than kOracleMaxFluents fluents.
std::vector<World> initial_sigma(const PlanningDomain& d);

/// Actions per step plus the observed value of any sensed fluent.
using OutcomeTrace = std::vector<HistoryStep>;

/// Initial worlds consistent with every observation of the trace.
std::vector<World> surviving_worlds(const PlanningDomain& d, const OutcomeTrace& trace);

/// <l,t> is known after the trace. Throws OracleError if the trace is
/// impossible.
bool tqs_entails(const PlanningDomain& d, const OutcomeTrace& trace, Literal l, int t);

struct SoundnessReport {
  std::size_t atoms_checked = 0;
  std::size_t impossible_branches = 0;
  std::size_t violation_count = 0;
  std::vector<std::string> violations;  // first few, for diagnostics
  std::vector<std::string> errors;      // replay errors

  bool ok() const { return violation_count == 0 && errors.empty(); }
};

/// Checks every knows(l,t,n,br) of the state against the branch's own
/// outcome trace truncated to n steps.
SoundnessReport soundness_check(const EpistemicState& s, const CompiledDomain& cd);
SoundnessReport soundness_check(const PlanningDomain& d, const ConditionalPlan& p, int max_steps, int max_branches,
                                EngineOptions opts = {});

}  // namespace hpx
