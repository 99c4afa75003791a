#include "hpx/oracle.hpp"

#include <algorithm>

namespace hpx {

World res(const PlanningDomain& d, std::span<const ActionId> actions, World s) {
  World add = 0;
  World del = 0;
  for (auto a : actions) {
    for (const auto& ep : d.actions[a].effects) {
      if (!std::all_of(ep.conditions.begin(), ep.conditions.end(), [&](Literal c) { return holds(s, c); })) continue;
      (ep.effect.positive ? add : del) |= World{1} << ep.effect.fluent;
    }
  }
  if (add & del) {
    for (FluentId f = 0; f < d.fluent_count(); ++f) {
      if ((add & del) >> f & 1U) throw OracleError("fluent '" + d.fluents[f] + "' is both set and cleared");
    }
  }
  return (s | add) & ~del;
}

World res(const PlanningDomain& d, ActionId a, World s) { return res(d, std::span<const ActionId>(&a, 1), s); }

CState transition(const PlanningDomain& d, std::span<const ActionId> actions, const CState& c) {
  CState out;
  std::vector<World> kept;
  for (auto s : c.sigma) {
    bool agree = true;
    for (auto a : actions) {
      for (const auto& kp : d.actions[a].observes) {
        if (((s ^ c.u) >> kp.fluent) & 1U) agree = false;
      }
    }
    if (agree) kept.push_back(s);
  }
  out.u = res(d, actions, c.u);
  for (auto s : kept) out.sigma.push_back(res(d, actions, s));
  std::sort(out.sigma.begin(), out.sigma.end());
  out.sigma.erase(std::unique(out.sigma.begin(), out.sigma.end()), out.sigma.end());
  return out;
}

bool entails(const std::vector<World>& sigma, Literal l) {
  if (sigma.empty()) throw OracleError("empty set of possible worlds");
  return std::all_of(sigma.begin(), sigma.end(), [&](World s) { return holds(s, l); });
}

std::vector<World> initial_sigma(const PlanningDomain& d) {
  if (d.fluent_count() > kOracleMaxFluents) {
    throw OracleError("oracle supports at most " + std::to_string(kOracleMaxFluents) + " fluents, domain has " +
                      std::to_string(d.fluent_count()));
  }
  std::vector<World> out;
  const World n = World{1} << d.fluent_count();
  for (World s = 0; s < n; ++s) {
    if (!std::all_of(d.init.begin(), d.init.end(), [&](Literal l) { return holds(s, l); })) continue;
    const bool oneofs_ok = std::all_of(d.oneofs.begin(), d.oneofs.end(), [&](const OneofConstraint& oc) {
      return std::count_if(oc.literals.begin(), oc.literals.end(), [&](Literal l) { return holds(s, l); }) == 1;
    });
    if (oneofs_ok) out.push_back(s);
  }
  if (out.empty()) throw OracleError("no initial world satisfies init and oneof constraints");
  return out;
}

std::vector<World> surviving_worlds(const PlanningDomain& d, const OutcomeTrace& trace) {
  std::vector<World> out;
  for (auto s0 : initial_sigma(d)) {
    World s = s0;
    bool ok = true;
    for (const auto& st : trace) {
      if (st.observed && !holds(s, *st.observed)) {
        ok = false;
        break;
      }
      s = res(d, st.actions, s);
    }
    if (ok) out.push_back(s0);
  }
  return out;
}

bool tqs_entails(const PlanningDomain& d, const OutcomeTrace& trace, Literal l, int t) {
  if (t < 0 || t > static_cast<int>(trace.size())) throw OracleError("query step outside the trace");
  std::vector<World> sigma = surviving_worlds(d, trace);
  if (sigma.empty()) throw OracleError("impossible outcome trace");
  for (int k = 0; k < t; ++k) {
    for (auto& s : sigma) s = res(d, trace[static_cast<std::size_t>(k)].actions, s);
  }
  return entails(sigma, l);
}

SoundnessReport soundness_check(const EpistemicState& s, const CompiledDomain& cd) {
  const auto& d = cd.domain();
  SoundnessReport rep;
  const std::vector<World> init = initial_sigma(d);
  for (const auto& b : s.branches) {
    bool impossible = false;
    for (const auto& layer : b.layers) {
      if (layer.empty()) continue;
      const int n = layer.eval_step();
      // Survivors of the first n steps, then progressed to every t <= n.
      std::vector<World> sigma;
      for (auto s0 : init) {
        World w = s0;
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
          const auto& st = b.history[static_cast<std::size_t>(k)];
          if (st.observed && !holds(w, *st.observed)) ok = false;
          w = res(d, st.actions, w);
        }
        if (ok) sigma.push_back(s0);
      }
      if (sigma.empty()) {
        impossible = true;
        continue;
      }
      for (int t = 0; t <= n; ++t) {
        for (std::size_t li = 0; li < layer.literals(); ++li) {
          const Literal l{static_cast<FluentId>(li / 2), li % 2 == 0};
          if (!layer.has(t, li) || cd.is_fact_literal(l)) continue;
          ++rep.atoms_checked;
          if (!entails(sigma, l)) {
            ++rep.violation_count;
            if (rep.violations.size() < 20) {
              rep.violations.push_back("knows(" + d.literal_name(l) + "," + std::to_string(t) + "," +
                                       std::to_string(n) + "," + std::to_string(b.id) + ") is not entailed");
            }
          }
        }
        if (t < n) {
          for (auto& w : sigma) w = res(d, b.history[static_cast<std::size_t>(t)].actions, w);
        }
      }
    }
    if (impossible) ++rep.impossible_branches;
  }
  return rep;
}

SoundnessReport soundness_check(const PlanningDomain& d, const ConditionalPlan& p, int max_steps, int max_branches,
                                EngineOptions opts) {
  const CompiledDomain cd(d, opts);
  ReplayResult r = replay_plan(cd, p, max_steps, max_branches);
  SoundnessReport rep = soundness_check(r.state, cd);
  rep.errors = std::move(r.errors);
  return rep;
}

}  // namespace hpx
