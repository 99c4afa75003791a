#include "hpx/engine.hpp"

#include <algorithm>

namespace hpx {

std::size_t Layer::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Layer Layer::extended() const {
  Layer next(t1_ + 1, lits_);
  std::copy(bits_.begin(), bits_.end(), next.bits_.begin());
  return next;
}

CompiledDomain::CompiledDomain(PlanningDomain d, EngineOptions opts) : d_(std::move(d)), opts_(opts) {
  action_effects_.resize(d_.actions.size());
  for (ActionId a = 0; a < d_.actions.size(); ++a) {
    for (const auto& ep : d_.actions[a].effects) {
      action_effects_[a].push_back(static_cast<std::uint32_t>(effects_.size()));
      effects_.push_back({a, ep.effect, ep.conditions});
    }
  }
  weak_ = d_.goal_literals(GoalKind::weak);
  strong_ = d_.goal_literals(GoalKind::strong);
}

void CompiledDomain::seed_facts(Layer& layer) const {
  if (!opts_.static_as_facts) return;
  for (auto l : d_.init) {
    if (!d_.is_static(l.fluent)) continue;
    for (int t = 0; t <= layer.eval_step(); ++t) layer.set(t, literal_index(l));
  }
}

BranchState CompiledDomain::initial() const {
  BranchState s;
  s.layers.emplace_back(0, literal_count());
  seed_facts(s.layers[0]);
  for (auto l : d_.init) s.layers[0].set(0, literal_index(l));
  close(s, 0);
  if (s.inconsistent) throw DomainError("initial knowledge is contradictory");
  return s;
}

bool CompiledDomain::knows(const BranchState& s, Literal l, int t, int t1) const {
  if (t1 < 0 || t1 >= static_cast<int>(s.layers.size())) return false;
  const Layer& layer = s.layers[static_cast<std::size_t>(t1)];
  return !layer.empty() && layer.has(t, l);
}

bool CompiledDomain::executable(const BranchState& s, ActionId a) const {
  const int t = s.horizon;
  return std::all_of(d_.actions[a].executable.begin(), d_.actions[a].executable.end(),
                     [&](Literal l) { return knows(s, l, t, t); });
}

void CompiledDomain::check_concurrency(std::span<const ActionId> actions) const {
  int sensing = 0;
  std::vector<std::uint32_t> eps;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    for (std::size_t j = i + 1; j < actions.size(); ++j) {
      if (actions[i] == actions[j]) {
        throw StepError(StepErrorKind::concurrency, "action '" + d_.actions[actions[i]].name + "' occurs twice");
      }
    }
    if (d_.actions[actions[i]].is_sensing()) ++sensing;
    for (auto e : action_effects_[actions[i]]) eps.push_back(e);
  }
  if (sensing > 1) throw StepError(StepErrorKind::concurrency, "two sensing actions at the same step");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    for (std::size_t j = i + 1; j < eps.size(); ++j) {
      const auto& a = effects_[eps[i]];
      const auto& b = effects_[eps[j]];
      if (a.effect == b.effect) {
        throw StepError(StepErrorKind::concurrency,
                        "two applied effects on '" + d_.literal_name(a.effect) + "'");
      }
      if (a.effect != complement(b.effect)) continue;
      // contra(EP1, EP): the negative-effect EP1 has a positive condition
      // that EP (positive effect) has as a negative condition.
      const auto& pos_ep = a.effect.positive ? a : b;
      const auto& neg_ep = a.effect.positive ? b : a;
      const bool contra = std::any_of(neg_ep.conditions.begin(), neg_ep.conditions.end(), [&](Literal c) {
        return c.positive && std::find(pos_ep.conditions.begin(), pos_ep.conditions.end(), complement(c)) !=
                                 pos_ep.conditions.end();
      });
      if (!contra) {
        throw StepError(StepErrorKind::concurrency,
                        "contradictory effects on '" + d_.fluents[a.effect.fluent] + "'");
      }
    }
  }
}

void CompiledDomain::close(BranchState& s, int t1) const {
  Layer& layer = s.layers[static_cast<std::size_t>(t1)];
  const std::size_t nl = literal_count();

  // Applied effects at each t < t1, indexed by effect literal.
  std::vector<std::vector<std::vector<std::uint32_t>>> by_effect(static_cast<std::size_t>(t1));
  for (int t = 0; t < t1; ++t) {
    auto& slot = by_effect[static_cast<std::size_t>(t)];
    slot.resize(nl);
    if (t < static_cast<int>(s.applied.size())) {
      for (auto e : s.applied[static_cast<std::size_t>(t)]) slot[literal_index(effects_[e].effect)].push_back(e);
    }
  }

  bool changed = true;
  auto K = [&](int t, Literal l) { return layer.has(t, literal_index(l)); };
  auto add = [&](int t, Literal l) {
    if (layer.set(t, literal_index(l))) changed = true;
  };
  // kNotInit / kNotTerm generalized to literals: `l` cannot be caused at t.
  auto not_caused = [&](Literal l, int t) {
    for (auto e : by_effect[static_cast<std::size_t>(t)][literal_index(l)]) {
      const auto& cs = effects_[e].conditions;
      if (std::none_of(cs.begin(), cs.end(), [&](Literal c) { return K(t, complement(c)); })) return false;
    }
    return true;
  };

  while (changed) {
    changed = false;
    for (const auto& oc : d_.oneofs) {
      const auto& ls = oc.literals;
      for (std::size_t i = 0; i < ls.size(); ++i) {
        bool others_false = true;
        for (std::size_t j = 0; j < ls.size(); ++j) {
          if (j != i && !K(0, complement(ls[j]))) others_false = false;
        }
        if (others_false) add(0, ls[i]);
        if (K(0, ls[i])) {
          for (std::size_t j = 0; j < ls.size(); ++j) {
            if (j != i) add(0, complement(ls[j]));
          }
        }
      }
    }
    for (int t = 0; t < t1; ++t) {
      if (t < static_cast<int>(s.applied.size())) {
        for (auto e : s.applied[static_cast<std::size_t>(t)]) {
          const auto& ep = effects_[e];
          const auto& cs = ep.conditions;
          std::size_t known = 0;
          for (auto c : cs) known += K(t, c) ? 1 : 0;
          if (known == cs.size()) add(t + 1, ep.effect);
          if (K(t + 1, ep.effect) && K(t, complement(ep.effect))) {
            for (auto c : cs) add(t, c);
          }
          if (K(t + 1, complement(ep.effect))) {
            for (auto c : cs) {
              if (known - (K(t, c) ? 1 : 0) == cs.size() - 1) add(t, complement(c));
            }
          }
        }
      }
      for (std::size_t li = 0; li < nl; ++li) {
        const Literal l{static_cast<FluentId>(li / 2), li % 2 == 0};
        if (layer.has(t, li) && !layer.has(t + 1, li) && not_caused(complement(l), t)) add(t + 1, l);
        if (layer.has(t + 1, li) && !layer.has(t, li) && not_caused(l, t)) add(t, l);
      }
    }
  }

  for (int t = 0; t <= t1 && !s.inconsistent; ++t) {
    for (FluentId f = 0; f < d_.fluent_count(); ++f) {
      if (K(t, pos(f)) && K(t, neg(f))) {
        s.inconsistent = true;
        break;
      }
    }
  }
}

void CompiledDomain::extend(BranchState& s, std::span<const Literal> sensed) const {
  const int t = s.horizon;
  Layer next = s.layers[static_cast<std::size_t>(t)].extended();
  seed_facts(next);
  for (auto l : sensed) next.set(t, literal_index(l));
  s.layers.push_back(std::move(next));
  s.horizon = t + 1;
  close(s, t + 1);
}

BranchStep CompiledDomain::step(const BranchState& s, std::span<const ActionId> actions, int child_id,
                                int max_steps) const {
  const int t = s.horizon;
  if (t >= max_steps) {
    throw StepError(StepErrorKind::step_budget, "step " + std::to_string(t) + " exceeds the step bound");
  }
  if (opts_.mode == PlanMode::sequential && actions.size() > 1) {
    throw StepError(StepErrorKind::concurrency, "more than one action per branch in sequential mode");
  }
  check_concurrency(actions);
  const Action* sensing = nullptr;
  for (auto a : actions) {
    if (!executable(s, a)) {
      throw StepError(StepErrorKind::executability, "action '" + d_.actions[a].name + "' is not executable at step " +
                                                        std::to_string(t) + " in branch " + std::to_string(s.id));
    }
    if (d_.actions[a].is_sensing()) sensing = &d_.actions[a];
  }

  BranchStep out;
  BranchState& next = out.same;
  next = s;
  next.applied.resize(static_cast<std::size_t>(t));
  std::vector<std::uint32_t> applied;
  for (auto a : actions) {
    for (auto e : action_effects_[a]) applied.push_back(e);
    next.occurrences.emplace_back(a, t);
  }
  next.applied.push_back(applied);
  HistoryStep hs{std::vector<ActionId>(actions.begin(), actions.end()), std::nullopt};

  std::vector<Literal> sres;
  if (sensing) {
    const FluentId f = sensing->observes.front().fluent;
    out.sensed = f;
    if (knows(s, neg(f), t, t)) {
      out.outcome = SenseOutcome::known_false;
      hs.observed = neg(f);
    } else if (knows(s, pos(f), t, t)) {
      out.outcome = SenseOutcome::known_true;
      hs.observed = pos(f);
      sres.push_back(pos(f));
    } else {
      out.outcome = SenseOutcome::branched;
      hs.observed = pos(f);
      sres.push_back(pos(f));

      BranchState c;
      c.id = child_id;
      c.parent = s.id;
      c.used_from = t + 1;
      c.horizon = t;
      c.layers.resize(static_cast<std::size_t>(t) + 1);
      c.layers[static_cast<std::size_t>(t)] = s.layers[static_cast<std::size_t>(t)];
      c.applied = next.applied;
      c.history = s.history;
      c.history.push_back({hs.actions, neg(f)});
      c.sensing_results.push_back({neg(f), t});
      const Literal l = neg(f);
      extend(c, std::span<const Literal>(&l, 1));
      out.child = std::move(c);
    }
  }
  for (auto l : sres) next.sensing_results.push_back({l, t});
  next.history.push_back(std::move(hs));
  extend(next, sres);
  return out;
}

BranchState CompiledDomain::advance(BranchState s, int to) const {
  while (s.horizon < to) {
    s.applied.resize(static_cast<std::size_t>(s.horizon));
    s.applied.emplace_back();
    s.history.push_back({});
    extend(s, {});
  }
  return s;
}

bool CompiledDomain::weak_goal(const BranchState& s, int t) const {
  return std::all_of(weak_.begin(), weak_.end(), [&](Literal l) { return knows(s, l, t, t); });
}

bool CompiledDomain::strong_goal(const BranchState& s, int t) const {
  return std::all_of(strong_.begin(), strong_.end(), [&](Literal l) { return knows(s, l, t, t); });
}

EpistemicState init_state(const CompiledDomain& cd, int max_steps, int max_branches) {
  EpistemicState s;
  s.branches.push_back(cd.initial());
  s.max_steps = max_steps;
  s.max_branches = max_branches;
  return s;
}

void step(EpistemicState& s, const CompiledDomain& cd, const std::map<int, std::vector<ActionId>>& occ) {
  const int t = s.horizon;
  if (t >= s.max_steps) {
    throw StepError(StepErrorKind::step_budget, "step " + std::to_string(t) + " exceeds the step bound");
  }
  for (const auto& [br, acts] : occ) {
    if (br < 0 || br >= static_cast<int>(s.branches.size()) || s.branches[static_cast<std::size_t>(br)].used_from > t) {
      throw StepError(StepErrorKind::unused_branch, "branch " + std::to_string(br) + " is not used at step " +
                                                        std::to_string(t));
    }
  }
  EpistemicState next = s;
  const std::size_t n = s.branches.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto it = occ.find(static_cast<int>(i));
    static const std::vector<ActionId> none;
    const auto& acts = it == occ.end() ? none : it->second;
    const int child_id = static_cast<int>(next.branches.size());
    BranchStep r = cd.step(s.branches[i], acts, child_id, s.max_steps);
    if (r.child) {
      if (child_id > s.max_branches) {
        throw StepError(StepErrorKind::branch_budget, "sensing at step " + std::to_string(t) + " in branch " +
                                                          std::to_string(i) + " needs branch " +
                                                          std::to_string(child_id) + " beyond the bound");
      }
      next.events.push_back({t, static_cast<int>(i), child_id, r.sensed});
      next.branches.push_back(std::move(*r.child));
    }
    next.branches[i] = std::move(r.same);
  }
  next.horizon = t + 1;
  s = std::move(next);
}

bool knows_query(const EpistemicState& s, const CompiledDomain& cd, Literal l, int t, int t1, int br) {
  if (br < 0 || br >= static_cast<int>(s.branches.size()) || t > t1) return false;
  return cd.knows(s.branches[static_cast<std::size_t>(br)], l, t, t1);
}

std::vector<std::string> trace_atoms(const EpistemicState& s, const CompiledDomain& cd) {
  const auto& d = cd.domain();
  std::vector<std::string> out;
  for (const auto& b : s.branches) {
    const std::string br = std::to_string(b.id);
    for (const auto& layer : b.layers) {
      if (layer.empty()) continue;
      const std::string t1 = std::to_string(layer.eval_step());
      for (int t = 0; t <= layer.eval_step(); ++t) {
        for (std::size_t li = 0; li < layer.literals(); ++li) {
          const Literal l{static_cast<FluentId>(li / 2), li % 2 == 0};
          if (!layer.has(t, li) || cd.is_fact_literal(l)) continue;
          out.push_back("knows(" + d.literal_name(l) + "," + std::to_string(t) + "," + t1 + "," + br + ")");
        }
      }
    }
    for (const auto& r : b.sensing_results) {
      out.push_back("sRes(" + d.literal_name(r.literal) + "," + std::to_string(r.step) + "," + br + ")");
    }
    for (const auto& [a, t] : b.occurrences) {
      out.push_back("occ(" + d.actions[a].name + "," + std::to_string(t) + "," + br + ")");
    }
  }
  for (const auto& e : s.events) {
    out.push_back("nextBr(" + std::to_string(e.step) + "," + std::to_string(e.parent) + "," +
                  std::to_string(e.child) + ")");
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> knows_counts(const EpistemicState& s, const CompiledDomain& cd) {
  std::vector<std::size_t> out(static_cast<std::size_t>(s.horizon) + 1, 0);
  for (const auto& b : s.branches) {
    for (const auto& layer : b.layers) {
      if (layer.empty()) continue;
      std::size_t n = 0;
      for (int t = 0; t <= layer.eval_step(); ++t) {
        for (std::size_t li = 0; li < layer.literals(); ++li) {
          const Literal l{static_cast<FluentId>(li / 2), li % 2 == 0};
          if (layer.has(t, li) && !cd.is_fact_literal(l)) ++n;
        }
      }
      out[static_cast<std::size_t>(layer.eval_step())] += n;
    }
  }
  return out;
}

}  // namespace hpx
