#include "hpx/search.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <numeric>

namespace hpx {

int default_max_branches(const PlanningDomain& d, int max_steps) {
  const auto n = std::count_if(d.actions.begin(), d.actions.end(), [](const Action& a) { return a.is_sensing(); });
  return static_cast<int>(n) * max_steps;
}

namespace {

bool useless(const CompiledDomain& cd, const BranchState& s, ActionId a) {
  const auto& act = cd.domain().actions[a];
  const int t = s.horizon;
  if (act.is_sensing()) {
    const FluentId f = act.observes.front().fluent;
    return cd.knows(s, pos(f), t, t) || cd.knows(s, neg(f), t, t);
  }
  return std::all_of(act.effects.begin(), act.effects.end(),
                     [&](const EffectProposition& ep) { return cd.knows(s, ep.effect, t, t); });
}

bool concurrency_ok(const CompiledDomain& cd, const std::vector<ActionId>& acts) {
  try {
    cd.check_concurrency(acts);
    return true;
  } catch (const StepError&) {
    return false;
  }
}

}  // namespace

std::vector<std::vector<ActionId>> candidate_sets(const CompiledDomain& cd, const BranchState& s, bool optimize) {
  const auto& d = cd.domain();
  std::vector<ActionId> order(d.actions.size());
  std::iota(order.begin(), order.end(), ActionId{0});
  std::sort(order.begin(), order.end(), [&](ActionId a, ActionId b) { return d.actions[a].name < d.actions[b].name; });

  std::vector<ActionId> usable;
  for (auto a : order) {
    if (d.actions[a].is_noop() || !cd.executable(s, a)) continue;
    if (optimize && useless(cd, s, a)) continue;
    usable.push_back(a);
  }

  std::vector<std::vector<ActionId>> out;
  if (cd.options().mode == PlanMode::sequential) {
    for (auto a : usable) {
      std::vector<ActionId> one{a};
      if (concurrency_ok(cd, one)) out.push_back(std::move(one));
    }
    return out;
  }
  // Concurrent: subsets by size, then in name order. Large action sets are
  // limited to pairs to keep the candidate list bounded.
  const std::size_t max_size = usable.size() <= 12 ? usable.size() : 2;
  for (std::size_t k = 1; k <= max_size; ++k) {
    std::vector<std::size_t> comb(k);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    while (true) {
      std::vector<ActionId> set;
      for (auto i : comb) set.push_back(usable[i]);
      if (concurrency_ok(cd, set)) out.push_back(std::move(set));
      std::size_t i = k;
      while (i > 0 && comb[i - 1] == usable.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return out;
}

namespace {

struct Costed {
  std::size_t cost = 0;
  ConditionalPlan plan;
};

class Searcher {
 public:
  Searcher(const CompiledDomain& cd, const SearchOptions& opts, std::atomic<std::size_t>& nodes)
      : cd_(cd), opts_(opts), nodes_(nodes) {}

  bool can_stop(const BranchState& s, bool need_weak) const {
    const int t = s.horizon;
    return cd_.strong_goal(s, t) && (!need_weak || cd_.weak_goal(s, t));
  }

  bool done(const BranchState& s) const { return cd_.weak_goal(s, s.horizon) && cd_.strong_goal(s, s.horizon); }

  std::optional<BranchStep> expand(const BranchState& s, const std::vector<ActionId>& acts) const {
    try {
      BranchStep r = cd_.step(s, acts, s.id + 1, opts_.max_steps);
      if (r.same.inconsistent || (r.child && r.child->inconsistent)) return std::nullopt;
      if (opts_.on_step) opts_.on_step(cd_, s, r);
      return r;
    } catch (const StepError&) {
      return std::nullopt;
    }
  }

  static std::vector<std::pair<bool, bool>> weak_splits(bool need_weak) {
    if (!need_weak) return {{false, false}};
    return {{true, false}, {false, true}};
  }

  /// First plan in search order that acts only before `depth`.
  std::optional<ConditionalPlan> solve(const BranchState& s, int budget, bool need_weak, int depth) {
    ++nodes_;
    if (can_stop(s, need_weak)) return ConditionalPlan{};
    if (done(s) || s.horizon >= depth) return std::nullopt;
    for (auto& acts : candidate_sets(cd_, s, opts_.optimize)) {
      if (auto p = solve_with(s, acts, budget, need_weak, depth)) return p;
    }
    return std::nullopt;
  }

  std::optional<ConditionalPlan> solve_with(const BranchState& s, const std::vector<ActionId>& acts, int budget,
                                            bool need_weak, int depth) {
    auto r = expand(s, acts);
    if (!r) return std::nullopt;
    ConditionalPlan node{acts, r->outcome, r->sensed, {}};
    if (!r->child) {
      auto sub = solve(r->same, budget, need_weak, depth);
      if (!sub) return std::nullopt;
      node.next.push_back(std::move(*sub));
      return node;
    }
    if (budget == 0) return std::nullopt;
    for (auto [wl, wr] : weak_splits(need_weak)) {
      for (int bl = budget - 1; bl >= 0; --bl) {
        auto left = solve(r->same, bl, wl, depth);
        if (!left) break;
        auto right = solve(*r->child, budget - 1 - static_cast<int>(left->branch_count()), wr, depth);
        if (right) {
          node.next.push_back(std::move(*left));
          node.next.push_back(std::move(*right));
          return node;
        }
      }
    }
    return std::nullopt;
  }

  /// Cheapest plan with cost <= limit; the bound tightens after each
  /// improvement, so the first cheapest plan in search order wins.
  std::optional<Costed> best(const BranchState& s, int budget, bool need_weak, std::size_t limit) {
    ++nodes_;
    if (can_stop(s, need_weak)) return Costed{0, {}};
    if (done(s) || s.horizon >= opts_.max_steps || limit == 0) return std::nullopt;
    std::optional<Costed> result;
    for (auto& acts : candidate_sets(cd_, s, opts_.optimize)) {
      if (acts.size() > limit) continue;
      if (auto c = best_with(s, acts, budget, need_weak, limit)) {
        limit = c->cost - 1;
        result = std::move(c);
        if (limit == 0) break;
      }
    }
    return result;
  }

  std::optional<Costed> best_with(const BranchState& s, const std::vector<ActionId>& acts, int budget, bool need_weak,
                                  std::size_t limit) {
    const std::size_t k = acts.size();
    auto r = expand(s, acts);
    if (!r) return std::nullopt;
    std::optional<Costed> result;
    auto record = [&](std::size_t cost, std::vector<ConditionalPlan> next) {
      if (result && result->cost <= cost) return;
      result = Costed{cost, ConditionalPlan{acts, r->outcome, r->sensed, std::move(next)}};
      limit = cost - 1;
    };
    if (!r->child) {
      if (auto sub = best(r->same, budget, need_weak, limit - k)) {
        record(k + sub->cost, {std::move(sub->plan)});
      }
      return result;
    }
    if (budget == 0) return std::nullopt;
    for (auto [wl, wr] : weak_splits(need_weak)) {
      for (int bl = budget - 1; bl >= 0; --bl) {
        if (limit < k) return result;
        auto left = best(r->same, bl, wl, limit - k);
        if (!left) break;
        auto right = best(*r->child, budget - 1 - bl, wr, limit - k - left->cost);
        if (right) record(k + left->cost + right->cost, {std::move(left->plan), std::move(right->plan)});
      }
    }
    return result;
  }

 private:
  const CompiledDomain& cd_;
  const SearchOptions& opts_;
  std::atomic<std::size_t>& nodes_;
};

/// Evaluates fn(i) for i in [0, n) on up to `jobs` threads; results in order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, int jobs, Fn fn) {
  std::vector<T> out(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
    }));
  }
  for (auto& f : workers) f.get();
  return out;
}

EngineOptions engine_options(const SearchOptions& o) { return {o.mode, o.optimize}; }

}  // namespace

std::optional<ConditionalPlan> find_plan(const PlanningDomain& d, const SearchOptions& opts, SearchStats* stats) {
  const CompiledDomain cd(d, engine_options(opts));
  std::atomic<std::size_t> nodes{0};
  const BranchState root = cd.initial();
  std::optional<ConditionalPlan> found;
  for (int depth = 0; depth <= opts.max_steps && !found; ++depth) {
    Searcher s(cd, opts, nodes);
    ++nodes;
    if (s.can_stop(root, true)) {
      found = ConditionalPlan{};
      break;
    }
    if (s.done(root) || depth == 0) continue;
    const auto cands = candidate_sets(cd, root, opts.optimize);
    auto results = parallel_map<std::optional<ConditionalPlan>>(cands.size(), opts.jobs, [&](std::size_t i) {
      Searcher w(cd, opts, nodes);
      return w.solve_with(root, cands[i], opts.max_branches, true, depth);
    });
    for (auto& r : results) {
      if (r) {
        found = std::move(r);
        break;
      }
    }
  }
  if (stats) stats->nodes = nodes;
  return found;
}

std::optional<ConditionalPlan> find_optimal_plan(const PlanningDomain& d, const SearchOptions& opts,
                                                 SearchStats* stats) {
  auto first = find_plan(d, opts, stats);
  if (!first) return std::nullopt;
  const std::size_t bound = first->occurrence_count();
  if (bound == 0) return first;

  const CompiledDomain cd(d, engine_options(opts));
  std::atomic<std::size_t> nodes{stats ? stats->nodes : 0};
  const BranchState root = cd.initial();
  const auto cands = candidate_sets(cd, root, opts.optimize);
  auto results = parallel_map<std::optional<Costed>>(cands.size(), opts.jobs, [&](std::size_t i) {
    Searcher w(cd, opts, nodes);
    if (cands[i].size() > bound) return std::optional<Costed>{};
    return w.best_with(root, cands[i], opts.max_branches, true, bound);
  });
  std::optional<Costed> best;
  for (auto& r : results) {
    if (r && (!best || r->cost < best->cost)) best = std::move(r);
  }
  if (stats) stats->nodes = nodes;
  if (!best) return first;
  return std::move(best->plan);
}

}  // namespace hpx
