#include "hpx/benchmarks.hpp"

#include <stdexcept>

namespace hpx {

namespace {

std::string idx(const std::string& base, int i) { return base + "_" + std::to_string(i); }

Action physical(std::string name, std::vector<Literal> exec, std::vector<std::pair<std::vector<Literal>, Literal>> eff) {
  Action a;
  a.name = std::move(name);
  a.executable = std::move(exec);
  for (auto& [conds, e] : eff) a.effects.push_back({effect_id(a.name, a.effects.size() + 1), e, std::move(conds)});
  return a;
}

}  // namespace

BenchmarkInstance generate_bomb(int n) {
  if (n < 1) throw std::invalid_argument("bomb needs n >= 1");
  PlanningDomain d;
  d.name = "bomb_" + std::to_string(n);
  std::vector<FluentId> bomb, disarmed;
  for (int i = 1; i <= n; ++i) bomb.push_back(d.intern_fluent(idx("bomb_in", i)));
  for (int i = 1; i <= n; ++i) disarmed.push_back(d.intern_fluent(idx("disarmed", i)));
  for (int i = 1; i <= n; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    d.actions.push_back(physical(idx("dunk", i), {}, {{{}, pos(disarmed[k])}, {{}, neg(bomb[k])}}));
  }
  if (n == 1) {
    d.init.push_back(pos(bomb[0]));
  } else {
    OneofConstraint where;
    for (auto f : bomb) where.literals.push_back(pos(f));
    d.oneofs.push_back(where);
  }
  for (int i = 0; i < n; ++i) d.oneofs.push_back({{pos(bomb[static_cast<std::size_t>(i)]), pos(disarmed[static_cast<std::size_t>(i)])}});
  GoalProposition g{GoalKind::strong, {}};
  for (auto f : disarmed) g.literals.push_back(pos(f));
  d.goals.push_back(g);
  return {std::move(d), n, 0};
}

BenchmarkInstance generate_rings(int n) {
  if (n < 2) throw std::invalid_argument("rings needs n >= 2");
  PlanningDomain d;
  d.name = "rings_" + std::to_string(n);
  auto at = [&](int i) { return d.intern_fluent(idx("at", i)); };
  auto closed = [&](int i) { return d.intern_fluent(idx("closed", i)); };
  auto locked = [&](int i) { return d.intern_fluent(idx("locked", i)); };
  auto conn = [&](int i, int j) { return d.intern_fluent("conn_" + std::to_string(i) + "_" + std::to_string(j)); };
  for (int i = 1; i <= n; ++i) {
    at(i);
    closed(i);
    locked(i);
  }
  auto adjacent = [n](int i, int j) { return (i % n) + 1 == j || (j % n) + 1 == i; };
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      d.actions.push_back(
          physical("move_" + std::to_string(i) + "_" + std::to_string(j), {pos(at(i)), pos(conn(i, j))},
                   {{{}, pos(at(j))}, {{}, neg(at(i))}}));
    }
  }
  for (int i = 1; i <= n; ++i) {
    d.actions.push_back(physical(idx("close", i), {pos(at(i))}, {{{}, pos(closed(i))}}));
    d.actions.push_back(physical(idx("lock", i), {pos(at(i)), pos(closed(i))}, {{{}, pos(locked(i))}}));
    Action s;
    s.name = idx("sense_window", i);
    s.executable = {pos(at(i))};
    s.observes.push_back({closed(i)});
    d.actions.push_back(s);
  }
  d.init.push_back(pos(at(1)));
  for (int i = 2; i <= n; ++i) d.init.push_back(neg(at(i)));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const FluentId f = conn(i, j);
      d.init.push_back({f, adjacent(i, j)});
      d.static_fluents.push_back(f);
    }
  }
  GoalProposition g{GoalKind::strong, {}};
  for (int i = 1; i <= n; ++i) g.literals.push_back(pos(locked(i)));
  d.goals.push_back(g);
  return {std::move(d), 3 * n - 1, 0};
}

BenchmarkInstance generate_sickness(int n) {
  if (n < 2) throw std::invalid_argument("sickness needs n >= 2");
  PlanningDomain d;
  d.name = "sickness_" + std::to_string(n);
  std::vector<FluentId> dis, color;
  for (int i = 1; i <= n; ++i) dis.push_back(d.intern_fluent(idx("d", i)));
  for (int i = 1; i <= n; ++i) color.push_back(d.intern_fluent(idx("color", i)));
  const FluentId cured = d.intern_fluent("cured");

  std::vector<std::pair<std::vector<Literal>, Literal>> dip;
  for (std::size_t i = 0; i < dis.size(); ++i) dip.push_back({{pos(dis[i])}, pos(color[i])});
  d.actions.push_back(physical("dip", {}, dip));
  for (int i = 1; i <= n; ++i) {
    Action s;
    s.name = idx("sense_color", i);
    s.observes.push_back({color[static_cast<std::size_t>(i - 1)]});
    d.actions.push_back(s);
  }
  for (int i = 1; i <= n; ++i) {
    d.actions.push_back(physical(idx("medicate", i), {pos(dis[static_cast<std::size_t>(i - 1)])}, {{{}, pos(cured)}}));
  }
  OneofConstraint which;
  for (auto f : dis) which.literals.push_back(pos(f));
  d.oneofs.push_back(which);
  for (auto f : color) d.init.push_back(neg(f));
  d.init.push_back(neg(cured));
  d.goals.push_back({GoalKind::strong, {pos(cured)}});
  return {std::move(d), n + 1, n - 1};
}

BenchmarkInstance generate_benchmark(const std::string& name, int n) {
  if (name == "bomb") return generate_bomb(n);
  if (name == "rings") return generate_rings(n);
  if (name == "sickness") return generate_sickness(n);
  throw std::invalid_argument("unknown benchmark '" + name + "' (expected bomb, rings or sickness)");
}

}  // namespace hpx
