#include "hpx/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hpx {

std::optional<FluentId> PlanningDomain::find_fluent(std::string_view n) const {
  for (std::size_t i = 0; i < fluents.size(); ++i) {
    if (fluents[i] == n) return static_cast<FluentId>(i);
  }
  return std::nullopt;
}

std::optional<ActionId> PlanningDomain::find_action(std::string_view n) const {
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].name == n) return static_cast<ActionId>(i);
  }
  return std::nullopt;
}

FluentId PlanningDomain::intern_fluent(std::string_view n) {
  if (auto f = find_fluent(n)) return *f;
  fluents.emplace_back(n);
  return static_cast<FluentId>(fluents.size() - 1);
}

bool PlanningDomain::is_static(FluentId f) const {
  return std::find(static_fluents.begin(), static_fluents.end(), f) != static_fluents.end();
}

std::vector<Literal> PlanningDomain::goal_literals(GoalKind kind) const {
  std::vector<Literal> out;
  for (const auto& g : goals) {
    if (g.kind != kind) continue;
    for (auto l : g.literals) {
      if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
  }
  return out;
}

std::string PlanningDomain::literal_name(Literal l) const {
  const std::string& base = l.fluent < fluents.size() ? fluents[l.fluent] : std::string("?");
  return l.positive ? base : "-" + base;
}

std::string effect_id(std::string_view action, std::size_t ordinal) {
  return std::string(action) + "_ep" + std::to_string(ordinal);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.message << '\n';
  return os.str();
}

namespace {

class Validator {
 public:
  explicit Validator(const PlanningDomain& d) : d_(d) {}

  ValidationReport run() {
    check_fluents();
    check_actions();
    check_init();
    check_oneofs();
    check_goals();
    check_statics();
    return std::move(report_);
  }

 private:
  void add(ViolationKind kind, std::string msg) { report_.violations.push_back({kind, std::move(msg)}); }

  bool declared(Literal l, std::string_view where) {
    if (l.fluent < d_.fluent_count()) return true;
    add(ViolationKind::undeclared_fluent,
        "undeclared fluent #" + std::to_string(l.fluent) + " in " + std::string(where));
    return false;
  }

  void check_fluents() {
    std::set<std::string> seen;
    for (const auto& f : d_.fluents) {
      if (!is_identifier(f)) add(ViolationKind::bad_identifier, "bad fluent name '" + f + "'");
      if (!seen.insert(f).second) add(ViolationKind::duplicate_fluent, "duplicate fluent '" + f + "'");
    }
  }

  void check_actions() {
    std::set<std::string> names;
    std::set<std::string> ep_ids;
    for (const auto& a : d_.actions) {
      const std::string where = "action '" + a.name + "'";
      if (!is_identifier(a.name)) add(ViolationKind::bad_identifier, "bad action name '" + a.name + "'");
      if (!names.insert(a.name).second) add(ViolationKind::duplicate_action, "duplicate " + where);
      if (!a.effects.empty() && !a.observes.empty()) {
        add(ViolationKind::mixed_sensing_action, "mixed sensing/physical action: " + where);
      }
      if (a.observes.size() > 1) {
        add(ViolationKind::multiple_observations, where + " observes more than one fluent");
      }
      for (const auto& kp : a.observes) declared(pos(kp.fluent), where);
      for (auto l : a.executable) declared(l, where);
      for (const auto& ep : a.effects) {
        if (!ep_ids.insert(ep.id).second) {
          add(ViolationKind::duplicate_effect_id, "duplicate effect id '" + ep.id + "'");
        }
        declared(ep.effect, where);
        for (std::size_t i = 0; i < ep.conditions.size(); ++i) {
          if (!declared(ep.conditions[i], where)) continue;
          for (std::size_t j = i + 1; j < ep.conditions.size(); ++j) {
            if (ep.conditions[j] == complement(ep.conditions[i])) {
              add(ViolationKind::contradictory_conditions,
                  "effect '" + ep.id + "' has contradictory conditions on '" +
                      d_.fluents[ep.conditions[i].fluent] + "'");
            }
          }
        }
      }
    }
  }

  void check_init() {
    for (auto l : d_.init) {
      if (!declared(l, "init")) continue;
      if (std::find(d_.init.begin(), d_.init.end(), complement(l)) != d_.init.end() && l.positive) {
        add(ViolationKind::inconsistent_init, "inconsistent init: both '" + d_.fluents[l.fluent] +
                                                  "' and its complement");
      }
    }
  }

  void check_oneofs() {
    for (const auto& oc : d_.oneofs) {
      if (oc.literals.size() < 2) add(ViolationKind::oneof_too_small, "oneof with fewer than 2 literals");
      for (std::size_t i = 0; i < oc.literals.size(); ++i) {
        declared(oc.literals[i], "oneof");
        for (std::size_t j = i + 1; j < oc.literals.size(); ++j) {
          if (oc.literals[i] == oc.literals[j]) {
            add(ViolationKind::oneof_duplicate_literal, "oneof repeats a literal");
          }
        }
      }
    }
  }

  void check_goals() {
    for (const auto& g : d_.goals) {
      for (auto l : g.literals) declared(l, "goal");
    }
  }

  void check_statics() {
    for (FluentId f : d_.static_fluents) {
      if (f >= d_.fluent_count()) {
        declared(pos(f), "static declaration");
        continue;
      }
      const bool has_value = std::any_of(d_.init.begin(), d_.init.end(),
                                         [f](Literal l) { return l.fluent == f; });
      if (!has_value) {
        add(ViolationKind::static_without_value, "static fluent '" + d_.fluents[f] + "' has no initial value");
      }
      for (const auto& a : d_.actions) {
        for (const auto& ep : a.effects) {
          if (ep.effect.fluent == f) {
            add(ViolationKind::static_changed,
                "static fluent '" + d_.fluents[f] + "' is changed by action '" + a.name + "'");
          }
        }
      }
    }
  }

  const PlanningDomain& d_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_domain(const PlanningDomain& d) { return Validator(d).run(); }

}  // namespace hpx
