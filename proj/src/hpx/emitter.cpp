#include "hpx/emitter.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <regex>
#include <set>
#include <stdexcept>

namespace hpx {

namespace {

const std::vector<std::string>& domain_template_order() {
  static const std::vector<std::string> order{"T1",  "T2",  "T3a", "T3b", "T4",  "T5", "T6a",
                                              "T6b", "T6c", "T7",  "T8a", "T8b", "O1", "O2"};
  return order;
}

std::size_t template_rank(const std::string& id) {
  const auto& o = domain_template_order();
  return static_cast<std::size_t>(std::find(o.begin(), o.end(), id) - o.begin());
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

class DomainEmitter {
 public:
  DomainEmitter(const PlanningDomain& d, EmitOptions opts) : d_(d), opts_(opts) {}

  std::vector<RuleTemplateInstance> run() {
    declarations();
    initial_knowledge();
    for (std::size_t a = 0; a < d_.actions.size(); ++a) action(d_.actions[a]);
    goals();
    std::stable_sort(out_.begin(), out_.end(), [](const RuleTemplateInstance& x, const RuleTemplateInstance& y) {
      if (x.is_fact != y.is_fact) return x.is_fact;
      const auto rx = template_rank(x.template_id);
      const auto ry = template_rank(y.template_id);
      if (rx != ry) return rx < ry;
      return x.text < y.text;
    });
    return std::move(out_);
  }

 private:
  bool as_fact(Literal l) const { return opts_.optimize && d_.is_static(l.fluent); }

  std::string signed_atom(const std::string& pred, Literal l, const std::string& rest = "") const {
    return (l.positive ? "" : "-") + pred + "(" + d_.fluents[l.fluent] + rest + ")";
  }

  /// knows(l,<args>) or, for a static literal under optimization, holds(l).
  std::string knows(Literal l, const std::string& args) const {
    if (as_fact(l)) return signed_atom("holds", l);
    return signed_atom("knows", l, "," + args);
  }

  void add(std::string id, std::string text, bool fact) { out_.push_back({std::move(id), std::move(text), fact}); }
  void rule(std::string id, const std::string& head, const std::vector<std::string>& body) {
    add(std::move(id), (head.empty() ? ":- " : head + " :- ") + join(body, ", ") + ".", false);
  }

  void declarations() {
    for (const auto& f : d_.fluents) add("T1", "fluent(" + f + ").", true);
    for (const auto& a : d_.actions) add("T1", "action(" + a.name + ").", true);
  }

  void initial_knowledge() {
    for (auto l : d_.init) add("T2", (as_fact(l) ? signed_atom("holds", l) : knows(l, "0,0,0")) + ".", true);
    for (const auto& oc : d_.oneofs) {
      for (std::size_t i = 0; i < oc.literals.size(); ++i) {
        std::vector<std::string> body;
        for (std::size_t j = 0; j < oc.literals.size(); ++j) {
          if (j != i) body.push_back(knows(complement(oc.literals[j]), "0,T,BR"));
        }
        rule("T3a", knows(oc.literals[i], "0,T,BR"), body);
        for (std::size_t j = 0; j < oc.literals.size(); ++j) {
          if (j != i) rule("T3b", knows(complement(oc.literals[j]), "0,T,BR"), {knows(oc.literals[i], "0,T,BR")});
        }
      }
    }
  }

  void action(const Action& a) {
    const std::string occ = "occ(" + a.name + ",T,BR)";
    for (auto l : a.executable) {
      rule("T4", "", {occ, "not " + (as_fact(l) ? signed_atom("holds", l) : knows(l, "T,T,BR"))});
    }
    for (const auto& ep : a.effects) effect(a, ep);
    for (const auto& kp : a.observes) add("T7", "hasKP(" + a.name + "," + d_.fluents[kp.fluent] + ").", true);
    if (!opts_.optimize) return;
    if (a.is_sensing()) {
      rule("O2", "", {occ, "kw(" + d_.fluents[a.observes.front().fluent] + ",T,T,BR)"});
    } else if (!a.effects.empty()) {
      std::vector<std::string> body{occ};
      for (const auto& ep : a.effects) body.push_back(knows(ep.effect, "T,T,BR"));
      rule("O1", "", body);
    }
  }

  void effect(const Action& a, const EffectProposition& ep) {
    add("T5", "hasEP(" + a.name + "," + ep.id + ").", true);
    add("T5", std::string(ep.effect.positive ? "" : "-") + "hasEff(" + ep.id + "," + d_.fluents[ep.effect.fluent] + ").",
        true);
    for (auto c : ep.conditions) {
      add("T5", std::string(c.positive ? "hasPC(" : "hasNC(") + ep.id + "," + d_.fluents[c.fluent] + ").", true);
    }
    const std::string apply = "apply(" + ep.id + ",T,BR)";

    std::vector<std::string> body{apply, "T1>T"};
    for (auto c : ep.conditions) body.push_back(knows(c, "T,T1,BR"));
    body.push_back("s(T1)");
    rule("T6a", knows(ep.effect, "T+1,T1,BR"), body);

    for (auto c : ep.conditions) {
      if (as_fact(c)) continue;
      rule("T6b", knows(c, "T,T1,BR"),
           {apply, knows(ep.effect, "T+1,T1,BR"), knows(complement(ep.effect), "T,T1,BR")});
    }
    for (std::size_t i = 0; i < ep.conditions.size(); ++i) {
      const Literal ci = ep.conditions[i];
      if (as_fact(ci)) continue;
      std::vector<std::string> b{apply, knows(complement(ep.effect), "T+1,T1,BR")};
      for (std::size_t j = 0; j < ep.conditions.size(); ++j) {
        if (j != i) b.push_back(knows(ep.conditions[j], "T,T1,BR"));
      }
      rule("T6c", knows(complement(ci), "T,T1,BR"), b);
    }
  }

  void goals() {
    // A missing kind still gets its vacuous rule; a domain without fluents
    // or actions gets none.
    if (d_.fluents.empty() && d_.actions.empty()) return;
    const std::pair<const char*, GoalKind> kinds[] = {{"T8a", GoalKind::strong}, {"T8b", GoalKind::weak}};
    for (const auto& [id, kind] : kinds) {
      const std::string head = std::string(kind == GoalKind::strong ? "sGoal" : "wGoal") + "(T,BR)";
      std::vector<std::string> body;
      for (auto l : d_.goal_literals(kind)) body.push_back(knows(l, "T,T,BR"));
      body.push_back("s(T)");
      body.push_back("br(BR)");
      rule(id, head, body);
    }
  }

  const PlanningDomain& d_;
  EmitOptions opts_;
  std::vector<RuleTemplateInstance> out_;
};

}  // namespace

std::vector<RuleTemplateInstance> emit_domain_rules(const PlanningDomain& d, EmitOptions opts) {
  const ValidationReport v = validate_domain(d);
  if (!v.ok()) throw DomainError(v.to_string());
  return DomainEmitter(d, opts).run();
}

std::vector<RuleTemplateInstance> emit_foundational_theory(int max_steps, int max_branches, PlanMode mode) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  if (max_branches < 0) throw std::invalid_argument("max_branches must be non-negative");
  const std::string S = std::to_string(max_steps);
  std::vector<RuleTemplateInstance> out;
  auto line = [&](const std::string& id, std::string text, bool fact = false) {
    out.push_back({"F-line-" + id, std::move(text), fact});
  };

  line("01", "s(0.." + S + "). ss(0.." + std::to_string(max_steps - 1) + "). br(0.." + std::to_string(max_branches) + ").",
       true);
  // concurrency
  line("03", "apply(EP,T,BR) :- hasEP(A,EP), occ(A,T,BR).");
  line("04", "contra(EP1,EP) :- hasPC(EP1,F), hasNC(EP,F).");
  line("05", ":- 2{apply(EP,T,BR) : hasEff(EP,F)}, br(BR), s(T), fluent(F).");
  line("05a", ":- 2{apply(EP,T,BR) : -hasEff(EP,F)}, br(BR), s(T), fluent(F).");
  line("06", ":- apply(EP,T,BR), hasEff(EP,F), apply(EP1,T,BR), -hasEff(EP1,F), EP != EP1, not contra(EP1,EP).");
  // inertia
  line("08", "initApp(F,T,BR) :- apply(EP,T,BR), hasEff(EP,F).");
  line("08a", "termApp(F,T,BR) :- apply(EP,T,BR), -hasEff(EP,F).");
  line("09", "kNotInit(F,T,T1,BR) :- not initApp(F,T,BR), uBr(T1,BR), s(T), fluent(F).");
  line("09a", "kNotTerm(F,T,T1,BR) :- not termApp(F,T,BR), uBr(T1,BR), s(T), fluent(F).");
  line("10", "kNotInit(F,T,T1,BR) :- apply(EP,T,BR), hasPC(EP,F1), hasEff(EP,F), -knows(F1,T,T1,BR), T1>=T.");
  line("10a", "kNotInit(F,T,T1,BR) :- apply(EP,T,BR), hasNC(EP,F1), hasEff(EP,F), knows(F1,T,T1,BR), T1>=T.");
  line("10b", "kNotTerm(F,T,T1,BR) :- apply(EP,T,BR), hasPC(EP,F1), -hasEff(EP,F), -knows(F1,T,T1,BR), T1>=T.");
  line("10c", "kNotTerm(F,T,T1,BR) :- apply(EP,T,BR), hasNC(EP,F1), -hasEff(EP,F), knows(F1,T,T1,BR), T1>=T.");
  line("11", "knows(F,T+1,T1,BR) :- knows(F,T,T1,BR), kNotTerm(F,T,T1,BR), T<T1, s(T).");
  line("11a", "-knows(F,T+1,T1,BR) :- -knows(F,T,T1,BR), kNotInit(F,T,T1,BR), T<T1, s(T).");
  line("12", "knows(F,T-1,T1,BR) :- knows(F,T,T1,BR), kNotInit(F,T-1,T1,BR), T>0, T1>=T, s(T).");
  line("12a", "-knows(F,T-1,T1,BR) :- -knows(F,T,T1,BR), kNotTerm(F,T-1,T1,BR), T>0, T1>=T, s(T).");
  line("13", "knows(F,T,T1+1,BR) :- knows(F,T,T1,BR), T1<" + S + ", s(T1).");
  line("13a", "-knows(F,T,T1+1,BR) :- -knows(F,T,T1,BR), T1<" + S + ", s(T1).");
  // sensing and branching
  line("15", "uBr(0,0). uBr(T+1,BR) :- uBr(T,BR), s(T).");
  line("16", "kw(F,T,T1,BR) :- knows(F,T,T1,BR).");
  line("17", "kw(F,T,T1,BR) :- -knows(F,T,T1,BR).");
  line("18", "sOcc(T,BR) :- occ(A,T,BR), hasKP(A,_).");
  line("19", "leq(BR,BR1) :- BR <= BR1, br(BR), br(BR1).");
  line("20", "1{nextBr(T,BR,BR1) : leq(BR,BR1)}1 :- sOcc(T,BR).");
  line("21", ":- 2{nextBr(T,BR,BR1) : br(BR), s(T)}, br(BR1).");
  line("22", "uBr(T+1,BR) :- -sRes(F,T,BR).");
  line("23", "sRes(F,T,BR) :- occ(A,T,BR), hasKP(A,F), not -knows(F,T,T,BR).");
  line("24", "-sRes(F,T,BR1) :- occ(A,T,BR), hasKP(A,F), not kw(F,T,T,BR), nextBr(T,BR,BR1).");
  line("25", "knows(F,T,T+1,BR) :- sRes(F,T,BR).");
  line("25a", "-knows(F,T,T+1,BR) :- -sRes(F,T,BR).");
  line("26", "knows(F1,T,T1,BR1) :- sOcc(T1,BR), nextBr(T1,BR,BR1), knows(F1,T,T1,BR), T1>=T.");
  line("26a", "-knows(F1,T,T1,BR1) :- sOcc(T1,BR), nextBr(T1,BR,BR1), -knows(F1,T,T1,BR), T1>=T.");
  line("27", "apply(EP,T,BR1) :- sOcc(T1,BR), nextBr(T1,BR,BR1), uBr(T1,BR), apply(EP,T,BR), T1>=T.");
  line("28", ":- 2{occ(A,T,BR) : hasKP(A,_)}, br(BR), s(T).");
  // plan verification
  line("30", "allWGsAchieved :- uBr(" + S + ",BR), wGoal(" + S + ",BR).");
  line("31", "notAllSGAchieved :- uBr(" + S + ",BR), not sGoal(" + S + ",BR).");
  line("32", "planFound :- allWGsAchieved, not notAllSGAchieved.");
  line("33", ":- not planFound.");
  line("34", "notGoal(T,BR) :- not wGoal(T,BR), uBr(T,BR).");
  line("35", "notGoal(T,BR) :- not sGoal(T,BR), uBr(T,BR).");
  // plan generation and optimization
  if (mode == PlanMode::sequential) {
    line("37", "1{occ(A,T,BR) : action(A)}1 :- uBr(T,BR), notGoal(T,BR), br(BR), ss(T).");
  } else {
    line("37", "1{occ(A,T,BR) : action(A)} :- uBr(T,BR), notGoal(T,BR), br(BR), ss(T).");
  }
  line("38", "#minimize {1@1,A,T,BR : occ(A,T,BR)}.");
  return out;
}

std::string emit_program(const PlanningDomain& d, int max_steps, int max_branches, PlanMode mode,
                         EmitOptions opts) {
  auto rules = emit_domain_rules(d, opts);
  auto theory = emit_foundational_theory(max_steps, max_branches, mode);
  rules.insert(rules.end(), theory.begin(), theory.end());
  std::string out;
  for (const auto& r : rules) out += r.text + "  % " + r.template_id + "\n";
  return out;
}

std::map<std::string, std::size_t> template_counts(const std::vector<RuleTemplateInstance>& rules) {
  std::map<std::string, std::size_t> out;
  for (const auto& r : rules) ++out[r.template_id];
  return out;
}

namespace {

using Tuple = std::vector<std::string>;

const std::regex& atom_regex() {
  static const std::regex re(R"((not\s+)?(-?)([a-z][A-Za-z0-9_]*)\(([^()]*)\))");
  return re;
}

bool is_join_predicate(const std::string& p) {
  return p == "hasEP" || p == "hasEff" || p == "-hasEff" || p == "hasPC" || p == "hasNC" || p == "hasKP" ||
         p == "fluent" || p == "action";
}

bool is_variable(const std::string& s) { return !s.empty() && s[0] >= 'A' && s[0] <= 'Z'; }

Tuple split_args(const std::string& args) {
  Tuple out;
  std::string cur;
  for (char c : args) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct GroundingCounter {
  std::map<std::string, std::vector<Tuple>> facts;
  std::size_t steps = 1, branches = 1, fluents = 0, actions = 0, eps = 0;

  std::size_t sort_size(const std::string& var) const {
    std::string base = var;
    while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back()))) base.pop_back();
    if (base == "T") return steps;
    if (base == "BR") return branches;
    if (base == "F") return fluents;
    if (base == "EP") return eps;
    if (base == "A") return actions;
    return 1;
  }

  std::size_t count(const std::string& text) const {
    std::set<std::string> vars;
    static const std::regex var_re(R"(\b[A-Z][A-Za-z0-9_]*\b)");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), var_re); it != std::sregex_iterator(); ++it) {
      vars.insert(it->str());
    }
    std::vector<std::pair<std::string, Tuple>> joins;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), atom_regex()); it != std::sregex_iterator(); ++it) {
      const auto& m = *it;
      const std::string pred = m[2].str() + m[3].str();
      if (m[1].matched || !is_join_predicate(pred)) continue;
      joins.emplace_back(pred, split_args(m[4].str()));
    }
    std::map<std::string, std::string> bound;
    std::size_t total = 0;
    std::function<void(std::size_t)> go = [&](std::size_t k) {
      if (k == joins.size()) {
        std::size_t n = 1;
        for (const auto& v : vars) {
          if (!bound.count(v)) n *= sort_size(v);
        }
        total += n;
        return;
      }
      const auto& [pred, args] = joins[k];
      const auto f = facts.find(pred);
      if (f == facts.end()) return;
      for (const auto& tuple : f->second) {
        if (tuple.size() != args.size()) continue;
        std::vector<std::string> fresh;
        bool ok = true;
        for (std::size_t i = 0; i < args.size() && ok; ++i) {
          const auto& a = args[i];
          if (a == "_") continue;
          if (!is_variable(a)) {
            ok = a == tuple[i];
          } else if (auto b = bound.find(a); b != bound.end()) {
            ok = b->second == tuple[i];
          } else {
            bound[a] = tuple[i];
            fresh.push_back(a);
          }
        }
        if (ok) go(k + 1);
        for (const auto& v : fresh) bound.erase(v);
      }
    };
    go(0);
    return total;
  }
};

}  // namespace

std::size_t estimate_ground_rules(const PlanningDomain& d, int max_steps, int max_branches, PlanMode mode,
                                  EmitOptions opts) {
  const auto domain = emit_domain_rules(d, opts);
  GroundingCounter g;
  g.steps = static_cast<std::size_t>(max_steps) + 1;
  g.branches = static_cast<std::size_t>(max_branches) + 1;
  g.fluents = d.fluent_count();
  g.actions = d.actions.size();
  for (const auto& a : d.actions) g.eps += a.effects.size();
  for (const auto& r : domain) {
    if (!r.is_fact) continue;
    std::smatch m;
    if (std::regex_search(r.text, m, atom_regex())) g.facts[m[2].str() + m[3].str()].push_back(split_args(m[4].str()));
  }
  std::size_t total = 0;
  for (const auto& r : domain) total += r.is_fact ? 1 : g.count(r.text);
  for (const auto& r : emit_foundational_theory(max_steps, max_branches, mode)) total += g.count(r.text);
  return total;
}

}  // namespace hpx
