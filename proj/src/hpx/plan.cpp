#include "hpx/plan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hpx {

std::size_t ConditionalPlan::occurrence_count() const {
  std::size_t n = actions.size();
  for (const auto& c : next) n += c.occurrence_count();
  return n;
}

std::size_t ConditionalPlan::branch_count() const {
  std::size_t n = outcome == SenseOutcome::branched ? 1 : 0;
  for (const auto& c : next) n += c.branch_count();
  return n;
}

std::size_t ConditionalPlan::depth() const {
  if (is_leaf()) return 0;
  std::size_t m = 0;
  for (const auto& c : next) m = std::max(m, c.depth());
  return 1 + m;
}

std::string PlanAtom::to_string() const {
  switch (kind) {
    case AtomKind::occ:
      return "occ(" + name + "," + std::to_string(step) + "," + std::to_string(branch) + ")";
    case AtomKind::sres:
      return "sRes(" + name + "," + std::to_string(step) + "," + std::to_string(branch) + ")";
    case AtomKind::next_br:
      return "nextBr(" + std::to_string(step) + "," + std::to_string(branch) + "," + std::to_string(child) + ")";
  }
  return {};
}

namespace {

struct Placed {
  const ConditionalPlan* node;
  int step;
  int branch;
  int child;  // -1 unless branched
};

/// Canonical branch numbering of every non-leaf node.
std::vector<Placed> layout(const ConditionalPlan& p) {
  std::vector<Placed> out;
  std::vector<std::pair<int, const ConditionalPlan*>> frontier{{0, &p}};
  int next_id = 1;
  for (int t = 0; !frontier.empty(); ++t) {
    std::sort(frontier.begin(), frontier.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, const ConditionalPlan*>> upcoming;
    for (auto [br, node] : frontier) {
      if (node->is_leaf()) continue;
      int child = -1;
      if (node->outcome == SenseOutcome::branched && node->next.size() == 2) {
        child = next_id++;
        upcoming.emplace_back(br, &node->next[0]);
        upcoming.emplace_back(child, &node->next[1]);
      } else if (!node->next.empty()) {
        upcoming.emplace_back(br, &node->next[0]);
      }
      out.push_back({node, t, br, child});
    }
    frontier = std::move(upcoming);
  }
  return out;
}

}  // namespace

std::vector<PlanAtom> extract_atoms(const PlanningDomain& d, const ConditionalPlan& p) {
  std::vector<PlanAtom> out;
  for (const auto& pl : layout(p)) {
    for (auto a : pl.node->actions) out.push_back({AtomKind::occ, d.actions[a].name, pl.step, pl.branch, 0});
    const FluentId f = pl.node->sensed;
    switch (pl.node->outcome) {
      case SenseOutcome::branched:
        out.push_back({AtomKind::sres, d.literal_name(pos(f)), pl.step, pl.branch, 0});
        out.push_back({AtomKind::sres, d.literal_name(neg(f)), pl.step, pl.child, 0});
        out.push_back({AtomKind::next_br, "", pl.step, pl.branch, pl.child});
        break;
      case SenseOutcome::known_true:
        out.push_back({AtomKind::sres, d.literal_name(pos(f)), pl.step, pl.branch, 0});
        break;
      default:
        break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConditionalPlan parse_atoms(const PlanningDomain& d, const std::vector<PlanAtom>& atoms) {
  using Key = std::pair<int, int>;
  std::map<Key, std::vector<std::size_t>> occ;
  std::map<Key, std::vector<std::size_t>> sres;
  std::map<Key, std::size_t> next_br;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& a = atoms[i];
    const Key k{a.step, a.branch};
    if (a.step < 0 || a.branch < 0) throw PlanFormatError("negative step or branch in " + a.to_string());
    switch (a.kind) {
      case AtomKind::occ:
        occ[k].push_back(i);
        break;
      case AtomKind::sres:
        sres[k].push_back(i);
        break;
      case AtomKind::next_br:
        if (next_br.count(k)) throw PlanFormatError("two nextBr atoms for step/branch of " + a.to_string());
        next_br[k] = i;
        break;
    }
  }
  std::vector<bool> used(atoms.size(), false);
  std::set<int> created{0};

  auto literal_of = [&](const std::string& s) -> std::optional<Literal> {
    const bool negative = !s.empty() && s[0] == '-';
    auto f = d.find_fluent(negative ? s.substr(1) : s);
    if (!f) return std::nullopt;
    return Literal{*f, !negative};
  };

  std::function<ConditionalPlan(int, int)> build = [&](int t, int br) -> ConditionalPlan {
    ConditionalPlan node;
    auto it = occ.find({t, br});
    if (it == occ.end()) return node;
    std::optional<FluentId> sensed;
    for (auto i : it->second) {
      used[i] = true;
      auto a = d.find_action(atoms[i].name);
      if (!a) throw PlanFormatError("unknown action in " + atoms[i].to_string());
      node.actions.push_back(*a);
      if (d.actions[*a].is_sensing()) {
        if (sensed) throw PlanFormatError("two sensing occurrences at step " + std::to_string(t));
        sensed = d.actions[*a].observes.front().fluent;
      }
    }
    std::sort(node.actions.begin(), node.actions.end());
    auto find_sres = [&](int b, Literal l) -> std::optional<std::size_t> {
      auto s = sres.find({t, b});
      if (s == sres.end()) return std::nullopt;
      for (auto i : s->second) {
        if (literal_of(atoms[i].name) == l) return i;
      }
      return std::nullopt;
    };
    auto nb = next_br.find({t, br});
    if (nb != next_br.end()) {
      const auto& e = atoms[nb->second];
      used[nb->second] = true;
      if (!sensed) throw PlanFormatError("dangling " + e.to_string() + ": no sensing occurrence");
      if (e.child <= br || created.count(e.child)) throw PlanFormatError("invalid child branch in " + e.to_string());
      auto p = find_sres(br, pos(*sensed));
      auto n = find_sres(e.child, neg(*sensed));
      if (!p || !n) throw PlanFormatError("sensing at " + e.to_string() + " lacks both results");
      used[*p] = used[*n] = true;
      created.insert(e.child);
      node.outcome = SenseOutcome::branched;
      node.sensed = *sensed;
      node.next.push_back(build(t + 1, br));
      node.next.push_back(build(t + 1, e.child));
      return node;
    }
    if (sensed) {
      node.sensed = *sensed;
      if (auto p = find_sres(br, pos(*sensed))) {
        used[*p] = true;
        node.outcome = SenseOutcome::known_true;
      } else {
        node.outcome = SenseOutcome::known_false;
      }
    }
    node.next.push_back(build(t + 1, br));
    return node;
  };

  ConditionalPlan root = build(0, 0);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!used[i]) throw PlanFormatError("atom " + atoms[i].to_string() + " is not reachable from the root branch");
  }
  return root;
}

PlanAtom parse_atom_text(const std::string& text) {
  static const std::regex occ_re(R"(^\s*occ\(([a-z][A-Za-z0-9_]*),(\d+),(\d+)\)\.?\s*$)");
  static const std::regex sres_re(R"(^\s*sRes\((-?[a-z][A-Za-z0-9_]*),(\d+),(\d+)\)\.?\s*$)");
  static const std::regex next_re(R"(^\s*nextBr\((\d+),(\d+),(\d+)\)\.?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, occ_re)) return {AtomKind::occ, m[1], std::stoi(m[2]), std::stoi(m[3]), 0};
  if (std::regex_match(text, m, sres_re)) return {AtomKind::sres, m[1], std::stoi(m[2]), std::stoi(m[3]), 0};
  if (std::regex_match(text, m, next_re)) {
    return {AtomKind::next_br, "", std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3])};
  }
  throw PlanFormatError("not a plan atom: '" + text + "'");
}

ReplayResult replay_plan(const CompiledDomain& cd, const ConditionalPlan& p, int max_steps, int max_branches) {
  ReplayResult r{init_state(cd, max_steps, max_branches), {}};
  std::map<int, const ConditionalPlan*> cur{{0, &p}};
  for (int t = 0; t < max_steps; ++t) {
    std::map<int, std::vector<ActionId>> occ;
    for (auto [br, node] : cur) {
      if (node && !node->is_leaf()) occ[br] = node->actions;
    }
    try {
      step(r.state, cd, occ);
    } catch (const StepError& e) {
      r.errors.push_back(e.what());
      return r;
    }
    std::map<int, const ConditionalPlan*> upcoming;
    for (auto [br, node] : cur) {
      if (!node || node->is_leaf()) continue;
      auto ev = std::find_if(r.state.events.begin(), r.state.events.end(),
                             [&](const BranchEvent& e) { return e.step == t && e.parent == br; });
      const bool engine_branched = ev != r.state.events.end();
      const bool plan_branched = node->outcome == SenseOutcome::branched && node->next.size() == 2;
      if (engine_branched != plan_branched) {
        r.errors.push_back("sensing outcome at step " + std::to_string(t) + " in branch " + std::to_string(br) +
                           (engine_branched ? " is unknown but the plan does not branch"
                                            : " is already known but the plan branches"));
        return r;
      }
      if (plan_branched) {
        upcoming[br] = &node->next[0];
        upcoming[ev->child] = &node->next[1];
      } else if (!node->next.empty()) {
        upcoming[br] = &node->next[0];
      }
    }
    cur = std::move(upcoming);
    for (const auto& b : r.state.branches) {
      if (b.inconsistent) {
        r.errors.push_back("branch " + std::to_string(b.id) + " is inconsistent at step " + std::to_string(t + 1));
        return r;
      }
    }
  }
  for (auto [br, node] : cur) {
    if (node && !node->is_leaf()) {
      r.errors.push_back("plan is deeper than the step bound " + std::to_string(max_steps));
      break;
    }
  }
  return r;
}

VerificationReport verify_state(const EpistemicState& s, const CompiledDomain& cd) {
  VerificationReport v;
  bool any_weak = false;
  bool all_strong = true;
  for (const auto& b : s.branches) {
    BranchVerdict bv{b.id, cd.weak_goal(b, s.horizon), cd.strong_goal(b, s.horizon)};
    any_weak = any_weak || bv.weak;
    all_strong = all_strong && bv.strong;
    v.branches.push_back(bv);
  }
  v.plan_found = any_weak && all_strong;
  return v;
}

VerificationReport verify_plan(const PlanningDomain& d, const ConditionalPlan& p, int max_steps, int max_branches,
                               EngineOptions opts) {
  const CompiledDomain cd(d, opts);
  ReplayResult r = replay_plan(cd, p, max_steps, max_branches);
  VerificationReport v = verify_state(r.state, cd);
  v.errors = std::move(r.errors);
  if (!v.errors.empty() || r.state.horizon != max_steps) v.plan_found = false;
  return v;
}

namespace {

std::string action_list(const PlanningDomain& d, const std::vector<ActionId>& acts) {
  std::string s;
  for (auto a : acts) {
    if (!s.empty()) s += " + ";
    s += d.actions[a].name;
  }
  return s;
}

void render_tree(const PlanningDomain& d, const ConditionalPlan& p, int t, const std::string& indent,
                 std::ostringstream& os) {
  const ConditionalPlan* node = &p;
  while (!node->is_leaf()) {
    os << indent << t << ": " << action_list(d, node->actions);
    if (node->outcome == SenseOutcome::known_true) os << "  ; " << d.fluents[node->sensed] << " already known";
    if (node->outcome == SenseOutcome::known_false) os << "  ; -" << d.fluents[node->sensed] << " already known";
    os << '\n';
    if (node->outcome == SenseOutcome::branched && node->next.size() == 2) {
      os << indent << "if " << d.fluents[node->sensed] << ":\n";
      render_tree(d, node->next[0], t + 1, indent + "  ", os);
      os << indent << "else:\n";
      render_tree(d, node->next[1], t + 1, indent + "  ", os);
      return;
    }
    if (node->next.empty()) return;
    node = &node->next[0];
    ++t;
  }
  if (&p == node) os << indent << "(stop)\n";
}

}  // namespace

std::string render_plan_tree(const PlanningDomain& d, const ConditionalPlan& p) {
  std::ostringstream os;
  render_tree(d, p, 0, "", os);
  return os.str();
}

std::string render_plan_atoms(const PlanningDomain& d, const ConditionalPlan& p) {
  std::string s;
  for (const auto& a : extract_atoms(d, p)) s += a.to_string() + ".\n";
  return s;
}

std::string render_plan_json_lines(const PlanningDomain& d, const ConditionalPlan& p) {
  std::string s;
  for (const auto& pl : layout(p)) {
    for (auto a : pl.node->actions) {
      nlohmann::ordered_json j;
      j["action"] = d.actions[a].name;
      j["step"] = pl.step;
      j["branch"] = pl.branch;
      if (d.actions[a].is_sensing() && pl.node->outcome != SenseOutcome::none) {
        j["sensed"] = d.fluents[pl.node->sensed];
        const bool t_ok = pl.node->outcome != SenseOutcome::known_false;
        const bool f_ok = pl.node->outcome != SenseOutcome::known_true;
        j["then_branch"] = t_ok ? nlohmann::ordered_json(pl.branch) : nlohmann::ordered_json();
        j["else_branch"] = f_ok ? nlohmann::ordered_json(pl.child >= 0 ? pl.child : pl.branch)
                                : nlohmann::ordered_json();
      }
      s += j.dump() + "\n";
    }
  }
  return s;
}

}  // namespace hpx
