#include "hpx/invariants.hpp"

#include <algorithm>
#include <set>

namespace hpx {

namespace {

std::string where(const BranchState& s, int t1) {
  return "branch " + std::to_string(s.id) + " layer " + std::to_string(t1);
}

bool subset(const Layer& a, const Layer& b) {
  for (int t = 0; t <= a.eval_step(); ++t) {
    for (std::size_t li = 0; li < a.literals(); ++li) {
      if (a.has(t, li) && !b.has(t, li)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::string> check_branch(const CompiledDomain& cd, const BranchState& s) {
  std::vector<std::string> out;
  if (static_cast<int>(s.layers.size()) <= s.horizon) {
    out.push_back("branch " + std::to_string(s.id) + " has no layer for its horizon");
    return out;
  }
  if (static_cast<int>(s.history.size()) != s.horizon) {
    out.push_back("branch " + std::to_string(s.id) + " history length differs from horizon");
  }
  if (s.parent >= s.id) out.push_back("branch " + std::to_string(s.id) + " has parent " + std::to_string(s.parent));
  const int first = s.parent < 0 ? 0 : s.used_from - 1;
  for (int t1 = 0; t1 <= s.horizon; ++t1) {
    const Layer& layer = s.layers[static_cast<std::size_t>(t1)];
    if (t1 < first) {
      if (!layer.empty()) out.push_back(where(s, t1) + " precedes the split but is not empty");
      continue;
    }
    if (layer.empty() || layer.eval_step() != t1 || layer.literals() != cd.literal_count()) {
      out.push_back(where(s, t1) + " has the wrong shape");
      continue;
    }
    BranchState again = s;
    cd.close(again, t1);
    if (!(again.layers[static_cast<std::size_t>(t1)] == layer)) out.push_back(where(s, t1) + " is not closed");
    if (t1 < s.horizon && !subset(layer, s.layers[static_cast<std::size_t>(t1 + 1)])) {
      out.push_back(where(s, t1) + " is not contained in the next layer");
    }
    if (!s.inconsistent) {
      for (int t = 0; t <= t1; ++t) {
        for (std::size_t li = 0; li < layer.literals(); li += 2) {
          if (layer.has(t, li) && layer.has(t, li + 1)) {
            out.push_back(where(s, t1) + " knows a literal and its complement at " + std::to_string(t));
          }
        }
      }
    }
  }
  for (const auto& r : s.sensing_results) {
    if (r.step + 1 > s.horizon) continue;
    if (!cd.knows(s, r.literal, r.step, r.step + 1)) {
      out.push_back("branch " + std::to_string(s.id) + " lost its sensing result at " + std::to_string(r.step));
    }
  }
  return out;
}

std::vector<std::string> check_step(const CompiledDomain& cd, const BranchState& before, const BranchStep& r) {
  std::vector<std::string> out = check_branch(cd, r.same);
  const int t = before.horizon;
  if (r.same.horizon != t + 1) out.push_back("step did not advance the horizon");
  for (int t1 = 0; t1 <= t; ++t1) {
    if (!(r.same.layers[static_cast<std::size_t>(t1)] == before.layers[static_cast<std::size_t>(t1)])) {
      out.push_back("step changed " + where(before, t1));
    }
  }
  if (r.child) {
    auto more = check_branch(cd, *r.child);
    out.insert(out.end(), more.begin(), more.end());
    const BranchState& c = *r.child;
    if (c.parent != r.same.id || c.id <= c.parent) out.push_back("child branch is not numbered after its parent");
    if (c.used_from != t + 1) out.push_back("child branch starts at the wrong step");
    if (!(c.layers[static_cast<std::size_t>(t)] == before.layers[static_cast<std::size_t>(t)])) {
      out.push_back("child branch does not inherit the parent's knowledge");
    }
    if (c.applied.size() < static_cast<std::size_t>(t + 1) ||
        !std::equal(c.applied.begin(), c.applied.begin() + t + 1, r.same.applied.begin())) {
      out.push_back("child branch does not inherit the parent's effect applications");
    }
  }
  return out;
}

std::vector<std::string> check_state(const CompiledDomain& cd, const EpistemicState& s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.branches.size(); ++i) {
    if (s.branches[i].id != static_cast<int>(i)) out.push_back("branch ids are not dense");
    auto more = check_branch(cd, s.branches[i]);
    out.insert(out.end(), more.begin(), more.end());
  }
  std::set<int> children;
  for (const auto& e : s.events) {
    if (e.parent >= e.child) out.push_back("nextBr parent is not below its child");
    if (!children.insert(e.child).second) out.push_back("branch " + std::to_string(e.child) + " created twice");
    if (e.child < 0 || static_cast<std::size_t>(e.child) >= s.branches.size() || e.parent < 0) continue;
    const auto& p = s.branches[static_cast<std::size_t>(e.parent)];
    const auto& c = s.branches[static_cast<std::size_t>(e.child)];
    if (!(p.layers[static_cast<std::size_t>(e.step)] == c.layers[static_cast<std::size_t>(e.step)])) {
      out.push_back("branch " + std::to_string(e.child) + " does not inherit the parent's knowledge");
    }
  }
  return out;
}

}  // namespace hpx
