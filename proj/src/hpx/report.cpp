#include "hpx/report.hpp"

#include <chrono>
#include <mutex>

#include <json.hpp>

#include "hpx/invariants.hpp"
#include "hpx/oracle.hpp"

namespace hpx {

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["domain"] = domain;
  j["fluents"] = fluents;
  j["actions"] = actions;
  j["max_steps"] = max_steps;
  j["max_branches"] = max_branches;
  j["mode"] = mode;
  j["optimize"] = optimize;
  j["optimal"] = optimal;
  j["plan_found"] = plan_found;
  j["verified"] = verified;
  j["occurrences"] = occurrences;
  j["branches"] = branches;
  j["wall_ms"] = wall_ms;
  j["nodes"] = nodes;
  j["knows_per_step"] = knows_per_step;
  j["oracle"] = {{"status", oracle.status},
                 {"atoms_checked", oracle.atoms_checked},
                 {"violations", oracle.violations},
                 {"detail", oracle.detail}};
  j["invariant_violations"] = invariant_violations;
  return j.dump();
}

SolveResult solve(const PlanningDomain& d, SolveOptions opts) {
  const ValidationReport v = validate_domain(d);
  if (!v.ok()) throw DomainError(v.to_string());
  if (opts.search.max_branches < 0) opts.search.max_branches = default_max_branches(d, opts.search.max_steps);

  SolveResult out;
  RunReport& r = out.report;
  r.domain = d.name;
  r.fluents = d.fluent_count();
  r.actions = d.actions.size();
  r.max_steps = opts.search.max_steps;
  r.max_branches = opts.search.max_branches;
  r.mode = opts.search.mode == PlanMode::sequential ? "sequential" : "concurrent";
  r.optimize = opts.search.optimize;
  r.optimal = opts.optimal;

  std::mutex mu;
  std::vector<std::string> invariant_msgs;
  if (opts.check_invariants) {
    opts.search.on_step = [&, user = opts.search.on_step](const CompiledDomain& cd, const BranchState& before,
                                                          const BranchStep& step) {
      if (user) user(cd, before, step);
      auto msgs = check_step(cd, before, step);
      if (msgs.empty()) return;
      std::lock_guard lock(mu);
      r.invariant_violations += msgs.size();
      for (auto& m : msgs) {
        if (invariant_msgs.size() < 10) invariant_msgs.push_back(std::move(m));
      }
    };
  }

  const auto t0 = std::chrono::steady_clock::now();
  SearchStats stats;
  out.plan = opts.optimal ? find_optimal_plan(d, opts.search, &stats) : find_plan(d, opts.search, &stats);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  r.nodes = stats.nodes;
  r.plan_found = out.plan.has_value();
  if (!out.plan) return out;

  r.occurrences = out.plan->occurrence_count();
  r.branches = out.plan->branch_count();
  const EngineOptions eopts{opts.search.mode, opts.search.optimize};
  const CompiledDomain cd(d, eopts);
  ReplayResult replay = replay_plan(cd, *out.plan, r.max_steps, r.max_branches);
  const VerificationReport ver = verify_state(replay.state, cd);
  r.verified = replay.errors.empty() && ver.errors.empty() && ver.plan_found;
  r.knows_per_step = knows_counts(replay.state, cd);
  out.trace = trace_atoms(replay.state, cd);
  for (const auto& e : replay.errors) out.problems.push_back("replay: " + e);
  for (const auto& e : ver.errors) out.problems.push_back("verify: " + e);
  if (!ver.plan_found) out.problems.push_back("verify: replayed plan does not reach the goals");

  if (opts.check_invariants) {
    auto msgs = check_state(cd, replay.state);
    r.invariant_violations += msgs.size();
    for (auto& m : msgs) invariant_msgs.push_back(std::move(m));
    for (auto& m : invariant_msgs) out.problems.push_back("invariant: " + m);
  }

  if (opts.oracle_check) {
    if (d.fluent_count() > kOracleMaxFluents) {
      r.oracle.status = "unavailable";
      r.oracle.detail = "more than " + std::to_string(kOracleMaxFluents) + " fluents";
    } else {
      const SoundnessReport s = soundness_check(replay.state, cd);
      r.oracle.atoms_checked = s.atoms_checked;
      r.oracle.violations = s.violation_count;
      r.oracle.status = s.violation_count == 0 ? "ok" : "violations";
      if (!s.violations.empty()) r.oracle.detail = s.violations.front();
      for (const auto& m : s.violations) out.problems.push_back("oracle: " + m);
    }
  }
  return out;
}

}  // namespace hpx
