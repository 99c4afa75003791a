#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "hpx/engine.hpp"
#include "hpx/parser.hpp"

using namespace hpx;
using hpx::testing::act;
using hpx::testing::lit;
using hpx::testing::load_domain;

namespace {

using Occ = std::map<int, std::vector<ActionId>>;

bool has_atom(const std::vector<std::string>& atoms, const std::string& a) {
  return std::find(atoms.begin(), atoms.end(), a) != atoms.end();
}

StepErrorKind step_error(EpistemicState s, const CompiledDomain& cd, const Occ& occ) {
  try {
    step(s, cd, occ);
  } catch (const StepError& e) {
    return e.kind();
  }
  FAIL("expected a step error");
  return StepErrorKind::concurrency;
}

/// open_door@0, sense_open@1, drive@2 in the open branch.
EpistemicState smarthome_run(const CompiledDomain& cd, int steps) {
  const auto& d = cd.domain();
  EpistemicState s = init_state(cd, 4, 1);
  const std::vector<Occ> plan{{{0, {act(d, "open_door")}}}, {{0, {act(d, "sense_open")}}}, {{0, {act(d, "drive")}}}};
  for (int t = 0; t < steps; ++t) step(s, cd, t < 3 ? plan[static_cast<std::size_t>(t)] : Occ{});
  return s;
}

}  // namespace

TEST_CASE("initial knowledge of the smart home") {
  const CompiledDomain cd(load_domain("smarthome"));
  const EpistemicState s = init_state(cd, 4, 1);
  CHECK(trace_atoms(s, cd) == std::vector<std::string>{"knows(-in_liv,0,0,0)", "knows(-open,0,0,0)"});
  CHECK(s.branches.size() == 1);
  CHECK(s.horizon == 0);
}

TEST_CASE("empty init gives no knowledge") {
  const CompiledDomain cd(parse_domain("(:action a :effect x)"));
  CHECK(trace_atoms(init_state(cd, 2, 0), cd).empty());
}

TEST_CASE("oneof of two with one literal known false") {
  const PlanningDomain d = parse_domain("(:init ¬a) (oneof a b)");
  const CompiledDomain cd(d);
  const EpistemicState s = init_state(cd, 1, 0);
  CHECK(knows_query(s, cd, lit(d, "b"), 0, 0, 0));
  CHECK(knows_query(s, cd, lit(d, "-a"), 0, 0, 0));
}

TEST_CASE("oneof: one literal known true makes the others false") {
  const PlanningDomain d = parse_domain("(:init b) (oneof a b c)");
  const CompiledDomain cd(d);
  const EpistemicState s = init_state(cd, 1, 0);
  CHECK(knows_query(s, cd, lit(d, "-a"), 0, 0, 0));
  CHECK(knows_query(s, cd, lit(d, "-c"), 0, 0, 0));
}

TEST_CASE("contradictory initial knowledge is a domain error") {
  const CompiledDomain cd(parse_domain("(:init a b) (oneof a b)"));
  CHECK_THROWS_AS(init_state(cd, 1, 0), DomainError);
}

TEST_CASE("idle steps only carry the initial knowledge forward") {
  const CompiledDomain cd(load_domain("smarthome"));
  EpistemicState s = init_state(cd, 4, 1);
  step(s, cd, {});
  step(s, cd, {});
  const auto atoms = trace_atoms(s, cd);
  for (int t1 = 0; t1 <= 2; ++t1) {
    for (int t = 0; t <= t1; ++t) {
      CHECK(has_atom(atoms, "knows(-in_liv," + std::to_string(t) + "," + std::to_string(t1) + ",0)"));
      CHECK(has_atom(atoms, "knows(-open," + std::to_string(t) + "," + std::to_string(t1) + ",0)"));
    }
  }
  CHECK(atoms.size() == 12);
}

TEST_CASE("smart home: sensing, branching and both postdictions") {
  const CompiledDomain cd(load_domain("smarthome"));
  const EpistemicState s = smarthome_run(cd, 3);
  const auto atoms = trace_atoms(s, cd);
  for (const char* a : {"knows(-in_liv,1,1,0)", "sRes(open,1,0)", "sRes(-open,1,1)", "nextBr(1,0,1)",
                        "knows(-open,1,2,1)", "knows(ab_open,0,2,1)", "knows(-ab_open,0,2,0)", "knows(in_liv,3,3,0)",
                        "occ(open_door,0,0)", "occ(sense_open,1,0)", "occ(drive,2,0)"}) {
    INFO(a);
    CHECK(has_atom(atoms, a));
  }
  CHECK_FALSE(has_atom(atoms, "knows(ab_open,0,2,0)"));
  CHECK_FALSE(has_atom(atoms, "knows(-ab_open,0,1,0)"));
  CHECK(s.branches.size() == 2);
  REQUIRE(s.events.size() == 1);
  CHECK(s.events[0].parent == 0);
  CHECK(s.events[0].child == 1);
}

TEST_CASE("positive postdiction needs the effect to be new") {
  const PlanningDomain d = parse_domain("(:action open_door :effect when ¬ab open) (:action look :observe open)");
  const CompiledDomain cd(d);
  EpistemicState s = init_state(cd, 3, 1);
  step(s, cd, {{0, {act(d, "open_door")}}});
  step(s, cd, {{0, {act(d, "look")}}});
  // open was not known false before the action, so nothing about ab follows
  CHECK_FALSE(knows_query(s, cd, lit(d, "-ab"), 0, 2, 0));
  CHECK(knows_query(s, cd, lit(d, "ab"), 0, 2, 1));
}

TEST_CASE("sensing a known fluent does not branch") {
  const PlanningDomain d = parse_domain("(:action look :observe open) (:init open ¬shut)");
  const CompiledDomain cd(d);
  EpistemicState s = init_state(cd, 2, 1);
  step(s, cd, {{0, {act(d, "look")}}});
  const auto atoms = trace_atoms(s, cd);
  CHECK(s.branches.size() == 1);
  CHECK(has_atom(atoms, "sRes(open,0,0)"));
  CHECK(std::none_of(atoms.begin(), atoms.end(), [](const std::string& a) { return a.rfind("nextBr", 0) == 0; }));

  const PlanningDomain e = parse_domain("(:action look :observe open) (:init ¬open)");
  const CompiledDomain ce(e);
  EpistemicState f = init_state(ce, 2, 1);
  step(f, ce, {{0, {act(e, "look")}}});
  const auto fa = trace_atoms(f, ce);
  CHECK(f.branches.size() == 1);
  CHECK(std::none_of(fa.begin(), fa.end(), [](const std::string& a) { return a.rfind("sRes", 0) == 0; }));
}

TEST_CASE("step errors") {
  const PlanningDomain d = load_domain("smarthome");
  const CompiledDomain cd(d);
  const EpistemicState s = init_state(cd, 2, 0);
  CHECK(step_error(s, cd, {{0, {act(d, "drive")}}}) == StepErrorKind::executability);
  CHECK(step_error(s, cd, {{0, {act(d, "open_door"), act(d, "sense_open")}}}) == StepErrorKind::concurrency);
  CHECK(step_error(s, cd, {{3, {act(d, "open_door")}}}) == StepErrorKind::unused_branch);
  EpistemicState full = s;
  step(full, cd, {});
  step(full, cd, {});
  CHECK(step_error(full, cd, {}) == StepErrorKind::step_budget);

  const PlanningDomain u = parse_domain("(:action look :observe x)");
  const CompiledDomain cu(u);
  CHECK(step_error(init_state(cu, 2, 0), cu, {{0, {0}}}) == StepErrorKind::branch_budget);
}

TEST_CASE("concurrency restrictions") {
  const PlanningDomain d = parse_domain(R"(
    (:action set_a :effect f)
    (:action set_b :effect f)
    (:action clear :effect ¬f)
    (:action set_unless_g :effect when ¬g f)
    (:action clear_if_g :effect when g ¬f)
    (:action set_if_g :effect when g f)
    (:action clear_unless_g :effect when ¬g ¬f)
    (:action look_f :observe f)
    (:action look_g :observe g)
    (:action other :effect h))");
  const CompiledDomain cd(d, {PlanMode::concurrent, false});
  auto ok = [&](std::vector<std::string> names) {
    std::vector<ActionId> ids;
    for (const auto& n : names) ids.push_back(act(d, n));
    try {
      cd.check_concurrency(ids);
      return true;
    } catch (const StepError&) {
      return false;
    }
  };
  CHECK(ok({"set_a", "other"}));
  CHECK(ok({"look_f", "set_a"}));
  CHECK_FALSE(ok({"set_a", "set_b"}));
  CHECK_FALSE(ok({"set_a", "clear"}));
  CHECK_FALSE(ok({"look_f", "look_g"}));
  CHECK_FALSE(ok({"other", "other"}));
  CHECK(ok({"set_unless_g", "clear_if_g"}));
  CHECK_FALSE(ok({"set_if_g", "clear_unless_g"}));
}

TEST_CASE("sequential mode allows one action per step") {
  const PlanningDomain d = parse_domain("(:action a :effect x) (:action b :effect y)");
  const CompiledDomain cd(d);
  CHECK(step_error(init_state(cd, 1, 0), cd, {{0, {0, 1}}}) == StepErrorKind::concurrency);
  const CompiledDomain cc(d, {PlanMode::concurrent, false});
  EpistemicState s = init_state(cc, 1, 0);
  step(s, cc, {{0, {0, 1}}});
  CHECK(trace_atoms(s, cc).size() == 4);
}

TEST_CASE("knowledge counts never decrease with the eval step") {
  const CompiledDomain cd(load_domain("smarthome"));
  const EpistemicState s = smarthome_run(cd, 4);
  const auto counts = knows_counts(s, cd);
  REQUIRE(counts.size() == 5);
  CHECK(std::is_sorted(counts.begin(), counts.end()));
}

TEST_CASE("static fluents as facts leave the trace") {
  const PlanningDomain d = parse_domain("(:action go :executable (and at_1 conn) :effect at_2) (:init at_1 (:static conn))");
  const CompiledDomain plain(d);
  const CompiledDomain facts(d, {PlanMode::sequential, true});
  EpistemicState a = init_state(plain, 1, 0);
  EpistemicState b = init_state(facts, 1, 0);
  step(a, plain, {{0, {0}}});
  step(b, facts, {{0, {0}}});
  const auto ta = trace_atoms(a, plain);
  const auto tb = trace_atoms(b, facts);
  CHECK(has_atom(ta, "knows(conn,1,1,0)"));
  CHECK_FALSE(has_atom(tb, "knows(conn,1,1,0)"));
  CHECK(has_atom(tb, "knows(at_2,1,1,0)"));
  CHECK(knows_query(b, facts, lit(d, "conn"), 1, 1, 0));
}
