#include <doctest.h>

#include <json.hpp>

#include "fixtures.hpp"
#include "hpx/plan.hpp"
#include "hpx/search.hpp"

using namespace hpx;
using hpx::testing::act;
using hpx::testing::load_domain;

namespace {

/// open_door; sense_open; if open drive, else stop.
ConditionalPlan smarthome_plan(const PlanningDomain& d) {
  ConditionalPlan drive{{act(d, "drive")}, SenseOutcome::none, 0, {ConditionalPlan{}}};
  ConditionalPlan sense{{act(d, "sense_open")}, SenseOutcome::branched, *d.find_fluent("open"),
                        {drive, ConditionalPlan{}}};
  return ConditionalPlan{{act(d, "open_door")}, SenseOutcome::none, 0, {sense}};
}

std::vector<PlanAtom> atoms_of(const std::vector<std::string>& texts) {
  std::vector<PlanAtom> out;
  for (const auto& t : texts) out.push_back(parse_atom_text(t));
  return out;
}

}  // namespace

TEST_CASE("plan measures") {
  const PlanningDomain d = load_domain("smarthome");
  const ConditionalPlan p = smarthome_plan(d);
  CHECK(p.occurrence_count() == 3);
  CHECK(p.branch_count() == 1);
  CHECK(p.depth() == 3);
  CHECK(ConditionalPlan{}.is_leaf());
}

TEST_CASE("atoms of the smart-home plan") {
  const PlanningDomain d = load_domain("smarthome");
  const auto atoms = extract_atoms(d, smarthome_plan(d));
  std::vector<std::string> texts;
  for (const auto& a : atoms) texts.push_back(a.to_string());
  CHECK(texts == std::vector<std::string>{"occ(drive,2,0)", "occ(open_door,0,0)", "occ(sense_open,1,0)",
                                          "sRes(-open,1,1)", "sRes(open,1,0)", "nextBr(1,0,1)"});
  CHECK(parse_atoms(d, atoms) == smarthome_plan(d));
}

TEST_CASE("atom text parsing") {
  const PlanAtom a = parse_atom_text("sRes(-open,1,1)");
  CHECK(a.kind == AtomKind::sres);
  CHECK(a.name == "-open");
  CHECK(a.step == 1);
  CHECK(a.branch == 1);
  const PlanAtom n = parse_atom_text(" nextBr(2,0,3). ");
  CHECK(n.kind == AtomKind::next_br);
  CHECK(n.child == 3);
  CHECK_THROWS_AS(parse_atom_text("knows(open,0,0,0)"), PlanFormatError);
}

TEST_CASE("any valid branch numbering parses to the same tree") {
  const PlanningDomain d = load_domain("smarthome");
  const auto renumbered = atoms_of({"occ(open_door,0,0)", "occ(sense_open,1,0)", "nextBr(1,0,4)", "sRes(open,1,0)",
                                    "sRes(-open,1,4)", "occ(drive,2,0)"});
  CHECK(parse_atoms(d, renumbered) == smarthome_plan(d));
}

TEST_CASE("malformed atom sets are rejected") {
  const PlanningDomain d = load_domain("smarthome");
  auto bad = [&](std::vector<std::string> texts) { CHECK_THROWS_AS(parse_atoms(d, atoms_of(texts)), PlanFormatError); };
  bad({"occ(fly,0,0)"});
  bad({"occ(open_door,0,0)", "nextBr(0,0,1)"});
  bad({"occ(sense_open,0,0)", "nextBr(0,0,0)", "sRes(open,0,0)", "sRes(-open,0,0)"});
  bad({"occ(sense_open,0,0)", "nextBr(0,0,1)", "sRes(open,0,0)"});
  bad({"occ(open_door,0,0)", "occ(drive,1,2)"});
}

TEST_CASE("replay and verification") {
  const PlanningDomain d = load_domain("smarthome");
  const ConditionalPlan p = smarthome_plan(d);
  const VerificationReport v = verify_plan(d, p, 4, 1);
  CHECK(v.plan_found);
  CHECK(v.errors.empty());
  REQUIRE(v.branches.size() == 2);
  CHECK(v.branches[0].weak);
  CHECK_FALSE(v.branches[1].weak);

  const VerificationReport shallow = verify_plan(d, p, 2, 1);
  CHECK_FALSE(shallow.plan_found);
  CHECK_FALSE(shallow.errors.empty());

  const VerificationReport no_branch = verify_plan(d, p, 4, 0);
  CHECK_FALSE(no_branch.plan_found);

  ConditionalPlan idle = p;
  idle.next[0].next[0] = ConditionalPlan{};  // never drives
  CHECK_FALSE(verify_plan(d, idle, 4, 1).plan_found);
}

TEST_CASE("recorded sensing outcomes must match the replay") {
  const PlanningDomain d = load_domain("smarthome");
  ConditionalPlan p = smarthome_plan(d);
  p.next[0].outcome = SenseOutcome::known_true;
  p.next[0].next.pop_back();
  const ReplayResult r = replay_plan(CompiledDomain(d), p, 4, 1);
  CHECK_FALSE(r.errors.empty());
}

TEST_CASE("rendered formats") {
  const PlanningDomain d = load_domain("smarthome");
  const ConditionalPlan p = smarthome_plan(d);
  CHECK(render_plan_tree(d, p) == "0: open_door\n1: sense_open\nif open:\n  2: drive\nelse:\n  (stop)\n");
  CHECK(render_plan_atoms(d, p) ==
        "occ(drive,2,0).\nocc(open_door,0,0).\nocc(sense_open,1,0).\nsRes(-open,1,1).\nsRes(open,1,0).\nnextBr(1,0,1).\n");
  std::istringstream lines(render_plan_json_lines(d, p));
  std::string line;
  std::vector<nlohmann::json> objs;
  while (std::getline(lines, line)) objs.push_back(nlohmann::json::parse(line));
  REQUIRE(objs.size() == 3);
  CHECK(objs[0]["action"] == "open_door");
  CHECK(objs[1]["sensed"] == "open");
  CHECK(objs[1]["else_branch"] == 1);
  CHECK(objs[2]["step"] == 2);
}
