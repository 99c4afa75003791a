#include <doctest.h>

#include <mutex>

#include "fixtures.hpp"
#include "hpx/benchmarks.hpp"
#include "hpx/invariants.hpp"
#include "hpx/search.hpp"
#include "random_domain.hpp"

using namespace hpx;
using hpx::testing::act;
using hpx::testing::lit;
using hpx::testing::load_domain;

namespace {

struct Recorder {
  std::mutex mu;
  std::size_t steps = 0;
  std::vector<std::string> problems;

  void attach(SearchOptions& o) {
    o.on_step = [this](const CompiledDomain& cd, const BranchState& before, const BranchStep& r) {
      auto p = check_step(cd, before, r);
      std::lock_guard<std::mutex> lock(mu);
      ++steps;
      problems.insert(problems.end(), p.begin(), p.end());
    };
  }
};

}  // namespace

TEST_CASE("every expanded step satisfies the fixpoint properties") {
  Recorder rec;
  auto run = [&](const PlanningDomain& d, int steps, int branches, PlanMode mode, int jobs) {
    SearchOptions o;
    o.max_steps = steps;
    o.max_branches = branches;
    o.mode = mode;
    o.jobs = jobs;
    rec.attach(o);
    try {
      find_optimal_plan(d, o);
    } catch (const DomainError&) {
    }
  };
  run(load_domain("smarthome"), 4, 1, PlanMode::sequential, 1);
  run(load_domain("yale"), 3, 1, PlanMode::concurrent, 2);
  run(generate_sickness(3).domain, 4, 2, PlanMode::sequential, 1);
  run(generate_bomb(3).domain, 3, 0, PlanMode::concurrent, 1);
  for (std::uint32_t seed = 1; seed <= 200; ++seed) {
    run(hpx::testing::random_domain(seed), 3, 2, seed % 2 ? PlanMode::sequential : PlanMode::concurrent, 1);
  }
  CHECK(rec.steps > 1000);
  CHECK(rec.problems.empty());
  if (!rec.problems.empty()) MESSAGE(rec.problems.front());
}

TEST_CASE("global states pass the tree checks") {
  const PlanningDomain d = load_domain("smarthome");
  const CompiledDomain cd(d);
  EpistemicState s = init_state(cd, 4, 1);
  step(s, cd, {{0, {act(d, "open_door")}}});
  step(s, cd, {{0, {act(d, "sense_open")}}});
  step(s, cd, {{0, {act(d, "drive")}}});
  CHECK(check_state(cd, s).empty());
  REQUIRE(s.branches.size() == 2);

  EpistemicState broken = s;
  broken.branches[1].parent = 1;
  CHECK_FALSE(check_state(cd, broken).empty());
}

TEST_CASE("corrupted branches are flagged") {
  const PlanningDomain d = load_domain("smarthome");
  const CompiledDomain cd(d);
  const BranchState init = cd.initial();
  const ActionId open_door[] = {act(d, "open_door")};
  const BranchStep r = cd.step(init, open_door, 1, 4);
  CHECK(check_step(cd, init, r).empty());

  SUBCASE("missing closure consequence") {
    BranchState s = r.same;
    // Forgetting a derived atom leaves the layer open under closure.
    Layer& top = s.layers.back();
    top = Layer(top.eval_step(), top.literals());
    top.set(1, literal_index(lit(d, "open")));
    CHECK_FALSE(check_branch(cd, s).empty());
  }
  SUBCASE("knowledge lost between eval steps") {
    BranchState s = r.same;
    s.layers[1] = Layer(1, cd.literal_count());
    cd.close(s, 1);
    CHECK_FALSE(check_branch(cd, s).empty());
  }
  SUBCASE("inconsistent layer") {
    BranchState s = r.same;
    s.layers.back().set(0, literal_index(lit(d, "in_liv")));
    CHECK_FALSE(check_branch(cd, s).empty());
    cd.close(s, s.horizon);
    CHECK(s.inconsistent);
  }
  SUBCASE("horizon not advanced") {
    BranchStep bad = r;
    bad.same = init;
    CHECK_FALSE(check_step(cd, init, bad).empty());
  }
}
