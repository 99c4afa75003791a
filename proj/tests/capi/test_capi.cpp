#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "hpx/hpx.h"

namespace {

struct DomainDel {
  void operator()(hpx_domain* d) const { hpx_domain_free(d); }
};
struct ResultDel {
  void operator()(hpx_result* r) const { hpx_result_free(r); }
};
using Domain = std::unique_ptr<hpx_domain, DomainDel>;
using Result = std::unique_ptr<hpx_result, ResultDel>;

std::string take(char* s) {
  std::string out = s ? s : "";
  hpx_string_free(s);
  return out;
}

std::string path(const char* rel) { return std::string(HPX_SOURCE_DIR) + "/" + rel; }

Domain load(const char* rel) {
  hpx_domain* d = nullptr;
  REQUIRE(hpx_domain_parse_file(path(rel).c_str(), &d) == HPX_OK);
  return Domain(d);
}

hpx_solve_options options(int steps, int branches) {
  hpx_solve_options o;
  hpx_solve_options_init(&o);
  o.max_steps = steps;
  o.max_branches = branches;
  return o;
}

}  // namespace

TEST_CASE("defaults") {
  hpx_solve_options o;
  hpx_solve_options_init(&o);
  CHECK(o.max_steps == 8);
  CHECK(o.max_branches < 0);
  CHECK(o.jobs == 1);
  CHECK(o.concurrent == 0);
}

TEST_CASE("solve the smart home through the C interface") {
  Domain d = load("domains/smarthome.hpx");
  CHECK(std::string(hpx_domain_name(d.get())) == "smarthome");
  CHECK(hpx_domain_validate(d.get()) == HPX_OK);

  hpx_solve_options o = options(4, 1);
  o.oracle_check = 1;
  o.check_invariants = 1;
  hpx_result* raw = nullptr;
  REQUIRE(hpx_solve(d.get(), &o, &raw) == HPX_OK);
  Result r(raw);
  CHECK(hpx_result_plan_found(r.get()) == 1);

  char* s = nullptr;
  REQUIRE(hpx_result_plan(r.get(), HPX_FORMAT_TREE, &s) == HPX_OK);
  CHECK(take(s) == "0: open_door\n1: sense_open\nif open:\n  2: drive\nelse:\n  (stop)\n");
  REQUIRE(hpx_result_plan(r.get(), HPX_FORMAT_ATOMS, &s) == HPX_OK);
  CHECK(take(s).find("nextBr(1,0,1).") != std::string::npos);
  REQUIRE(hpx_result_trace(r.get(), &s) == HPX_OK);
  const std::string trace = take(s);
  CHECK(trace.find("knows(-open,1,2,1)") != std::string::npos);
  CHECK(trace.find("knows(in_liv,3,3,0)") != std::string::npos);
  REQUIRE(hpx_result_problems(r.get(), &s) == HPX_OK);
  CHECK(take(s).empty());

  REQUIRE(hpx_result_report(r.get(), &s) == HPX_OK);
  const auto rep = nlohmann::json::parse(take(s));
  CHECK(rep["domain"] == "smarthome");
  CHECK(rep["plan_found"] == true);
  CHECK(rep["verified"] == true);
  CHECK(rep["occurrences"] == 3);
  CHECK(rep["branches"] == 1);
  CHECK(rep["oracle"]["status"] == "ok");
  CHECK(rep["oracle"]["violations"] == 0);
  CHECK(rep["invariant_violations"] == 0);
}

TEST_CASE("no plan") {
  Domain d = load("domains/smarthome.hpx");
  const hpx_solve_options o = options(1, 1);
  hpx_result* raw = nullptr;
  REQUIRE(hpx_solve(d.get(), &o, &raw) == HPX_NO_PLAN);
  Result r(raw);
  CHECK(hpx_result_plan_found(r.get()) == 0);
  char* s = nullptr;
  CHECK(hpx_result_plan(r.get(), HPX_FORMAT_TREE, &s) == HPX_NO_PLAN);
  CHECK(s == nullptr);
}

TEST_CASE("input errors") {
  hpx_domain* d = nullptr;
  CHECK(hpx_domain_parse("(:action a :effect (x", &d) == HPX_INPUT_ERROR);
  CHECK(d == nullptr);
  CHECK(std::string(hpx_last_error()).find("1:") == 0);
  CHECK(hpx_domain_parse_file(path("tests/data/missing.hpx").c_str(), &d) == HPX_INPUT_ERROR);
  CHECK(hpx_domain_parse_file(path("tests/data/broken.hpx").c_str(), &d) == HPX_INPUT_ERROR);
  CHECK(std::string(hpx_last_error()).find("broken.hpx:") != std::string::npos);

  REQUIRE(hpx_domain_parse("(:action a :effect x) (:init x -x)", &d) == HPX_OK);
  Domain bad(d);
  CHECK(hpx_domain_validate(bad.get()) == HPX_INPUT_ERROR);
  CHECK(std::string(hpx_last_error()).size() > 0);
  hpx_solve_options o = options(2, 0);
  hpx_result* r = nullptr;
  CHECK(hpx_solve(bad.get(), &o, &r) == HPX_INPUT_ERROR);
  CHECK(r == nullptr);
}

TEST_CASE("invalid arguments") {
  hpx_domain* d = nullptr;
  CHECK(hpx_domain_parse(nullptr, &d) == HPX_INVALID_ARGUMENT);
  CHECK(hpx_domain_parse("", nullptr) == HPX_INVALID_ARGUMENT);
  CHECK(hpx_domain_generate("towers", 3, &d, nullptr, nullptr) == HPX_INVALID_ARGUMENT);
  CHECK(hpx_domain_generate("rings", 1, &d, nullptr, nullptr) == HPX_INVALID_ARGUMENT);
  Domain g;
  int steps = 0, branches = -1;
  REQUIRE(hpx_domain_generate("bomb", 2, &d, &steps, &branches) == HPX_OK);
  g.reset(d);
  CHECK(steps == 2);
  CHECK(branches == 0);
  char* s = nullptr;
  CHECK(hpx_emit_program(g.get(), 0, 0, 0, 0, &s) == HPX_INVALID_ARGUMENT);
  hpx_solve_options o = options(-1, 0);
  hpx_result* r = nullptr;
  CHECK(hpx_solve(g.get(), &o, &r) == HPX_INVALID_ARGUMENT);
  o = options(2, 0);
  o.jobs = 0;
  CHECK(hpx_solve(g.get(), &o, &r) == HPX_INVALID_ARGUMENT);
  CHECK(hpx_solve(nullptr, &o, &r) == HPX_INVALID_ARGUMENT);
  CHECK(r == nullptr);
  hpx_string_free(nullptr);
  hpx_domain_free(nullptr);
  hpx_result_free(nullptr);
}

TEST_CASE("render and emit") {
  Domain d = load("domains/smarthome.hpx");
  char* s = nullptr;
  REQUIRE(hpx_domain_render(d.get(), &s) == HPX_OK);
  const std::string text = take(s);
  hpx_domain* again = nullptr;
  REQUIRE(hpx_domain_parse(text.c_str(), &again) == HPX_OK);
  Domain a(again);
  REQUIRE(hpx_domain_render(a.get(), &s) == HPX_OK);
  CHECK(take(s) == text);

  REQUIRE(hpx_emit_program(d.get(), 4, 1, 0, 0, &s) == HPX_OK);
  const std::string program = take(s);
  CHECK(program.rfind("action(drive).  % T1\n", 0) == 0);
  CHECK(program.find("#minimize") != std::string::npos);
}

TEST_CASE("errors are per thread") {
  hpx_domain* d = nullptr;
  CHECK(hpx_domain_parse("(", &d) == HPX_INPUT_ERROR);
  std::string other;
  std::thread([&] { other = hpx_last_error(); }).join();
  CHECK(other.empty());
  CHECK_FALSE(std::string(hpx_last_error()).empty());
}

TEST_CASE("benchmarks through the C interface") {
  for (const char* family : {"bomb", "sickness"}) {
    hpx_domain* d = nullptr;
    int steps = 0, branches = 0;
    REQUIRE(hpx_domain_generate(family, 3, &d, &steps, &branches) == HPX_OK);
    Domain g(d);
    hpx_solve_options o = options(steps, branches);
    o.optimize = 1;
    o.oracle_check = 1;
    o.jobs = 2;
    hpx_result* r = nullptr;
    REQUIRE(hpx_solve(g.get(), &o, &r) == HPX_OK);
    Result res(r);
    char* s = nullptr;
    REQUIRE(hpx_result_report(res.get(), &s) == HPX_OK);
    const auto rep = nlohmann::json::parse(take(s));
    CHECK(rep["oracle"]["violations"] == 0);
    CHECK(rep["verified"] == true);
  }
}
