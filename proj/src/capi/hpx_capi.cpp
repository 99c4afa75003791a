#include "hpx/hpx.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "hpx/benchmarks.hpp"
#include "hpx/emitter.hpp"
#include "hpx/oracle.hpp"
#include "hpx/parser.hpp"
#include "hpx/report.hpp"

struct hpx_domain {
  hpx::PlanningDomain domain;
};

struct hpx_result {
  hpx::PlanningDomain domain;
  hpx::SolveResult result;
};

namespace {

thread_local std::string last_error;

hpx_status fail(hpx_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

hpx_status ok() {
  last_error.clear();
  return HPX_OK;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename Fn>
hpx_status guarded(Fn fn) {
  try {
    return fn();
  } catch (const hpx::ParseError& e) {
    return fail(HPX_INPUT_ERROR, e.what());
  } catch (const hpx::DomainError& e) {
    return fail(HPX_INPUT_ERROR, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(HPX_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(HPX_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(HPX_INTERNAL_ERROR, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* hpx_last_error(void) { return last_error.c_str(); }

void hpx_solve_options_init(hpx_solve_options* opts) {
  if (!opts) return;
  *opts = hpx_solve_options{};
  opts->max_steps = 8;
  opts->max_branches = -1;
  opts->jobs = 1;
}

hpx_status hpx_domain_parse(const char* text, hpx_domain** out) {
  if (!text || !out) return fail(HPX_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new hpx_domain{hpx::parse_domain(text)};
    return ok();
  });
}

hpx_status hpx_domain_parse_file(const char* path, hpx_domain** out) {
  if (!path || !out) return fail(HPX_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(HPX_INPUT_ERROR, std::string("cannot read '") + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    hpx::PlanningDomain d;
    try {
      d = hpx::parse_domain(ss.str());
    } catch (const hpx::ParseError& e) {
      return fail(HPX_INPUT_ERROR, std::string(path) + ":" + e.what());
    }
    if (d.name.empty()) d.name = std::filesystem::path(path).stem().string();
    *out = new hpx_domain{std::move(d)};
    return ok();
  });
}

hpx_status hpx_domain_generate(const char* family, int n, hpx_domain** out, int* max_steps, int* max_branches) {
  if (!family || !out) return fail(HPX_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    hpx::BenchmarkInstance inst = hpx::generate_benchmark(family, n);
    if (max_steps) *max_steps = inst.max_steps;
    if (max_branches) *max_branches = inst.max_branches;
    *out = new hpx_domain{std::move(inst.domain)};
    return ok();
  });
}

hpx_status hpx_domain_validate(const hpx_domain* d) {
  if (!d) return fail(HPX_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const hpx::ValidationReport v = hpx::validate_domain(d->domain);
    return v.ok() ? ok() : fail(HPX_INPUT_ERROR, v.to_string());
  });
}

hpx_status hpx_domain_render(const hpx_domain* d, char** out) {
  if (!d || !out) return fail(HPX_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = dup(hpx::render_domain(d->domain));
    return ok();
  });
}

const char* hpx_domain_name(const hpx_domain* d) { return d ? d->domain.name.c_str() : ""; }

void hpx_domain_free(hpx_domain* d) { delete d; }

hpx_status hpx_emit_program(const hpx_domain* d, int max_steps, int max_branches, int concurrent, int optimize,
                            char** out) {
  if (!d || !out) return fail(HPX_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto mode = concurrent ? hpx::PlanMode::concurrent : hpx::PlanMode::sequential;
    if (max_branches < 0) max_branches = hpx::default_max_branches(d->domain, max_steps);
    *out = dup(hpx::emit_program(d->domain, max_steps, max_branches, mode, {optimize != 0}));
    return ok();
  });
}

hpx_status hpx_solve(const hpx_domain* d, const hpx_solve_options* opts, hpx_result** out) {
  if (!d || !out) return fail(HPX_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  hpx_solve_options o;
  hpx_solve_options_init(&o);
  if (opts) o = *opts;
  if (o.max_steps < 0) return fail(HPX_INVALID_ARGUMENT, "max_steps must be non-negative");
  if (o.jobs < 1) return fail(HPX_INVALID_ARGUMENT, "jobs must be at least 1");
  return guarded([&] {
    hpx::SolveOptions so;
    so.search.max_steps = o.max_steps;
    so.search.max_branches = o.max_branches;
    so.search.mode = o.concurrent ? hpx::PlanMode::concurrent : hpx::PlanMode::sequential;
    so.search.optimize = o.optimize != 0;
    so.search.jobs = o.jobs;
    so.optimal = o.optimal != 0;
    so.oracle_check = o.oracle_check != 0;
    so.check_invariants = o.check_invariants != 0;
    auto* r = new hpx_result{d->domain, hpx::solve(d->domain, so)};
    *out = r;
    if (!r->result.plan) return fail(HPX_NO_PLAN, "no plan within the bounds");
    if (r->result.inconsistent()) return fail(HPX_INTERNAL_ERROR, r->result.problems.front());
    return ok();
  });
}

int hpx_result_plan_found(const hpx_result* r) { return r && r->result.plan ? 1 : 0; }

hpx_status hpx_result_plan(const hpx_result* r, hpx_plan_format format, char** out) {
  if (!r || !out) return fail(HPX_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (!r->result.plan) return fail(HPX_NO_PLAN, "no plan");
  return guarded([&] {
    switch (format) {
      case HPX_FORMAT_TREE:
        *out = dup(hpx::render_plan_tree(r->domain, *r->result.plan));
        return ok();
      case HPX_FORMAT_ATOMS:
        *out = dup(hpx::render_plan_atoms(r->domain, *r->result.plan));
        return ok();
      case HPX_FORMAT_JSON_LINES:
        *out = dup(hpx::render_plan_json_lines(r->domain, *r->result.plan));
        return ok();
    }
    return fail(HPX_INVALID_ARGUMENT, "unknown plan format");
  });
}

hpx_status hpx_result_trace(const hpx_result* r, char** out) {
  if (!r || !out) return fail(HPX_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::string s;
    for (const auto& a : r->result.trace) s += a + "\n";
    *out = dup(s);
    return ok();
  });
}

hpx_status hpx_result_report(const hpx_result* r, char** out) {
  if (!r || !out) return fail(HPX_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = dup(r->result.report.to_json());
    return ok();
  });
}

hpx_status hpx_result_problems(const hpx_result* r, char** out) {
  if (!r || !out) return fail(HPX_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::string s;
    for (const auto& p : r->result.problems) s += p + "\n";
    *out = dup(s);
    return ok();
  });
}

void hpx_result_free(hpx_result* r) { delete r; }

void hpx_string_free(char* s) { std::free(s); }

}  // extern "C"
