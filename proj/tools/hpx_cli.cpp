#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "hpx/hpx.h"

namespace {

struct StringDeleter {
  void operator()(char* s) const { hpx_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct DomainDeleter {
  void operator()(hpx_domain* d) const { hpx_domain_free(d); }
};
struct ResultDeleter {
  void operator()(hpx_result* r) const { hpx_result_free(r); }
};

int exit_code(hpx_status s) {
  switch (s) {
    case HPX_OK:
      return 0;
    case HPX_NO_PLAN:
      return 1;
    case HPX_INPUT_ERROR:
    case HPX_INVALID_ARGUMENT:
      return 2;
    default:
      return 3;
  }
}

int report_error(hpx_status s) {
  std::cerr << "hpx: " << hpx_last_error() << "\n";
  return exit_code(s);
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "hpx: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

struct RunFlags {
  int max_steps = 8;
  int max_branches = -1;
  bool concurrent = false;
  bool optimal = false;
  bool optimize = false;
  bool oracle_check = false;
  bool check_invariants = false;
  int jobs = 1;
  std::string format = "tree";
  std::string trace;
  std::string emit_asp;
  std::string report;
};

void add_common(CLI::App* cmd, RunFlags& f) {
  cmd->add_flag("--concurrent", f.concurrent, "Allow several actions per step");
  cmd->add_flag("--optimal", f.optimal, "Minimise the number of action occurrences");
  cmd->add_flag("--optimize", f.optimize, "Static fluents as facts, skip actions that cannot add knowledge");
  cmd->add_flag("--oracle-check", f.oracle_check, "Check every derived knowledge atom against possible worlds");
  cmd->add_flag("--check-invariants", f.check_invariants, "Check fixpoint and branch-tree properties of every state");
  cmd->add_option("--jobs", f.jobs, "Search threads")->check(CLI::PositiveNumber);
  cmd->add_option("--trace", f.trace, "Write the engine atoms of the plan to this file");
  cmd->add_option("--emit-asp", f.emit_asp, "Write the logic program to this file");
  cmd->add_option("--report", f.report, "Write the JSON report line to this file");
}

hpx_solve_options to_options(const RunFlags& f) {
  hpx_solve_options o;
  hpx_solve_options_init(&o);
  o.max_steps = f.max_steps;
  o.max_branches = f.max_branches;
  o.concurrent = f.concurrent;
  o.optimal = f.optimal;
  o.optimize = f.optimize;
  o.oracle_check = f.oracle_check;
  o.check_invariants = f.check_invariants;
  o.jobs = f.jobs;
  return o;
}

hpx_plan_format plan_format(const std::string& name) {
  static const std::map<std::string, hpx_plan_format> m{
      {"tree", HPX_FORMAT_TREE}, {"atoms", HPX_FORMAT_ATOMS}, {"json-lines", HPX_FORMAT_JSON_LINES}};
  return m.at(name);
}

/// Writes the logic program if requested. Returns a non-zero exit code on failure.
int emit(const hpx_domain* d, const RunFlags& f) {
  if (f.emit_asp.empty()) return 0;
  char* program = nullptr;
  const hpx_status s =
      hpx_emit_program(d, std::max(f.max_steps, 1), f.max_branches, f.concurrent, f.optimize, &program);
  const OwnedString owned(program);
  if (s != HPX_OK) return report_error(s);
  return write_file(f.emit_asp, owned.get()) ? 0 : 2;
}

/// Solves, prints the plan, writes trace and report. Returns the exit code.
int run(const hpx_domain* d, const RunFlags& f, bool report_to_stdout, bool print_plan) {
  const hpx_solve_options o = to_options(f);
  hpx_result* raw = nullptr;
  const hpx_status s = hpx_solve(d, &o, &raw);
  std::unique_ptr<hpx_result, ResultDeleter> r(raw);
  if (!r) return report_error(s);
  const std::string message = hpx_last_error();

  if (hpx_result_plan_found(r.get())) {
    char* plan = nullptr;
    if (hpx_result_plan(r.get(), plan_format(f.format), &plan) != HPX_OK) return report_error(HPX_INTERNAL_ERROR);
    const OwnedString owned(plan);
    if (print_plan) std::cout << owned.get();
    if (!f.trace.empty()) {
      char* trace = nullptr;
      hpx_result_trace(r.get(), &trace);
      if (!write_file(f.trace, OwnedString(trace).get())) return 2;
    }
  }

  char* rep = nullptr;
  hpx_result_report(r.get(), &rep);
  const std::string line = std::string(OwnedString(rep).get()) + "\n";
  if (!f.report.empty()) {
    if (!write_file(f.report, line)) return 2;
  } else if (report_to_stdout) {
    std::cout << line;
  } else {
    std::cerr << line;
  }

  if (s == HPX_INTERNAL_ERROR) {
    char* problems = nullptr;
    hpx_result_problems(r.get(), &problems);
    std::cerr << "hpx: plan failed its checks:\n" << OwnedString(problems).get();
  } else if (s != HPX_OK && s != HPX_NO_PLAN) {
    std::cerr << "hpx: " << message << "\n";
  }
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional planner with postdiction over sensing histories"};
  app.require_subcommand(1);

  RunFlags solve_flags;
  std::string solve_file;
  auto* solve = app.add_subcommand("solve", "Find a conditional plan for a domain file");
  solve->add_option("file", solve_file, "Domain file")->required();
  solve->add_option("--max-steps", solve_flags.max_steps, "Step bound")->check(CLI::NonNegativeNumber);
  solve->add_option("--max-branches", solve_flags.max_branches,
                    "Branch bound (default: sensing actions times the step bound)")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--format", solve_flags.format, "Plan output format")
      ->check(CLI::IsMember({"tree", "atoms", "json-lines"}));
  add_common(solve, solve_flags);

  RunFlags bench_flags;
  std::string family;
  int n = 0;
  auto* bench = app.add_subcommand("bench", "Run a generated benchmark and print its report");
  bench->add_option("family", family, "bomb, rings or sickness")
      ->required()
      ->check(CLI::IsMember({"bomb", "rings", "sickness"}));
  bench->add_option("--n", n, "Instance size")->required();
  bench->add_option("--max-steps", bench_flags.max_steps, "Override the instance's step bound");
  bench->add_option("--max-branches", bench_flags.max_branches, "Override the instance's branch bound");
  bench->add_option("--format", bench_flags.format, "Also print the plan in this format")
      ->check(CLI::IsMember({"tree", "atoms", "json-lines"}));
  add_common(bench, bench_flags);

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "Parse and check a domain file");
  validate->add_option("file", validate_file, "Domain file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*validate) {
    hpx_domain* raw = nullptr;
    hpx_status s = hpx_domain_parse_file(validate_file.c_str(), &raw);
    std::unique_ptr<hpx_domain, DomainDeleter> d(raw);
    if (s == HPX_OK) s = hpx_domain_validate(d.get());
    if (s != HPX_OK) return report_error(s);
    std::cout << validate_file << ": ok\n";
    return 0;
  }

  if (*solve) {
    hpx_domain* raw = nullptr;
    hpx_status s = hpx_domain_parse_file(solve_file.c_str(), &raw);
    std::unique_ptr<hpx_domain, DomainDeleter> d(raw);
    if (s == HPX_OK) s = hpx_domain_validate(d.get());
    if (s != HPX_OK) return report_error(s);
    if (const int code = emit(d.get(), solve_flags)) return code;
    return run(d.get(), solve_flags, false, true);
  }

  hpx_domain* raw = nullptr;
  int steps = 0;
  int branches = 0;
  const hpx_status s = hpx_domain_generate(family.c_str(), n, &raw, &steps, &branches);
  std::unique_ptr<hpx_domain, DomainDeleter> d(raw);
  if (s != HPX_OK) return report_error(s);
  if (bench->count("--max-steps") == 0) bench_flags.max_steps = steps;
  if (bench->count("--max-branches") == 0) bench_flags.max_branches = branches;
  if (const int code = emit(d.get(), bench_flags)) return code;
  return run(d.get(), bench_flags, true, bench->count("--format") > 0);
}
