#ifndef HPX_HPX_H
#define HPX_HPX_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(HPX_BUILDING_LIBRARY)
#define HPX_API __declspec(dllexport)
#else
#define HPX_API __declspec(dllimport)
#endif
#else
#define HPX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hpx_domain hpx_domain;
typedef struct hpx_result hpx_result;

typedef enum hpx_status {
  HPX_OK = 0,
  HPX_NO_PLAN = 1,
  HPX_INPUT_ERROR = 2,
  HPX_INTERNAL_ERROR = 3,
  HPX_INVALID_ARGUMENT = 4
} hpx_status;

typedef enum hpx_plan_format { HPX_FORMAT_TREE = 0, HPX_FORMAT_ATOMS = 1, HPX_FORMAT_JSON_LINES = 2 } hpx_plan_format;

typedef struct hpx_solve_options {
  int max_steps;        /* default 8 */
  int max_branches;     /* negative: sensing actions times max_steps */
  int concurrent;       /* 0 sequential, 1 concurrent */
  int optimal;          /* minimise the number of occurrences */
  int optimize;         /* static fluents as facts, prune useless actions */
  int oracle_check;     /* possible-worlds soundness check of the plan */
  int check_invariants; /* fixpoint and branch-tree checks on every state */
  int jobs;             /* search threads, default 1 */
} hpx_solve_options;

/* Message of the last failing call on this thread, "" if none. */
HPX_API const char* hpx_last_error(void);

HPX_API void hpx_solve_options_init(hpx_solve_options* opts);

HPX_API hpx_status hpx_domain_parse(const char* text, hpx_domain** out);
/* Domain name defaults to the file stem. */
HPX_API hpx_status hpx_domain_parse_file(const char* path, hpx_domain** out);
/* family: bomb, rings or sickness. Bounds of the instance are optional outputs. */
HPX_API hpx_status hpx_domain_generate(const char* family, int n, hpx_domain** out, int* max_steps,
                                       int* max_branches);
/* HPX_OK or HPX_INPUT_ERROR with every violation in hpx_last_error(). */
HPX_API hpx_status hpx_domain_validate(const hpx_domain* d);
HPX_API hpx_status hpx_domain_render(const hpx_domain* d, char** out);
HPX_API const char* hpx_domain_name(const hpx_domain* d);
HPX_API void hpx_domain_free(hpx_domain* d);

HPX_API hpx_status hpx_emit_program(const hpx_domain* d, int max_steps, int max_branches, int concurrent,
                                    int optimize, char** out);

/* HPX_OK if a plan was found and passed every requested check, HPX_NO_PLAN,
   HPX_INTERNAL_ERROR if a found plan failed replay, oracle or invariant
   checks. The result is produced in all three cases. */
HPX_API hpx_status hpx_solve(const hpx_domain* d, const hpx_solve_options* opts, hpx_result** out);

HPX_API int hpx_result_plan_found(const hpx_result* r);
HPX_API hpx_status hpx_result_plan(const hpx_result* r, hpx_plan_format format, char** out);
/* Engine atoms of the replayed plan, one per line. */
HPX_API hpx_status hpx_result_trace(const hpx_result* r, char** out);
/* One line JSON report. */
HPX_API hpx_status hpx_result_report(const hpx_result* r, char** out);
/* Replay, oracle and invariant failures, one per line. */
HPX_API hpx_status hpx_result_problems(const hpx_result* r, char** out);
HPX_API void hpx_result_free(hpx_result* r);

HPX_API void hpx_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
