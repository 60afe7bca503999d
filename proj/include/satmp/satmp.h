/*
 * C interface to the satmp toolkit. All handles are opaque; every fallible call returns a
 * satmp_status and, on failure, leaves a message in satmp_last_error().
 * Strings returned through char** must be released with satmp_string_free.
 */
#ifndef SATMP_H
#define SATMP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SATMP_API __declspec(dllexport)
#else
#define SATMP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum satmp_status {
  SATMP_OK = 0,
  SATMP_ERR_MISSING_HEADER = 1,
  SATMP_ERR_CLAUSE_COUNT_MISMATCH = 2,
  SATMP_ERR_VARIABLE_OUT_OF_RANGE = 3,
  SATMP_ERR_UNTERMINATED_CLAUSE = 4,
  SATMP_ERR_NON_INTEGER_TOKEN = 5,
  SATMP_ERR_INVALID_PARAMS = 6,
  SATMP_ERR_TOO_LARGE = 7,
  SATMP_ERR_INDEX_OUT_OF_RANGE = 8,
  SATMP_ERR_CORRUPT_STATE = 9,
  SATMP_ERR_DOMAIN_VIOLATION = 10,
  SATMP_ERR_LENGTH_MISMATCH = 11,
  SATMP_ERR_IO = 12,
  SATMP_ERR_NULL_ARGUMENT = 100,
  SATMP_ERR_INTERNAL = 101
} satmp_status;

/* Values double as SAT-competition exit codes. */
typedef enum satmp_outcome { SATMP_UNKNOWN = 0, SATMP_SAT = 10, SATMP_UNSAT = 20 } satmp_outcome;

typedef enum satmp_solver {
  SATMP_SOLVER_WALKSAT = 0,
  SATMP_SOLVER_WALKSAT_PAPER = 1,
  SATMP_SOLVER_GSAT = 2,
  SATMP_SOLVER_DPLL = 3,
  SATMP_SOLVER_BRUTE = 4,
  SATMP_SOLVER_MP = 5
} satmp_solver;

typedef struct satmp_formula satmp_formula;
typedef struct satmp_result satmp_result;

/* Message for the last failed call on this thread; never NULL. */
SATMP_API const char* satmp_last_error(void);
SATMP_API const char* satmp_status_name(satmp_status status);
SATMP_API void satmp_string_free(char* s);

SATMP_API satmp_status satmp_formula_parse(const char* text, size_t length, satmp_formula** out);
SATMP_API satmp_status satmp_formula_generate(uint32_t num_vars, uint64_t num_clauses, uint32_t width,
                                              uint64_t seed, satmp_formula** out);
SATMP_API void satmp_formula_free(satmp_formula* formula);
SATMP_API uint32_t satmp_formula_num_vars(const satmp_formula* formula);
SATMP_API uint64_t satmp_formula_num_clauses(const satmp_formula* formula);
SATMP_API satmp_status satmp_formula_to_dimacs(const satmp_formula* formula, char** out);
/* "L<literal node> C<clause node>" per line. */
SATMP_API satmp_status satmp_formula_edge_list(const satmp_formula* formula, char** out);
/* 32 hex digits plus terminator. */
SATMP_API satmp_status satmp_formula_fingerprint(const satmp_formula* formula, char out_hex[33]);

typedef struct satmp_solve_params {
  satmp_solver solver;
  uint64_t seed;
  /* Flip budget for local search, iteration budget K for the machine. */
  uint64_t max_steps;
  uint64_t max_tries; /* GSAT restarts */
  double noise;       /* classic WalkSAT */
  uint32_t dim;       /* machine embedding dimension */
  int record_trace;
  int pure_literal; /* DPLL */
  int record_graph_fingerprints; /* machine */
} satmp_solve_params;

SATMP_API void satmp_solve_params_init(satmp_solve_params* params);
SATMP_API satmp_status satmp_solve(const satmp_formula* formula, const satmp_solve_params* params,
                                   satmp_result** out);
SATMP_API void satmp_result_free(satmp_result* result);
SATMP_API satmp_outcome satmp_result_outcome(const satmp_result* result);
/* 1/0 for the value of var in a SAT result, -1 otherwise. */
SATMP_API int satmp_result_value(const satmp_result* result, uint32_t var);

typedef struct satmp_stats {
  uint64_t flips;
  uint64_t decisions;
  uint64_t iterations;
  double wall_time_ms;
} satmp_stats;

SATMP_API satmp_status satmp_result_stats(const satmp_result* result, satmp_stats* out);
SATMP_API satmp_status satmp_result_to_json(const satmp_result* result, int include_timing, char** out);
/* JSON Lines, one record per step/event; empty for solvers without a trace. */
SATMP_API satmp_status satmp_result_trace_jsonl(const satmp_result* result, char** out);
/* Consecutive changes of the consulted graph: residual formula for DPLL,
 * the machine's graph per step for MP (requires record_graph_fingerprints). */
SATMP_API satmp_status satmp_result_graph_reconfigurations(const satmp_result* result, uint64_t* out);

typedef struct satmp_equiv_params {
  uint64_t seed;
  uint64_t max_steps;
  uint32_t dim;
  int has_reference_seed;
  uint64_t reference_seed;
  /* Test hook: the reference side selects the lowest draw instead of the highest. */
  int inject_fault;
} satmp_equiv_params;

SATMP_API void satmp_equiv_params_init(satmp_equiv_params* params);
SATMP_API satmp_status satmp_equiv(const satmp_formula* formula, const satmp_equiv_params* params, int* matched,
                                   char** report_json);

typedef struct satmp_obs1_report {
  satmp_outcome dpll_outcome;
  uint64_t dpll_events;
  uint64_t dpll_reconfigurations;
  satmp_outcome mp_outcome;
  uint64_t mp_iterations;
  uint64_t mp_reconfigurations;
} satmp_obs1_report;

SATMP_API satmp_status satmp_demo_obs1(const satmp_formula* formula, uint64_t seed, uint64_t max_steps, uint32_t dim,
                                       satmp_obs1_report* out);

typedef struct satmp_bench_params {
  const uint32_t* ns;
  size_t ns_count;
  const uint64_t* ms;
  size_t ms_count;
  uint32_t width;
  uint64_t seeds_per_point;
  uint64_t base_seed;
  uint64_t max_steps;
  uint32_t dim;
  double noise;
  uint32_t threads;
  int include_timing;
} satmp_bench_params;

SATMP_API void satmp_bench_params_init(satmp_bench_params* params);
SATMP_API satmp_status satmp_bench(const satmp_bench_params* params, char** json_out, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* SATMP_H */
