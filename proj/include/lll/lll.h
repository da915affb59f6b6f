/*
 * Copyright 2026 The lll-resample Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the resampling solver library. All objects are opaque and
 * owned by the caller once returned; release them with the matching
 * lll_*_free function. Functions returning lll_status leave a description
 * of the most recent failure on the calling thread in lll_last_error().
 */

#ifndef LLL_LLL_H_
#define LLL_LLL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LLL_API __declspec(dllexport)
#else
#define LLL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lll_status {
  LLL_OK = 0,
  LLL_ERR_INVALID_ARGUMENT = 1,
  LLL_ERR_PARSE = 2,
  LLL_ERR_ENUMERATION_LIMIT = 3,
  LLL_ERR_SUPPLIED_EDGE_NOT_SUBSET = 4,
  LLL_ERR_INDEX_OUT_OF_TABLE = 5,
  LLL_ERR_IMPROPER_TREE = 6,
  LLL_ERR_MISSING_CONDITIONAL = 7,
  LLL_ERR_EXPLOSION_GUARD = 8,
  LLL_ERR_EXPECTATION_EXCEEDS_HALF = 9,
  LLL_ERR_TABLE_EXHAUSTED = 10,
  LLL_ERR_INTERNAL = 99
} lll_status;

typedef enum lll_mode {
  LLL_MODE_SEQUENTIAL = 0,
  LLL_MODE_PARALLEL = 1,
  LLL_MODE_DETERMINISTIC = 2
} lll_mode;

typedef enum lll_graph {
  LLL_GRAPH_STANDARD = 0,
  LLL_GRAPH_LOPSIDED = 1
} lll_graph;

typedef enum lll_policy {
  LLL_POLICY_DEFAULT = 0,
  LLL_POLICY_LOWEST_ID = 1,
  LLL_POLICY_RANDOM = 2,
  LLL_POLICY_GREEDY_MIS = 3,
  LLL_POLICY_LUBY_STEP = 4
} lll_policy;

typedef struct lll_run_options {
  lll_mode mode;
  lll_graph graph;
  uint64_t seed;
  lll_policy policy;
  double epsilon;
  /* Contents of an x file (m whitespace-separated reals), or NULL for the
     symmetric assignment 1/(d+1). */
  const char* x_text;
  int has_max_steps;
  uint64_t max_steps;
  int has_max_rounds;
  uint64_t max_rounds;
  int override_check;
  int elementary;
} lll_run_options;

typedef struct lll_instance lll_instance;
typedef struct lll_solution lll_solution;
typedef struct lll_run_result lll_run_result;

LLL_API const char* lll_version(void);
LLL_API const char* lll_last_error(void);
LLL_API const char* lll_status_string(lll_status status);

LLL_API void lll_run_options_init(lll_run_options* options);

/* Full pipeline: parse, check, solve, verify, render stats. A non-OK status
   means the options themselves were unusable; input problems are reported
   through lll_run_result_exit_status. */
LLL_API lll_status lll_run(const char* input, size_t input_len,
                           const lll_run_options* options, lll_run_result** out);
LLL_API int lll_run_result_exit_status(const lll_run_result* result);
LLL_API const char* lll_run_result_stats(const lll_run_result* result);
LLL_API const char* lll_run_result_model_line(const lll_run_result* result);
LLL_API const char* lll_run_result_message(const lll_run_result* result);
LLL_API void lll_run_result_free(lll_run_result* result);

/* Instances built from DIMACS CNF or hypergraph text. */
LLL_API lll_status lll_instance_parse(const char* text, size_t len, int elementary,
                                      lll_instance** out);
LLL_API size_t lll_instance_num_variables(const lll_instance* instance);
LLL_API size_t lll_instance_num_events(const lll_instance* instance);
LLL_API size_t lll_instance_max_degree(const lll_instance* instance, lll_graph graph);
/* Writes m reals; returns LLL_ERR_INVALID_ARGUMENT if capacity < m. */
LLL_API lll_status lll_instance_symmetric_x(const lll_instance* instance, lll_graph graph,
                                            double* x, size_t capacity);
/* Sets *pass to 1 when every event satisfies the condition. */
LLL_API lll_status lll_instance_check(const lll_instance* instance, lll_graph graph,
                                      const double* x, size_t x_len, double epsilon,
                                      int* pass);
LLL_API void lll_instance_free(lll_instance* instance);

LLL_API lll_status lll_solve_sequential(const lll_instance* instance, uint64_t seed,
                                        lll_policy policy, uint64_t max_steps,
                                        lll_solution** out);
LLL_API lll_status lll_solve_parallel(const lll_instance* instance, uint64_t seed,
                                      lll_policy policy, uint64_t max_rounds,
                                      lll_solution** out);
LLL_API lll_status lll_solve_deterministic(const lll_instance* instance, const double* x,
                                           size_t x_len, double epsilon, lll_solution** out);

LLL_API int lll_solution_terminated(const lll_solution* solution);
LLL_API uint64_t lll_solution_steps(const lll_solution* solution);
LLL_API size_t lll_solution_rounds(const lll_solution* solution);
/* Copies min(n, capacity) values and returns n. */
LLL_API size_t lll_solution_assignment(const lll_solution* solution, uint32_t* values,
                                       size_t capacity);
/* Execution log in its line-oriented text form. */
LLL_API const char* lll_solution_log(const lll_solution* solution);
/* Sample table text (deterministic solves only; empty otherwise). */
LLL_API const char* lll_solution_table(const lll_solution* solution);
LLL_API void lll_solution_free(lll_solution* solution);

#ifdef __cplusplus
}
#endif

#endif /* LLL_LLL_H_ */
