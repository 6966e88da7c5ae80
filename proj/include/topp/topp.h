// Copyright 2026 The topp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the topp path-parameterization engine.
 *
 * Objects are opaque and owned by the caller; release them with the matching
 * *_free function. Every fallible call returns a topp_status; on failure the
 * message is available from topp_last_error() on the same thread until the
 * next failing call. Strings returned through char** must be released with
 * topp_string_free(). */
#ifndef TOPP_TOPP_H_
#define TOPP_TOPP_H_

#include <stddef.h>

#if defined(_WIN32)
#define TOPP_API __declspec(dllexport)
#else
#define TOPP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct topp_model topp_model;
typedef struct topp_path topp_path;
typedef struct topp_solution topp_solution;

typedef enum topp_status {
  TOPP_OK = 0,
  TOPP_ERR_INVALID_ARGUMENT = 1,
  TOPP_ERR_INVALID_PARAMETER = 2,
  TOPP_ERR_INVALID_LIMITS = 3,
  TOPP_ERR_UNREACHABLE_POSE = 4,
  TOPP_ERR_SINGULAR_JACOBIAN = 5,
  TOPP_ERR_RANK_DEFICIENT = 6,
  TOPP_ERR_EMPTY_POLYGON = 7,
  TOPP_ERR_VELOCITY_INFEASIBLE = 8,
  TOPP_ERR_INFEASIBLE_LP = 9,
  TOPP_ERR_UNBOUNDED_LP = 10,
  TOPP_ERR_SINGULAR_PATTERN = 11,
  TOPP_ERR_INCONSISTENT_ACCELERATION = 12,
  TOPP_ERR_INFEASIBLE_BOUNDARY = 13,
  TOPP_ERR_NO_SOLUTION = 14,
  TOPP_ERR_DIVERGENT_TIME = 15,
  TOPP_ERR_PARSE = 16,
  TOPP_ERR_IO = 17,
  TOPP_ERR_BENCHMARK_MISMATCH = 18,
  TOPP_ERR_INTERNAL = 100
} topp_status;

typedef enum topp_method {
  TOPP_METHOD_SPA = 0,
  TOPP_METHOD_LP_EVERY_STEP = 1
} topp_method;

typedef struct topp_solve_options {
  double dt;                 /* integration step (s) */
  int mvc_samples_per_unit;  /* MVC samples per unit of s */
  int zero_inertia_grid;     /* grid intervals for the zero-inertia scan */
  int method;                /* topp_method */
  int full_mvc;              /* nonzero: sample the MVC on all of [0, 1] */
  int probe_steps;           /* steps for sink/source probes */
  long max_steps;            /* per extremal curve */
  double sdot2_cap;          /* clip for unbounded polygons */
} topp_solve_options;

typedef struct topp_counters {
  long mvc_polygon_builds;
  long refresh_polygon_builds;
  long check_polygon_builds;
  long lp_calls;
  long spa_solves;
  long steps;
  double mvc_seconds;
  double total_seconds;
} topp_counters;

typedef struct topp_bench_report {
  int repeat;
  double spa_mvc_seconds;
  double spa_solution_seconds;
  double spa_total_seconds;
  double baseline_mvc_seconds;
  double baseline_solution_seconds;
  double baseline_total_seconds;
  double reduction_percent;
  double envelope_deviation;
} topp_bench_report;

TOPP_API const char* topp_version(void);
TOPP_API const char* topp_status_string(topp_status status);
TOPP_API const char* topp_last_error(void);
/* Nonzero when the status means the problem itself has no feasible answer
 * (as opposed to bad input or configuration). */
TOPP_API int topp_status_is_infeasible(topp_status status);
/* "error", "info" or "debug". */
TOPP_API topp_status topp_set_log_level(const char* level);

TOPP_API void topp_solve_options_init(topp_solve_options* options);

/* "planar-cmms" or a model JSON file. */
TOPP_API topp_status topp_model_load(const char* name_or_file,
                                     topp_model** out);
TOPP_API void topp_model_free(topp_model* model);
TOPP_API topp_status topp_model_dims(const topp_model* model, int* n, int* p,
                                     int* m, int* r);

/* "example1", "example1-circle" or a path JSON file. */
TOPP_API topp_status topp_path_load(const char* name_or_file,
                                    topp_path** out);
TOPP_API void topp_path_free(topp_path* path);
/* *has_boundary is 0 when the path file gives no boundary velocities. */
TOPP_API topp_status topp_path_boundary(const topp_path* path, double* sdot_i,
                                        double* sdot_f, int* has_boundary);

TOPP_API topp_status topp_solve(const topp_model* model, const topp_path* path,
                                double sdot_i, double sdot_f,
                                const topp_solve_options* options,
                                topp_solution** out);
TOPP_API void topp_solution_free(topp_solution* solution);
TOPP_API const char* topp_solution_procedure(const topp_solution* solution);
TOPP_API double topp_solution_gamma(const topp_solution* solution);
TOPP_API size_t topp_solution_switch_count(const topp_solution* solution);
TOPP_API topp_status topp_solution_switch_point(const topp_solution* solution,
                                                size_t index, double* s,
                                                double* sdot,
                                                const char** kind);
TOPP_API size_t topp_solution_envelope_size(const topp_solution* solution);
TOPP_API topp_status topp_solution_envelope_point(
    const topp_solution* solution, size_t index, double* s, double* sdot,
    double* sddot);
TOPP_API topp_status topp_solution_counters(const topp_solution* solution,
                                            topp_counters* out);
TOPP_API topp_status topp_solution_json(const topp_solution* solution,
                                        char** out);
/* Time series sampled every dt seconds along the solution. */
TOPP_API topp_status topp_solution_trajectory_csv(
    const topp_solution* solution, const topp_model* model,
    const topp_path* path, double dt, char** out);

/* MVC on `intervals` equal cells of [from, to] (intervals + 1 rows). */
TOPP_API topp_status topp_mvc_csv(const topp_model* model,
                                  const topp_path* path, double from,
                                  double to, int intervals, double sdot2_cap,
                                  char** out);
TOPP_API topp_status topp_polygon_json(const topp_model* model,
                                       const topp_path* path, double s,
                                       double sdot2_cap, char** out);
TOPP_API topp_status topp_describe_json(const topp_model* model,
                                        const topp_path* path, char** out);

/* Solves with pattern reuse and with the LP-every-step baseline; fails with
 * TOPP_ERR_BENCHMARK_MISMATCH when the envelopes differ by more than 1e-6.
 * `json` may be NULL. */
TOPP_API topp_status topp_bench(const topp_model* model, const topp_path* path,
                                double sdot_i, double sdot_f,
                                const topp_solve_options* options, int repeat,
                                topp_bench_report* report, char** json);

TOPP_API void topp_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* TOPP_TOPP_H_ */
