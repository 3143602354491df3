/*
 * Copyright 2026 The miqae Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the modified iterative amplitude estimation library.
 *
 * Every function that can fail returns a miqae_status. On failure a
 * description is available from miqae_last_error() until the next failing
 * call on the same thread. Handles are opaque and owned by the caller; free
 * them with the matching *_destroy function. Strings returned through
 * `const char**` are owned by the handle they came from.
 */

#ifndef MIQAE_MIQAE_H_
#define MIQAE_MIQAE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MIQAE_API __declspec(dllexport)
#else
#define MIQAE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define MIQAE_API_VERSION 1

typedef enum miqae_status {
  MIQAE_OK = 0,
  MIQAE_ERR_INVALID_ARGUMENT = 1,
  /* A lemma-guaranteed property failed: an implementation bug. */
  MIQAE_ERR_CONTRACT_VIOLATION = 2,
  MIQAE_ERR_NUMERICAL = 3,
  MIQAE_ERR_IO = 4,
  MIQAE_ERR_OUT_OF_RANGE = 5,
  MIQAE_ERR_INTERNAL = 6
} miqae_status;

typedef enum miqae_ci_method {
  MIQAE_CI_CHERNOFF = 0,
  MIQAE_CI_CLOPPER_PEARSON = 1
} miqae_ci_method;

typedef enum miqae_schedule {
  MIQAE_SCHEDULE_MODIFIED = 0,
  MIQAE_SCHEDULE_UNIFORM = 1
} miqae_schedule;

typedef struct miqae_oracle miqae_oracle;
typedef struct miqae_result miqae_result;
typedef struct miqae_report miqae_report;

typedef struct miqae_config {
  double epsilon;
  double alpha;
  uint64_t n_shots;
  miqae_ci_method ci_method;
  miqae_schedule schedule;
} miqae_config;

typedef struct miqae_round {
  uint32_t index;
  uint64_t k;
  uint64_t K;
  double alpha_i;
  uint64_t n_max;
  int64_t quadrant;
  uint64_t shots_used;
  uint64_t ones_observed;
  double theta_l_before;
  double theta_u_before;
  double theta_l;
  double theta_u;
  uint64_t queries;
} miqae_round;

typedef struct miqae_summary {
  double a_lower;
  double a_upper;
  double theta_lower;
  double theta_upper;
  double point_estimate;
  /* Totals over all inner calls for relative runs. */
  uint64_t total_queries;
  uint64_t total_a_applications;
  uint64_t total_shots;
  double alpha_spent;
  uint32_t rounds;
  /* Zero for absolute-precision runs. */
  uint32_t relative_iterations;
} miqae_summary;

typedef struct miqae_grid_summary {
  uint64_t cells;
  uint64_t runs;
  uint64_t failures;
  uint64_t errors;
} miqae_grid_summary;

MIQAE_API int miqae_api_version(void);
MIQAE_API const char* miqae_last_error(void);
MIQAE_API const char* miqae_status_string(miqae_status status);

MIQAE_API void miqae_config_default(miqae_config* config);

/* Oracle: seeded Bernoulli stand-in for measuring Q^k A|0>. */
MIQAE_API miqae_status miqae_oracle_create(double amplitude, uint64_t seed, miqae_oracle** out);
MIQAE_API void miqae_oracle_destroy(miqae_oracle* oracle);
MIQAE_API miqae_status miqae_oracle_measure(miqae_oracle* oracle, uint64_t k, uint64_t shots,
                                            uint64_t* ones);
MIQAE_API miqae_status miqae_oracle_counters(const miqae_oracle* oracle, uint64_t* queries,
                                             uint64_t* a_applications, uint64_t* shots);

/* Estimation. The oracle's counters keep accumulating across runs. */
MIQAE_API miqae_status miqae_run(const miqae_config* config, miqae_oracle* oracle,
                                 miqae_result** out);
MIQAE_API miqae_status miqae_run_relative(const miqae_config* config, double epsilon_floor,
                                          miqae_oracle* oracle, miqae_result** out);
MIQAE_API void miqae_result_destroy(miqae_result* result);
MIQAE_API miqae_status miqae_result_summary(const miqae_result* result, miqae_summary* out);
MIQAE_API size_t miqae_result_round_count(const miqae_result* result);
MIQAE_API miqae_status miqae_result_round(const miqae_result* result, size_t index,
                                          miqae_round* out);
MIQAE_API miqae_status miqae_result_json(miqae_result* result, const char** json);

/* Experiment harness. */
MIQAE_API miqae_status miqae_grid_run(const char* config_json, const char* out_dir,
                                      unsigned threads, miqae_grid_summary* summary);
MIQAE_API miqae_status miqae_grid_run_file(const char* config_path, const char* out_dir,
                                           unsigned threads, miqae_grid_summary* summary);
MIQAE_API miqae_status miqae_roundstats(const char* runs_dir, const char* out_path,
                                        size_t* rows_written);

/* Numerical lemma checks. */
MIQAE_API miqae_status miqae_verify(uint64_t grid_points, uint64_t trials, uint64_t seed,
                                    miqae_report** out);
MIQAE_API void miqae_report_destroy(miqae_report* report);
MIQAE_API size_t miqae_report_count(const miqae_report* report);
MIQAE_API miqae_status miqae_report_item(const miqae_report* report, size_t index,
                                         const char** name, int* passed, const char** detail);
MIQAE_API int miqae_report_all_passed(const miqae_report* report);

#ifdef __cplusplus
}
#endif

#endif /* MIQAE_MIQAE_H_ */
