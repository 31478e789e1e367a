// Copyright 2026 The dgmt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the dgmt library. All objects are opaque handles owned by
 * the caller and released with the matching *_free function. Functions
 * return a dgmt_status; on failure dgmt_last_error() describes the error
 * raised most recently on the calling thread. */

#ifndef DGMT_DGMT_H_
#define DGMT_DGMT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DGMT_API __declspec(dllexport)
#else
#define DGMT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dgmt_status {
  DGMT_OK = 0,
  DGMT_ERR_DIMENSION = 1,
  DGMT_ERR_BUDGET_EXHAUSTED = 2,
  DGMT_ERR_DEGENERATE_INPUT = 3,
  DGMT_ERR_PARAMETER = 4,
  DGMT_ERR_INSUFFICIENT_POPULATION = 5,
  DGMT_ERR_INFEASIBLE_PARTITION = 6,
  DGMT_ERR_CALIBRATION_FAILED = 7,
  DGMT_ERR_AUDIT_VIOLATION = 8,
  DGMT_ERR_IO = 9,
  DGMT_ERR_INVALID_ARGUMENT = 10, /* null handle or pointer */
  DGMT_ERR_INTERNAL = 99
} dgmt_status;

typedef enum dgmt_verdict { DGMT_ACCEPT = 0, DGMT_REJECT = 1 } dgmt_verdict;

typedef enum dgmt_mean_mode {
  DGMT_MEAN_NULL = 0,
  DGMT_MEAN_SPIKE = 1,
  DGMT_MEAN_SPREAD = 2,
  DGMT_MEAN_RANDOM_DIRECTION = 3
} dgmt_mean_mode;

typedef struct dgmt_config dgmt_config;
typedef struct dgmt_report dgmt_report;

DGMT_API const char* dgmt_status_name(dgmt_status status);
DGMT_API const char* dgmt_last_error(void);
DGMT_API const char* dgmt_version(void);

/* Configs. Parsing validates the config for its protocol. */
DGMT_API dgmt_status dgmt_config_parse(const char* json_text, dgmt_config** out);
DGMT_API dgmt_status dgmt_config_load(const char* path, dgmt_config** out);
DGMT_API dgmt_status dgmt_config_clone(const dgmt_config* config, dgmt_config** out);
DGMT_API void dgmt_config_free(dgmt_config* config);

/* Sets a scalar field: "d", "epsilon", "s", "multiplier", or "ell" / "m"
 * (applied to every user). The result is validated; on failure the config
 * is left unchanged. */
DGMT_API dgmt_status dgmt_config_set(dgmt_config* config, const char* name, double value);
DGMT_API dgmt_status dgmt_config_user_count(const dgmt_config* config, size_t* out);

/* Serialized JSON; the caller frees the string with dgmt_string_free. */
DGMT_API dgmt_status dgmt_config_to_json(const dgmt_config* config, char** out);
DGMT_API void dgmt_string_free(char* s);

typedef struct dgmt_run_options {
  uint64_t seed;
  size_t trials;      /* per mean mode */
  int record_timing;  /* nonzero: measure wall time per trial */
  unsigned workers;
} dgmt_run_options;

DGMT_API void dgmt_run_options_init(dgmt_run_options* options);

/* Runs trials for every mean mode of the config. Audit violations do not
 * fail the call; query them with dgmt_report_audit_violations. */
DGMT_API dgmt_status dgmt_run(const dgmt_config* config, const dgmt_run_options* options,
                              dgmt_report** out);
DGMT_API void dgmt_report_free(dgmt_report* report);

DGMT_API dgmt_status dgmt_report_worst_rate(const dgmt_report* report, double* out);
/* Reject rate under the null; DGMT_ERR_PARAMETER when no null trials ran. */
DGMT_API dgmt_status dgmt_report_type1_rate(const dgmt_report* report, double* out);
/* Accept rate under an alternative mode. */
DGMT_API dgmt_status dgmt_report_type2_rate(const dgmt_report* report, dgmt_mean_mode mode,
                                            double* out);
DGMT_API dgmt_status dgmt_report_audit_violations(const dgmt_report* report, size_t* out);
DGMT_API dgmt_status dgmt_report_write_csv(const dgmt_report* report, const char* path);
DGMT_API dgmt_status dgmt_report_summary_json(const dgmt_report* report, char** out);

typedef struct dgmt_calibration_options {
  uint64_t seed;
  size_t trials_per_mode;
  size_t start_multiplier;
  size_t max_multiplier;
  unsigned workers;
} dgmt_calibration_options;

typedef struct dgmt_calibration_result {
  size_t multiplier;
  size_t users;
  double worst_rate;
  double theoretical_scaling;
  double achieved_constant;
  size_t steps;
  size_t audit_violations; /* summed over every step */
} dgmt_calibration_result;

DGMT_API void dgmt_calibration_options_init(dgmt_calibration_options* options);
DGMT_API dgmt_status dgmt_calibrate(const dgmt_config* config, double target,
                                    const dgmt_calibration_options* options,
                                    dgmt_calibration_result* out);

/* Runs one trial and returns its serialized transcript (see transcript.hpp
 * for the format). The buffer is freed with dgmt_bytes_free. */
DGMT_API dgmt_status dgmt_trial(const dgmt_config* config, dgmt_mean_mode mode, size_t trial,
                                uint64_t seed, dgmt_verdict* verdict, uint8_t** transcript,
                                size_t* transcript_len);
DGMT_API void dgmt_bytes_free(uint8_t* bytes);

/* Primitives. */
DGMT_API dgmt_status dgmt_fwht(double* values, size_t length);
DGMT_API dgmt_status dgmt_collision_statistic(const uint8_t* bits, size_t n, size_t dim,
                                              double* out);

#ifdef __cplusplus
}
#endif

#endif /* DGMT_DGMT_H_ */
