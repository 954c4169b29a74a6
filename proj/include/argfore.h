/* Copyright 2026 The argfore Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to libargfore.
 *
 * Every call returns an argfore_status. On failure the thread's last error
 * message is available from argfore_last_error() until the next call on
 * that thread. Strings returned through char** are owned by the caller and
 * released with argfore_string_free(). JSON in and out uses the same
 * documents as the command line tool.
 */

#ifndef ARGFORE_H_
#define ARGFORE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ARGFORE_API __declspec(dllexport)
#else
#define ARGFORE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define ARGFORE_VERSION "0.1.0"

typedef enum argfore_status {
  ARGFORE_OK = 0,
  ARGFORE_E_DOMAIN = 1,
  ARGFORE_E_CYCLIC_GRAPH = 2,
  ARGFORE_E_NOT_FOUND = 3,
  ARGFORE_E_VALIDATION = 4,
  ARGFORE_E_UNSUPPORTED_SHAPE = 5,
  ARGFORE_E_GENERATION = 6,
  ARGFORE_E_PRECONDITION = 7,
  ARGFORE_E_PARSE = 8,
  ARGFORE_E_SCHEMA = 9,
  ARGFORE_E_UNDEFINED_TEST = 10,
  ARGFORE_E_CONFLICT = 11,
  ARGFORE_E_IO = 12,
  ARGFORE_E_INVALID_ARGUMENT = 100, /* null pointer or bad enum text */
  ARGFORE_E_INTERNAL = 101
} argfore_status;

typedef struct argfore_acf argfore_acf;
typedef struct argfore_dataset argfore_dataset;
typedef struct argfore_server argfore_server;

/* Coherence thresholds. xi2_map_json, when not NULL, is a JSON object of
 * per-argument (or per-question) xi2 values; xi2 is the fallback. */
typedef struct argfore_thresholds {
  double xi1;
  double xi2;
  double epsilon;
  double forecast_base;
  const char* xi2_map_json;
} argfore_thresholds;

ARGFORE_API const char* argfore_version(void);
ARGFORE_API const char* argfore_last_error(void);
ARGFORE_API const char* argfore_status_name(argfore_status status);
ARGFORE_API void argfore_string_free(char* s);

/* xi1 = xi2 = 0.5, epsilon = 0.05, forecast_base = 0.5, no map. */
ARGFORE_API void argfore_thresholds_default(argfore_thresholds* out);

/* Rounds every floating-point number in a JSON document to `digits`
 * significant digits. */
ARGFORE_API argfore_status argfore_json_round(const char* json, int digits,
                                              char** out);

/* DF-QuAD building blocks and evaluation of a QBAF document. */
ARGFORE_API argfore_status argfore_aggregate(const double* strengths, size_t n,
                                             double* out);
ARGFORE_API argfore_status argfore_combine(double base, double attack,
                                           double support, double* out);
ARGFORE_API argfore_status argfore_qbaf_evaluate(const char* qbaf_json,
                                                 char** strengths_json);

/* Debates. */
ARGFORE_API argfore_status argfore_acf_load(const char* path, argfore_acf** out);
ARGFORE_API argfore_status argfore_acf_parse(const char* json, argfore_acf** out);
ARGFORE_API void argfore_acf_free(argfore_acf* acf);
ARGFORE_API argfore_status argfore_acf_to_json(const argfore_acf* acf,
                                               char** out);
/* Writes a JSON array of violations (empty when valid). */
ARGFORE_API argfore_status argfore_acf_validate(const argfore_acf* acf,
                                                char** violations_json);
/* {"user", "coherent", "verdicts": [...]} */
ARGFORE_API argfore_status argfore_acf_check_coherence(
    const argfore_acf* acf, const char* user, const argfore_thresholds* cfg,
    char** out);
/* Raw and coherent means for `forecast_arg`, or an array over every
 * forecasting argument when it is NULL. */
ARGFORE_API argfore_status argfore_acf_forecast(const argfore_acf* acf,
                                                const char* forecast_arg,
                                                const argfore_thresholds* cfg,
                                                char** out);
ARGFORE_API argfore_status argfore_acf_forecaster_qbaf(const argfore_acf* acf,
                                                       const char* user,
                                                       double forecast_base,
                                                       char** out);
/* {"code": "vb", "name": "vote/breadth", "simple": false, "vote": true,
 *  "breadth": true, "depth": false} */
ARGFORE_API argfore_status argfore_acf_classify(const argfore_acf* acf,
                                                const char* user,
                                                char** profile_json);

/* Builds a debate of the given profile code and band ("lt50", "eq50",
 * "gt50"). question and templates_path may be NULL. */
ARGFORE_API argfore_status argfore_variant_generate(const char* profile,
                                                    const char* band,
                                                    uint64_t seed,
                                                    const char* question,
                                                    const char* templates_path,
                                                    char** debate_json);

/* Forecast record datasets. */
ARGFORE_API argfore_status argfore_dataset_load(const char* path,
                                                argfore_dataset** out);
ARGFORE_API argfore_status argfore_dataset_parse(const char* json,
                                                 argfore_dataset** out);
ARGFORE_API void argfore_dataset_free(argfore_dataset* ds);
ARGFORE_API size_t argfore_dataset_size(const argfore_dataset* ds);
/* Either output may be NULL. */
ARGFORE_API argfore_status argfore_dataset_analyze(const argfore_dataset* ds,
                                                   const argfore_thresholds* cfg,
                                                   const char* label,
                                                   char** report_json,
                                                   char** report_table);

/* Statistics. */
ARGFORE_API argfore_status argfore_mcnemar(uint64_t yy, uint64_t yn,
                                           uint64_t ny, uint64_t nn,
                                           double* chi2, double* p);
ARGFORE_API argfore_status argfore_ttest(double mean_a, double sd_a,
                                         uint64_t n_a, double mean_b,
                                         double sd_b, uint64_t n_b, double* t,
                                         double* df, double* p);
/* counts_json: [{"profile": "vdb", "aligned": n, "not_aligned": n}, ...] */
ARGFORE_API argfore_status argfore_complexity_means(const char* counts_json,
                                                    char** out);

/* Debate service. An empty or NULL data_dir keeps state in memory. */
ARGFORE_API argfore_status argfore_server_create(const char* data_dir,
                                                 double default_epsilon,
                                                 argfore_server** out);
/* port 0 picks an ephemeral port; the bound port is written to *bound. */
ARGFORE_API argfore_status argfore_server_bind(argfore_server* server,
                                               const char* host, int port,
                                               int* bound);
/* Blocks until argfore_server_stop() is called from another thread. */
ARGFORE_API argfore_status argfore_server_serve(argfore_server* server);
ARGFORE_API argfore_status argfore_server_stop(argfore_server* server);
ARGFORE_API void argfore_server_free(argfore_server* server);

#ifdef __cplusplus
}
#endif

#endif /* ARGFORE_H_ */
