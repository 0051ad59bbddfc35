/* Copyright 2026 The spinalg Authors
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

/* C interface of the spinalg shared library. All objects are opaque handles
 * created and released through this API; every fallible call returns a
 * spinalg_status and leaves a human-readable message retrievable through
 * spinalg_last_error() on the calling thread. */

#ifndef SPINALG_H
#define SPINALG_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spinalg_status {
  SPINALG_OK = 0,
  SPINALG_ERR_INVALID_ARGUMENT = 1,
  SPINALG_ERR_CONFIG = 2,
  SPINALG_ERR_NUMERIC = 3,
  SPINALG_ERR_VERIFY = 4,
  SPINALG_ERR_IO = 5,
  SPINALG_ERR_CEILING = 6,
  SPINALG_ERR_INTERNAL = 7
} spinalg_status;

/* Library semantic version, e.g. "0.1.0". */
const char* spinalg_version(void);

/* Message of the most recent failure on this thread; never NULL. */
const char* spinalg_last_error(void);

/* ---- collective operator algebra ------------------------------------- */

typedef struct spinalg_algebra spinalg_algebra;

/* Basis and structure constants for `nuclei` spin-1/2 nuclei. */
spinalg_status spinalg_algebra_create(int nuclei, spinalg_algebra** out);
void spinalg_algebra_free(spinalg_algebra* algebra);

/* Basis dimension 4^n - 1, or -1 on a NULL handle. */
int64_t spinalg_algebra_dimension(const spinalg_algebra* algebra);

/* Canonical name of basis element `index`, written into buffer (NUL
 * terminated, truncated to capacity). */
spinalg_status spinalg_algebra_name(const spinalg_algebra* algebra,
                                    int64_t index, char* buffer,
                                    int64_t capacity);

/* Commutator [B_j, B_k] = i * sum_l coeff_l B_l. Writes up to `capacity`
 * terms; *count_out receives the true term count. */
spinalg_status spinalg_algebra_bracket(const spinalg_algebra* algebra,
                                       int64_t j, int64_t k,
                                       int64_t* indices_out,
                                       double* coeffs_out, int64_t capacity,
                                       int64_t* count_out);

/* Writes the structure-table dump to `path`. Optional outputs receive the
 * line and term counts. */
spinalg_status spinalg_algebra_write_table(const spinalg_algebra* algebra,
                                           const char* path,
                                           int64_t* lines_out,
                                           int64_t* terms_out);

/* ---- run configuration ------------------------------------------------ */

typedef struct spinalg_config spinalg_config;

spinalg_status spinalg_config_load(const char* path, spinalg_config** out);
spinalg_status spinalg_config_parse(const char* json_text,
                                    spinalg_config** out);
void spinalg_config_free(spinalg_config* config);
int spinalg_config_nuclei(const spinalg_config* config);

/* ---- states ------------------------------------------------------------ */

typedef struct spinalg_state spinalg_state;

/* Thermal initial condition of the configured system (the config's thermal
 * mode applies). */
spinalg_status spinalg_thermal_state(const spinalg_config* config,
                                     spinalg_state** out);
void spinalg_state_free(spinalg_state* state);
int64_t spinalg_state_dimension(const spinalg_state* state);
spinalg_status spinalg_state_copy_values(const spinalg_state* state,
                                         double* buffer, int64_t capacity);

/* ---- pipelines ---------------------------------------------------------- */

/* Full simulation: initial state, sequence, acquisition, spectrum. Writes
 * trajectory.csv, fid.csv, spectrum.csv and peaks.json into out_dir. */
spinalg_status spinalg_simulate(const spinalg_config* config,
                                const char* out_dir);

typedef struct spinalg_verify_report {
  double max_deviation;
  double tolerance;
  double worst_time_s;
  int64_t worst_index;
  char worst_observable[64];
  int passed;
} spinalg_verify_report;

/* Classical-versus-density-matrix differential run. Returns
 * SPINALG_ERR_VERIFY when the deviation exceeds the tolerance; the report is
 * filled in either way. */
spinalg_status spinalg_verify(const spinalg_config* config, double horizon_s,
                              int samples, double tolerance,
                              spinalg_verify_report* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPINALG_H */
