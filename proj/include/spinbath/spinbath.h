/*
 * Copyright 2026 The spinbath Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of the spin-bath cooling simulator.
 *
 * Every function that can fail returns an sb_status. On failure the message
 * is available from sb_last_error() on the calling thread until the next
 * failing call. Handles are opaque and owned by the caller; release them
 * with the matching *_free function. Free functions accept NULL.
 */

#ifndef SPINBATH_SPINBATH_H
#define SPINBATH_SPINBATH_H

#include <stddef.h>
#include <stdint.h>

#if defined(SPINBATH_BUILDING_LIBRARY)
#define SB_API __attribute__((visibility("default")))
#else
#define SB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sb_status {
  SB_OK = 0,
  SB_ERR_ARGUMENT = 1,
  SB_ERR_DEGENERATE = 2,
  SB_ERR_RESOURCE = 3,
  SB_ERR_CONFIG = 4,
  SB_ERR_INTEGRITY = 5,
  SB_ERR_CONTRACT = 6,
  SB_ERR_IO = 7,
  SB_ERR_VALIDATION = 8,
  SB_ERR_NULL = 9,
  SB_ERR_INTERNAL = 10
} sb_status;

typedef struct sb_bath sb_bath;
typedef struct sb_record sb_record;
typedef struct sb_table sb_table;
typedef struct sb_config sb_config;

SB_API const char* sb_version(void);
SB_API const char* sb_status_name(sb_status status);
/* Message of the last failure on this thread, "" if none. */
SB_API const char* sb_last_error(void);

/* ---- Bath specification ------------------------------------------------ */

/* gx and gz have n entries; j has n-1 entries or is NULL. */
SB_API sb_status sb_bath_create(int n, double omega_larmor, const double* gx, const double* gz, const double* j,
                                sb_bath** out);
/* Couplings drawn with |g| in (0, range_ratio * omega_larmor] and a uniform
 * angle in the x-z plane. */
SB_API sb_status sb_bath_sample(int n, double omega_larmor, double range_ratio, uint64_t seed, sb_bath** out);
SB_API int sb_bath_size(const sb_bath* bath);
/* Copies n couplings into gx and gz; either may be NULL. */
SB_API sb_status sb_bath_couplings(const sb_bath* bath, double* gx, double* gz);
SB_API void sb_bath_free(sb_bath* bath);

/* ---- Closed forms ------------------------------------------------------ */

SB_API sb_status sb_closed_form_purity(int n, double* out);
SB_API sb_status sb_dicke_multiplicity(int n, int two_i, uint64_t* out);

/* ---- Protocol runs ----------------------------------------------------- */

typedef struct sb_run_params {
  int cycles;
  double tau_res;        /* <= 0 selects pi / (2 g_perp) */
  double tau_disp;       /* <= 0 selects 2 pi / g_par (ADRT only) */
  double jitter;         /* ADRT only, in [0, 1) */
  uint64_t seed;         /* jitter seed */
  double reset_fidelity; /* in [0, 1] */
} sb_run_params;

SB_API void sb_run_params_init(sb_run_params* params);

SB_API sb_status sb_run_drt(const sb_bath* bath, const sb_run_params* params, sb_record** out);
SB_API sb_status sb_run_adrt(const sb_bath* bath, const sb_run_params* params, sb_record** out);
/* Needs a bath created with chain couplings j. */
SB_API sb_status sb_run_interacting(const sb_bath* bath, const sb_run_params* params, sb_record** out);

SB_API size_t sb_record_rows(const sb_record* record);
/* Any output pointer may be NULL. Row 0 is the initial state. */
SB_API sb_status sb_record_row(const sb_record* record, size_t row, int* cycle, double* elapsed, double* purity,
                               double* polarization);
/* 1 if the run finished without an integrity failure. */
SB_API int sb_record_valid(const sb_record* record);
SB_API void sb_record_free(sb_record* record);

/* ---- Scenario tables --------------------------------------------------- */

SB_API sb_status sb_scenario_fig1(int n_max_exact, int n_max_formula, sb_table** out);
SB_API sb_status sb_scenario_fig2b(uint64_t seed, int cycles, sb_table** out);
SB_API sb_status sb_scenario_fig3(const double* alphas, size_t count, int cycles, sb_table** out);

SB_API size_t sb_table_rows(const sb_table* table);
SB_API size_t sb_table_columns(const sb_table* table);
SB_API const char* sb_table_column_name(const sb_table* table, size_t column);
/* *present is 0 for an empty cell. */
SB_API sb_status sb_table_value(const sb_table* table, size_t row, size_t column, double* value, int* present);
SB_API const char* sb_table_scenario(const sb_table* table);
/* Writes CSV to path, or to standard output when path is NULL. */
SB_API sb_status sb_table_write(const sb_table* table, const char* path);
SB_API void sb_table_free(sb_table* table);

/* ---- Configuration files ----------------------------------------------- */

SB_API sb_status sb_config_load(const char* path, sb_config** out);
SB_API sb_status sb_config_set_seed(sb_config* config, uint64_t seed);
SB_API const char* sb_config_scenario(const sb_config* config);
/* Output path from the file, or NULL if none was given. */
SB_API const char* sb_config_output(const sb_config* config);
SB_API sb_status sb_config_run(const sb_config* config, sb_table** out);
SB_API void sb_config_free(sb_config* config);

/* ---- Invariant suite --------------------------------------------------- */

/* *report receives a malloc'd text table (release with sb_string_free).
 * Returns SB_ERR_VALIDATION if any check failed. */
SB_API sb_status sb_validate(char** report);
SB_API void sb_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SPINBATH_SPINBATH_H */
