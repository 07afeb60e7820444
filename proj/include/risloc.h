// SPDX-License-Identifier: Apache-2.0
//
// risloc: simulator and estimators for RIS-assisted device-free drone localization
// Copyright (C) 2026 risloc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

/* C interface of the risloc library: scenario configuration, bound and Monte Carlo sweeps,
 * single localization runs. All functions return a status code; on failure a thread-local
 * message is available through risloc_last_error(). Handles are opaque and owned by the caller. */

#ifndef RISLOC_H
#define RISLOC_H

#include <stddef.h>
#include <stdint.h>

#if defined(RISLOC_BUILDING_LIBRARY)
#define RISLOC_API __attribute__((visibility("default")))
#else
#define RISLOC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum risloc_status
{
    RISLOC_OK = 0,
    RISLOC_ERR_CONFIG = 1,           /* malformed or inconsistent configuration */
    RISLOC_ERR_NUMERICAL = 2,        /* singular geometry, unidentifiable bound, divergence */
    RISLOC_ERR_INVALID_ARGUMENT = 3, /* null handle, out-of-range index */
    RISLOC_ERR_IO = 4                /* output file could not be written */
} risloc_status;

typedef struct risloc_config risloc_config;
typedef struct risloc_sweep risloc_sweep;

typedef struct risloc_sweep_row
{
    double snr_db;
    int K;
    double zeta;
    int ris_enabled;
    double peb_m;
    int has_rmse; /* 0 for bound-only rows */
    double rmse_m; /* NaN when every trial failed */
    int trials;
    double mean_iterations;
    int failures;
} risloc_sweep_row;

typedef struct risloc_single_result
{
    double snr_db;
    int K;
    double p_hat[3];      /* estimated drone position [m] */
    double error_m;       /* distance to the true position */
    double peb_m;         /* bound at the same point */
    double angles_deg[6]; /* az/el of the BS, RIS and UE links */
    int iterations;       /* CGD iterations of the best restart */
    int best_restart;
} risloc_single_result;

typedef void (*risloc_progress_fn)(const risloc_sweep_row *row, void *user);
typedef void (*risloc_log_fn)(const char *message);

RISLOC_API const char *risloc_version(void);
RISLOC_API const char *risloc_status_string(risloc_status status);
/* Message of the last failed call on this thread, "" if none */
RISLOC_API const char *risloc_last_error(void);
/* Route warnings (default: standard error); NULL silences them */
RISLOC_API void risloc_set_log_handler(risloc_log_fn fn);

RISLOC_API risloc_status risloc_config_default(risloc_config **out);
RISLOC_API risloc_status risloc_config_load_file(const char *path, risloc_config **out);
RISLOC_API risloc_status risloc_config_load_string(const char *json, risloc_config **out);
RISLOC_API void risloc_config_free(risloc_config *cfg);

RISLOC_API risloc_status risloc_config_set_seed(risloc_config *cfg, uint64_t seed);
RISLOC_API risloc_status risloc_config_set_trials(risloc_config *cfg, int trials);
RISLOC_API risloc_status risloc_config_set_threads(risloc_config *cfg, int threads);
RISLOC_API risloc_status risloc_config_set_ris_enabled(risloc_config *cfg, int enabled);
RISLOC_API risloc_status risloc_config_set_snr_list(risloc_config *cfg, const double *snr_db, size_t n);
RISLOC_API risloc_status risloc_config_set_k_list(risloc_config *cfg, const int *k, size_t n);
RISLOC_API risloc_status risloc_config_set_zeta_list(risloc_config *cfg, const double *zeta, size_t n);
/* Parses "a:b:step" or a single value */
RISLOC_API risloc_status risloc_config_set_snr_range(risloc_config *cfg, const char *spec);

RISLOC_API risloc_status risloc_run_crlb_sweep(const risloc_config *cfg, risloc_sweep **out);
/* progress may be NULL; it is called once per finished grid point */
RISLOC_API risloc_status risloc_run_rmse_sweep(const risloc_config *cfg, risloc_progress_fn progress, void *user,
                                               risloc_sweep **out);
RISLOC_API size_t risloc_sweep_row_count(const risloc_sweep *sweep);
RISLOC_API risloc_status risloc_sweep_get_row(const risloc_sweep *sweep, size_t index, risloc_sweep_row *out);
/* path NULL or "-" writes to standard output */
RISLOC_API risloc_status risloc_sweep_write_csv(const risloc_sweep *sweep, const char *path);
RISLOC_API void risloc_sweep_free(risloc_sweep *sweep);

RISLOC_API risloc_status risloc_single_run(const risloc_config *cfg, uint64_t seed, risloc_single_result *out);
RISLOC_API risloc_status risloc_peb(const risloc_config *cfg, double snr_db, int K, double zeta, int ris_enabled,
                                    double *out_m);

#ifdef __cplusplus
}
#endif

#endif
