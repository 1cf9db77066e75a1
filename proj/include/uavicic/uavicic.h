// SPDX-License-Identifier: Apache-2.0
//
// uavicic: sensing-assisted interference coordination for cellular-connected UAVs
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


#ifndef UAVICIC_H
#define UAVICIC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(UAVICIC_BUILDING)
#    define UAVICIC_API __declspec(dllexport)
#  else
#    define UAVICIC_API __declspec(dllimport)
#  endif
#else
#  define UAVICIC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uavicic_status
{
    UAVICIC_OK = 0,
    UAVICIC_ERR_INVALID_ARGUMENT = 1,
    UAVICIC_ERR_DOMAIN = 2,
    UAVICIC_ERR_INFEASIBLE_OCCUPANCY = 3,
    UAVICIC_ERR_INSUFFICIENT_RBS = 4,
    UAVICIC_ERR_IO = 5,
    UAVICIC_ERR_PARSE = 6,
    UAVICIC_ERR_INTERNAL = 7
} uavicic_status;

typedef struct uavicic_config uavicic_config;
typedef struct uavicic_result uavicic_result;

UAVICIC_API const char *uavicic_version(void);

// Message for the last non-OK status returned on the calling thread.
UAVICIC_API const char *uavicic_last_error(void);

// Strings returned through char** out-parameters are owned by the caller.
UAVICIC_API void uavicic_string_free(char *s);

// Configuration ------------------------------------------------------------

UAVICIC_API uavicic_status uavicic_config_create_default(uavicic_config **out);
// name: "fig3a", "fig3b" or "fig3c".
UAVICIC_API uavicic_status uavicic_config_create_preset(const char *name, uavicic_config **out);
// Applies the JSON object's keys on top of `cfg`. Unknown keys are an error
// and leave `cfg` untouched.
UAVICIC_API uavicic_status uavicic_config_merge_json(uavicic_config *cfg, const char *json);
UAVICIC_API uavicic_status uavicic_config_merge_file(uavicic_config *cfg, const char *path);
UAVICIC_API uavicic_status uavicic_config_set_seed(uavicic_config *cfg, uint64_t seed);
UAVICIC_API uavicic_status uavicic_config_set_realizations(uavicic_config *cfg, uint32_t realizations);
// mode: "pure-los" or "faded".
UAVICIC_API uavicic_status uavicic_config_set_mode(uavicic_config *cfg, const char *mode);
UAVICIC_API uavicic_status uavicic_config_set_workers(uavicic_config *cfg, uint32_t workers);
UAVICIC_API uavicic_status uavicic_config_validate(const uavicic_config *cfg);
UAVICIC_API uavicic_status uavicic_config_to_json(const uavicic_config *cfg, char **json_out);
UAVICIC_API void uavicic_config_destroy(uavicic_config *cfg);

// Experiments --------------------------------------------------------------

UAVICIC_API uavicic_status uavicic_run_experiment(const uavicic_config *cfg, uavicic_result **out);
UAVICIC_API size_t uavicic_result_row_count(const uavicic_result *res);
// Numeric columns of one aggregate row; any output pointer may be NULL.
UAVICIC_API uavicic_status uavicic_result_row(const uavicic_result *res, size_t row, const char **scheme,
                                              double *sweep_value, double *mean_rate_bps_hz, double *mean_iul_dbm,
                                              double *max_iul_dbm, uint64_t *n_realizations, double *stderr_rate);
UAVICIC_API uavicic_status uavicic_result_to_csv(const uavicic_result *res, char **csv_out);
UAVICIC_API uavicic_status uavicic_result_write_csv(const uavicic_result *res, const char *path);
UAVICIC_API void uavicic_result_destroy(uavicic_result *res);

// JSON snapshot of realization `index` under `cfg`.
UAVICIC_API uavicic_status uavicic_dump_scenario(const uavicic_config *cfg, uint64_t index, char **json_out);

// Stand-alone primitives ---------------------------------------------------

UAVICIC_API uavicic_status uavicic_worst_case_ratio(double uav_height_m, double bs_height_m, double cell_radius_m,
                                                    double *rho, double *xi_m);
UAVICIC_API uavicic_status uavicic_noise_power_dbm(double density_dbm_hz, double bandwidth_hz, double *out_dbm);

#ifdef __cplusplus
}
#endif

#endif
