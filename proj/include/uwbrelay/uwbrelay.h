/* SPDX-License-Identifier: Apache-2.0
 *
 * uwbrelay - capacity bounds for frequency-selective UWB relay channels
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------ */

/* C interface of the uwbrelay shared library.
 *
 * Objects are opaque handles released with the matching *_free function
 * (which accept NULL). Every fallible call returns a uwbr_status; on failure
 * uwbr_last_error() describes the problem. The message is per thread and
 * stays valid until the next failing call on that thread.
 *
 * Rates are in bits per complex sample unless stated otherwise. */

#ifndef UWBRELAY_H
#define UWBRELAY_H

#include <stddef.h>
#include <stdint.h>

#if defined(UWBRELAY_BUILDING_LIBRARY)
#define UWBR_API __attribute__((visibility("default")))
#else
#define UWBR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uwbr_status
{
    UWBR_OK = 0,
    UWBR_ERR_INVALID_ARGUMENT = 1,
    UWBR_ERR_PARSE = 2,
    UWBR_ERR_IO = 3,
    UWBR_ERR_NOT_CONVERGED = 4, /* results are available but flagged */
    UWBR_ERR_INTERNAL = 5
} uwbr_status;

typedef enum uwbr_bound
{
    UWBR_BOUND_PDF = 0,
    UWBR_BOUND_DF = 1,
    UWBR_BOUND_CUTSET = 2,
    UWBR_BOUND_DEGRADED_CAPACITY = 3,
    UWBR_BOUND_REVDEG_CAPACITY = 4,
    UWBR_BOUND_DIRECT = 5
} uwbr_bound;

typedef enum uwbr_objective
{
    UWBR_OBJECTIVE_PDF = 0,
    UWBR_OBJECTIVE_CUTSET = 1,
    UWBR_OBJECTIVE_DEGRADED = 2
} uwbr_objective;

typedef struct uwbr_config uwbr_config;
typedef struct uwbr_report uwbr_report;
typedef struct uwbr_sweep uwbr_sweep;
typedef struct uwbr_instance uwbr_instance;

UWBR_API const char *uwbr_version(void);
UWBR_API const char *uwbr_last_error(void);
UWBR_API const char *uwbr_status_string(uwbr_status status);

/* Configuration. */
UWBR_API uwbr_status uwbr_config_new_default(uwbr_config **out);
UWBR_API uwbr_status uwbr_config_load(const char *path, uwbr_config **out);
UWBR_API uwbr_status uwbr_config_set(uwbr_config *config, const char *key, const char *value);
/* Copies the value and its terminator into buf when it fits; *needed (if not
 * NULL) receives the required size including the terminator. */
UWBR_API uwbr_status uwbr_config_get(const uwbr_config *config, const char *key, char *buf, size_t buf_len,
                                     size_t *needed);
UWBR_API uwbr_status uwbr_config_validate(const uwbr_config *config);
UWBR_API uint64_t uwbr_config_hash(const uwbr_config *config);
UWBR_API void uwbr_config_free(uwbr_config *config);

/* One realization (experiment.trial_index at experiment.d2_m): frequency
 * response CSV and, if taps_path is not NULL, taps CSV. */
UWBR_API uwbr_status uwbr_channel_dump(const uwbr_config *config, const char *response_path, const char *taps_path);

/* All bounds on one seeded instance. Returns UWBR_ERR_NOT_CONVERGED with a
 * valid *out when an optimizer hit its iteration cap. */
UWBR_API uwbr_status uwbr_bounds_run(const uwbr_config *config, uwbr_report **out);
UWBR_API uwbr_status uwbr_report_rate(const uwbr_report *report, uwbr_bound bound, double *rate);
UWBR_API int uwbr_report_degraded_accuracy(const uwbr_report *report);
UWBR_API uwbr_status uwbr_report_write_csv(const uwbr_report *report, const char *path, int bits_per_second);
UWBR_API uwbr_status uwbr_report_write_per_tone_csv(const uwbr_report *report, const char *path);
/* Lambda bisection trace of the partial decode-and-forward optimization. */
UWBR_API uwbr_status uwbr_report_write_trace_csv(const uwbr_report *report, const char *path);
UWBR_API size_t uwbr_report_trace_length(const uwbr_report *report);
UWBR_API uwbr_status uwbr_report_trace_step(const uwbr_report *report, size_t index, double *lambda, double *first,
                                            double *second);
UWBR_API const char *uwbr_report_binding_term(const uwbr_report *report);
UWBR_API void uwbr_report_free(uwbr_report *report);

/* Sweeps over the d2 grid. Same convergence convention as uwbr_bounds_run. */
UWBR_API uwbr_status uwbr_sweep_distance(const uwbr_config *config, uwbr_sweep **out);
UWBR_API uwbr_status uwbr_sweep_rho(const uwbr_config *config, uwbr_sweep **out);
UWBR_API uwbr_status uwbr_sweep_write_csv(const uwbr_sweep *sweep, const char *path, int bits_per_second);
UWBR_API size_t uwbr_sweep_points(const uwbr_sweep *sweep);
UWBR_API size_t uwbr_sweep_series_count(const uwbr_sweep *sweep);
UWBR_API const char *uwbr_sweep_series_name(const uwbr_sweep *sweep, size_t series);
UWBR_API uwbr_status uwbr_sweep_mean(const uwbr_sweep *sweep, size_t series, size_t point, double *mean);
UWBR_API int uwbr_sweep_degraded_accuracy(const uwbr_sweep *sweep);
UWBR_API void uwbr_sweep_free(uwbr_sweep *sweep);

/* Line chart from a sweep CSV file; title may be NULL. */
UWBR_API uwbr_status uwbr_plot_svg_from_csv(const char *csv_path, const char *svg_path, const char *title);

/* Optimizer against the exhaustive grid. */
UWBR_API uwbr_status uwbr_oracle_check(const uwbr_config *config, double *max_deviation, size_t *cases);

/* JSON manifest with the config hash, master seed and produced files. */
UWBR_API uwbr_status uwbr_manifest_write(const uwbr_config *config, const char *path, const char *command,
                                         const char *const *files, size_t n_files, int degraded_accuracy);

/* Direct access on caller-supplied channels. Gains are interleaved
 * (re, im) arrays of 2 * tones doubles; rho may be NULL for zero. */
UWBR_API uwbr_status uwbr_instance_create(size_t tones, const double *g1, const double *g2, const double *g3,
                                          double n_dest, double n_relay, const double *rho, uwbr_instance **out);
/* split, if not NULL, receives 4 * tones doubles: (alpha_bar re, im,
 * beta_bar re, im) per tone. */
UWBR_API uwbr_status uwbr_instance_optimize(const uwbr_instance *inst, double p1, double p2, double p0,
                                            uwbr_objective objective, double *rate, double *split);
UWBR_API uwbr_status uwbr_instance_revdeg_capacity(const uwbr_instance *inst, double p1, double *rate);
UWBR_API uwbr_status uwbr_instance_direct_rate(const uwbr_instance *inst, double power, double *rate);
UWBR_API void uwbr_instance_free(uwbr_instance *inst);

#ifdef __cplusplus
}
#endif

#endif /* UWBRELAY_H */
