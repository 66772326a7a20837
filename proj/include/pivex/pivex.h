/*
 * Copyright 2026-present the pivex authors
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
 * C interface to libpivex: pivot-pair partitioning and exclusion for exact
 * metric range search.
 *
 * Conventions:
 *  - every fallible call returns pivex_status; PIVEX_OK is 0.
 *  - on failure, pivex_last_error() returns a message for the calling
 *    thread, valid until that thread's next failing call.
 *  - objects are opaque handles, created by *_create / *_load / ... and
 *    released by the matching *_free (which accepts NULL).
 *  - metric names: "euclidean", "cosine", "js", "tri", "sqrt:<inner>".
 */

#ifndef PIVEX_PIVEX_H
#define PIVEX_PIVEX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define PIVEX_API __declspec(dllexport)
#else
#  define PIVEX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pivex_status {
  PIVEX_OK = 0,
  PIVEX_ERR_INVALID_ARGUMENT = 1,
  PIVEX_ERR_DIMENSION_MISMATCH = 2,
  PIVEX_ERR_DOMAIN = 3,
  PIVEX_ERR_DEGENERATE_PIVOTS = 4,
  PIVEX_ERR_IO = 5,
  PIVEX_ERR_FORMAT = 6,
  PIVEX_ERR_INTERNAL = 99
} pivex_status;

PIVEX_API const char *pivex_version(void);
PIVEX_API const char *pivex_last_error(void);
PIVEX_API const char *pivex_status_string(pivex_status status);

/* ---- metrics ---------------------------------------------------------- */

/* Writes the canonical form of `metric`; fails if it needs more than `cap`
 * bytes including the NUL. */
PIVEX_API pivex_status pivex_metric_canonical(const char *metric, char *buf, size_t cap);
PIVEX_API pivex_status pivex_distance(const char *metric, const double *a, const double *b,
                                      size_t dim, double *out);

/* ---- datasets --------------------------------------------------------- */

typedef struct pivex_dataset pivex_dataset;

/* Copies count*dim row-major values. */
PIVEX_API pivex_status pivex_dataset_create(const double *values, size_t dim, size_t count,
                                            const char *metric, pivex_dataset **out);
/* Uniform on [0,1]^dim; rows are L1-normalised for js/tri. */
PIVEX_API pivex_status pivex_dataset_generate_uniform(size_t dim, size_t count, uint64_t seed,
                                                      const char *metric, pivex_dataset **out);
PIVEX_API pivex_status pivex_dataset_load(const char *path, const char *metric,
                                          pivex_dataset **out);
PIVEX_API pivex_status pivex_dataset_save(const pivex_dataset *ds, const char *path);
PIVEX_API size_t pivex_dataset_dim(const pivex_dataset *ds);
PIVEX_API size_t pivex_dataset_count(const pivex_dataset *ds);
/* Pointer to row i (dim values), or NULL if out of range. Owned by ds. */
PIVEX_API const double *pivex_dataset_row(const pivex_dataset *ds, size_t i);
PIVEX_API void pivex_dataset_free(pivex_dataset *ds);

/* Distance from q to its k-th nearest row. */
PIVEX_API pivex_status pivex_calibrate_threshold(const pivex_dataset *ds, const double *q,
                                                 size_t dim, size_t k, double *out);
PIVEX_API pivex_status pivex_mean_nn_distance(const pivex_dataset *ds, double *out);

/* ---- pivot-plane bounds ----------------------------------------------- */

typedef struct pivex_plane_point {
  double x;
  double y;
} pivex_plane_point;

/* a = d(q,p0), b = d(q,p1), c = d(s,p0), d = d(s,p1), k = d(p0,p1). */
typedef struct pivex_quad {
  double a, b, c, d, k;
} pivex_quad;

PIVEX_API pivex_status pivex_project_to_plane(double dp0, double dp1, double k,
                                              pivex_plane_point *out);
PIVEX_API pivex_status pivex_ptolemaic_lower_bound(const pivex_quad *qd, double *out);
PIVEX_API pivex_status pivex_fourpoint_lower_bound(const pivex_quad *qd, double *out);

/* "id,x,y" CSV of every row projected against rows i0, i1. */
PIVEX_API pivex_status pivex_project_dataset_csv(const pivex_dataset *ds, size_t i0, size_t i1,
                                                 const char *path);
/* "curve,x,y" CSV of the Ptolemaic S1 boundary and its two query loci. */
PIVEX_API pivex_status pivex_boundaries_csv(double k, double tau, double t, double y_max,
                                            const char *path);

/* ---- partitions and queries ------------------------------------------- */

typedef enum pivex_mechanism_kind {
  PIVEX_BALL_IN = 0,
  PIVEX_BALL_OUT = 1,
  PIVEX_HYPERPLANE = 2,
  PIVEX_HILBERT = 3,
  PIVEX_PTOLEMAIC = 4,
  PIVEX_COMBINED = 5
} pivex_mechanism_kind;

typedef struct pivex_mechanism {
  pivex_mechanism_kind kind;
  double param; /* ball radius M, or tau (>= 0.5) */
} pivex_mechanism;

PIVEX_API pivex_status pivex_mechanism_parse(const char *name, pivex_mechanism_kind *out);

/* Class tags, as bit positions in the masks below. */
enum {
  PIVEX_CLASS_LEFT = 1u << 0,
  PIVEX_CLASS_RIGHT = 1u << 1,
  PIVEX_CLASS_INSIDE = 1u << 2,
  PIVEX_CLASS_OUTSIDE = 1u << 3,
  PIVEX_CLASS_S1 = 1u << 4,
  PIVEX_CLASS_S2 = 1u << 5,
  PIVEX_CLASS_S3 = 1u << 6
};

PIVEX_API pivex_status pivex_classify_point(double dp0, double dp1, double k,
                                            pivex_mechanism mech, unsigned *class_mask);
/* a = d(q,p0), b = d(q,p1), t = threshold. */
PIVEX_API pivex_status pivex_excluded_classes(pivex_mechanism mech, double k, double a, double b,
                                              double t, unsigned *class_mask);

typedef struct pivex_index pivex_index;

/* Partitions `data` for every pair of rows of `refs` (refs may be NULL to
 * use `data` itself, with `pivot_ids` selecting the pivots). */
PIVEX_API pivex_status pivex_index_build(const pivex_dataset *data, const pivex_dataset *refs,
                                         const size_t *pivot_ids, size_t n_pivots,
                                         pivex_mechanism mech, pivex_index **out);
PIVEX_API size_t pivex_index_partition_count(const pivex_index *index);

typedef struct pivex_query_stats {
  size_t n_results;
  size_t distance_calls;
  size_t excluded_count;
} pivex_query_stats;

/* Up to `cap` result ids are written to `ids`; stats->n_results is the
 * full count. */
PIVEX_API pivex_status pivex_index_range_query(const pivex_index *index, const double *q,
                                               size_t dim, double t, size_t *ids, size_t cap,
                                               pivex_query_stats *stats);
PIVEX_API void pivex_index_free(pivex_index *index);

PIVEX_API pivex_status pivex_brute_force(const pivex_dataset *ds, const double *q, size_t dim,
                                         double t, size_t *ids, size_t cap, size_t *n_results);

/* ---- experiments ------------------------------------------------------ */

typedef struct pivex_experiment pivex_experiment;
typedef struct pivex_report pivex_report;

PIVEX_API pivex_status pivex_experiment_create(pivex_experiment **out);
/* Applies one key=value setting (dims, n_data, n_queries, pivots, taus, tau,
 * mechanisms, seed, knn_k, threshold, pivots_in_dataset, workers, metric). */
PIVEX_API pivex_status pivex_experiment_set(pivex_experiment *cfg, const char *key,
                                            const char *value);
/* Applies "key=value" lines. */
PIVEX_API pivex_status pivex_experiment_load_text(pivex_experiment *cfg, const char *text);
/* Canonical key=value snapshot; pointer valid until the next call on cfg. */
PIVEX_API const char *pivex_experiment_snapshot(pivex_experiment *cfg);
PIVEX_API pivex_status pivex_experiment_validate(const pivex_experiment *cfg);
PIVEX_API void pivex_experiment_free(pivex_experiment *cfg);

PIVEX_API pivex_status pivex_sweep_tau(const pivex_experiment *cfg, pivex_report **out);
PIVEX_API pivex_status pivex_sweep_dimensions(const pivex_experiment *cfg, pivex_report **out);

typedef struct pivex_report_row {
  size_t dim;
  pivex_mechanism mechanism;
  size_t n_pivots;
  size_t n_queries;
  size_t n_points;
  uint64_t total_excluded;
  uint64_t total_distance_calls;
  double mean_exclusion_rate;
  double mean_distance_calls;
} pivex_report_row;

PIVEX_API size_t pivex_report_row_count(const pivex_report *report);
PIVEX_API pivex_status pivex_report_row_at(const pivex_report *report, size_t i,
                                           pivex_report_row *out);
/* Best (sweep_tau) or applied (sweep_dimensions) tau for `dim`. */
PIVEX_API pivex_status pivex_report_best_tau(const pivex_report *report, size_t dim,
                                             double *tau);
PIVEX_API pivex_status pivex_report_write_csv(const pivex_report *report, const char *path);
PIVEX_API void pivex_report_free(pivex_report *report);

/* ---- verification ----------------------------------------------------- */

typedef struct pivex_suite_result {
  char name[48];
  uint64_t checks;
  uint64_t violations;
  char first_violation[256];
} pivex_suite_result;

/* `metrics` is a comma separated list (NULL: "euclidean,sqrt:euclidean").
 * Writes up to `cap` suite results; *n_suites receives the total. */
PIVEX_API pivex_status pivex_verify(const char *metrics, uint64_t cases, uint64_t seed,
                                    pivex_suite_result *results, size_t cap, size_t *n_suites);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PIVEX_PIVEX_H */
