/* simpute.h - C interface of the simplex imputation library.
 *
 * All entry points return a simpute_status; SIMPUTE_OK means success and
 * anything else leaves a thread-local message retrievable through
 * simpute_last_error_message(). Tables and results are opaque handles owned
 * by the caller and released with the matching *_free function. Strings
 * returned through char** out-parameters are heap-allocated and must be
 * released with simpute_string_free().
 */

#ifndef SIMPUTE_H
#define SIMPUTE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum simpute_status {
  SIMPUTE_OK = 0,
  SIMPUTE_ERR_INVALID_ARGUMENT,
  SIMPUTE_ERR_DEGENERATE_INPUT,
  SIMPUTE_ERR_NEGATIVE_VALUE,
  SIMPUTE_ERR_DIMENSION_MISMATCH,
  SIMPUTE_ERR_ZERO_IN_LOG_RATIO,
  SIMPUTE_ERR_INSUFFICIENT_DONORS,
  SIMPUTE_ERR_NO_DONORS,
  SIMPUTE_ERR_DEGENERATE_ROW,
  SIMPUTE_ERR_MISSING_SET_EMPTY,
  SIMPUTE_ERR_INCONSISTENT_ROW,
  SIMPUTE_ERR_ALPHA_ZERO_CONFLICT,
  SIMPUTE_ERR_EMPTY_INPUT,
  SIMPUTE_ERR_CV_INFEASIBLE,
  SIMPUTE_ERR_METRIC_ZERO_CONFLICT,
  SIMPUTE_ERR_PARSE,
  SIMPUTE_ERR_IO,
  SIMPUTE_ERR_INVALID_RESOLUTION,
  SIMPUTE_ERR_TOO_FEW_ROWS,
  SIMPUTE_ERR_DEGENERATE_SPEC,
  SIMPUTE_ERR_INTERNAL
} simpute_status;

const char* simpute_version(void);
const char* simpute_status_name(simpute_status status);
/* Message of the last failure on this thread; empty string if none. */
const char* simpute_last_error_message(void);

void simpute_string_free(char* s);

/* ---- tables ---------------------------------------------------------- */

typedef struct simpute_table simpute_table;

typedef struct simpute_csv_options {
  char delimiter;          /* 0 = ',' */
  const char* na_tokens;   /* NULL = "NA|,|NaN"-style default; else
                              pipe-separated list, e.g. "NA||NaN" */
  int header;              /* nonzero = first line is a header (default) */
  int precision;           /* significant digits on output; 0 = 10 */
} simpute_csv_options;

simpute_status simpute_table_read_csv(const char* path,
                                      const simpute_csv_options* options,
                                      simpute_table** out_table,
                                      char** out_warnings_json);
simpute_status simpute_table_write_csv(const simpute_table* table,
                                       const char* path,
                                       const simpute_csv_options* options);
/* Row-major values with an aligned mask (nonzero = observed); mask may be
 * NULL for a fully observed table. names may be NULL. */
simpute_status simpute_table_from_dense(const double* values,
                                        const uint8_t* mask, size_t rows,
                                        size_t cols,
                                        const char* const* column_names,
                                        simpute_table** out_table,
                                        char** out_warnings_json);
size_t simpute_table_rows(const simpute_table* table);
size_t simpute_table_cols(const simpute_table* table);
simpute_status simpute_table_value(const simpute_table* table, size_t row,
                                   size_t col, double* out_value,
                                   int* out_observed);
const char* simpute_table_column_name(const simpute_table* table, size_t col);
void simpute_table_free(simpute_table* table);

/* ---- distance and mean kernels --------------------------------------- */

/* Inputs are closed onto the simplex before evaluation. */
simpute_status simpute_jsd(const double* x, const double* y, size_t d,
                           double* out);
simpute_status simpute_jsd_via_kld(const double* x, const double* y, size_t d,
                                   double* out);
simpute_status simpute_aitchison_distance(const double* x, const double* y,
                                          size_t d, double* out);
/* rows: n x d row-major closed compositions; out: d values. */
simpute_status simpute_frechet_mean(const double* rows, size_t n, size_t d,
                                    double alpha, double* out);

/* ---- imputation ------------------------------------------------------- */

typedef struct simpute_result simpute_result;

typedef enum simpute_baseline {
  SIMPUTE_BASELINE_NONE = 0,
  SIMPUTE_BASELINE_AITCHISON_MEAN,
  SIMPUTE_BASELINE_AITCHISON_MEDIAN
} simpute_baseline;

typedef struct simpute_impute_options {
  int k;                    /* 0 = default (2) */
  double alpha;             /* Frechet power, 1 = arithmetic mean */
  simpute_baseline baseline;
  int adaptive;             /* nonzero = per-pattern CV tuning */
  /* CV settings used when adaptive is set; grids NULL = defaults. */
  const int* k_grid;
  size_t k_grid_len;
  const double* alpha_grid;
  size_t alpha_grid_len;
  int cv_repetitions;       /* 0 = default (50) */
  uint64_t seed;
} simpute_impute_options;

simpute_status simpute_impute(const simpute_table* table,
                              const simpute_impute_options* options,
                              simpute_result** out_result);
const simpute_table* simpute_result_table(const simpute_result* result);
size_t simpute_result_imputed_count(const simpute_result* result);
simpute_status simpute_result_imputed_cell(const simpute_result* result,
                                           size_t index, size_t* out_row,
                                           size_t* out_col, double* out_value);
simpute_status simpute_result_donor_log_json(const simpute_result* result,
                                             char** out_json);
simpute_status simpute_result_warnings_json(const simpute_result* result,
                                            char** out_json);
void simpute_result_free(simpute_result* result);

/* ---- cross-validation tuning ------------------------------------------ */

typedef enum simpute_metric {
  SIMPUTE_METRIC_AUTO = 0, /* jsd iff zeros present */
  SIMPUTE_METRIC_AITCHISON,
  SIMPUTE_METRIC_JSD
} simpute_metric;

typedef struct simpute_cv_options {
  const int* k_grid;        /* NULL = 2..10 */
  size_t k_grid_len;
  const double* alpha_grid; /* NULL = -1..1 (0..1 with zeros) step 0.1 */
  size_t alpha_grid_len;
  int repetitions;          /* 0 = 50 */
  simpute_metric metric;
  uint64_t seed;
  int per_pattern;          /* nonzero = one report per pattern */
} simpute_cv_options;

/* Emits the full tuning report as JSON. */
simpute_status simpute_tune(const simpute_table* table,
                            const simpute_cv_options* options,
                            char** out_report_json);

/* ---- injection and generation ----------------------------------------- */

/* Truth cells are emitted as "row,column,value" CSV. */
simpute_status simpute_inject_mcar(const simpute_table* table,
                                   double row_fraction,
                                   double component_fraction, uint64_t seed,
                                   simpute_table** out_masked,
                                   char** out_truth_csv,
                                   char** out_warnings_json);
simpute_status simpute_inject_mar_sorted(const simpute_table* table,
                                         double row_fraction, uint64_t seed,
                                         simpute_table** out_masked,
                                         char** out_truth_csv,
                                         char** out_warnings_json);
simpute_status simpute_inject_aggregate(const simpute_table* table,
                                        const size_t* group_columns,
                                        size_t group_len, double row_fraction,
                                        uint64_t seed,
                                        simpute_table** out_masked,
                                        char** out_truth_csv,
                                        char** out_warnings_json);
simpute_status simpute_generate_dirichlet(size_t n, size_t d, uint64_t seed,
                                          simpute_table** out_table);

/* ---- benchmark --------------------------------------------------------- */

typedef struct simpute_benchmark_options {
  const size_t* sizes;      /* pairs (n, d), flattened; NULL = 500x10 */
  size_t sizes_len;         /* number of pairs */
  const int* k_grid;        /* NULL = 2..10 */
  size_t k_grid_len;
  int repetitions;          /* 0 = 20 */
  uint64_t seed;
  double row_fraction;      /* 0 = 0.10 */
  double component_fraction;/* 0 = 0.30 */
  int baseline_mean;        /* nonzero = mean aggregation for the baseline;
                               default is the median */
} simpute_benchmark_options;

simpute_status simpute_benchmark(const simpute_benchmark_options* options,
                                 char** out_report_json,
                                 char** out_records_csv);

/* ---- grid emitters ------------------------------------------------------ */

typedef enum simpute_distance_kind {
  SIMPUTE_DISTANCE_AITCHISON = 0,
  SIMPUTE_DISTANCE_JSD
} simpute_distance_kind;

/* Ternary lattice distances from the simplex center as CSV (a,b,c,distance). */
simpute_status simpute_contour_grid_csv(simpute_distance_kind kind,
                                        int resolution, char** out_csv);

/* Frechet-mean path of the table's complete rows over the alpha grid as CSV
 * (alpha, one column per part). alphas NULL = -1..1 step 0.1 (0..1 with
 * zeros present). */
simpute_status simpute_trajectory_csv(const simpute_table* table,
                                      const double* alphas, size_t alphas_len,
                                      char** out_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SIMPUTE_H */
