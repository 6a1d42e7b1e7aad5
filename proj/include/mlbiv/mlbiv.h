/* C interface to libmlbiv: evaluation of
 *   E_{alpha,beta}(x, y; mu) = sum_{n,m>=0} x^n y^m / Gamma(n alpha + m beta + mu).
 *
 * Every function that can fail returns an mlbiv_status; on failure
 * mlbiv_last_error() describes it (thread-local, valid until the next call on
 * the same thread). Handles are opaque and owned by the caller. */
#ifndef MLBIV_MLBIV_H
#define MLBIV_MLBIV_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define MLBIV_API __attribute__((visibility("default")))
#else
#define MLBIV_API
#endif

typedef enum mlbiv_status {
  MLBIV_OK = 0,
  MLBIV_E_INVALID_ARGUMENT = 1,
  MLBIV_E_POLE = 2,
  MLBIV_E_QUADRATURE = 3,
  MLBIV_E_TAIL = 4,
  MLBIV_E_DEGENERATE = 5,
  MLBIV_E_NO_CONTOUR = 6,
  MLBIV_E_PARAMETER_RANGE = 7,
  MLBIV_E_NO_CONVERGENCE = 8,
  MLBIV_E_ORACLE = 9,
  MLBIV_E_ALL_METHODS_FAILED = 10,
  MLBIV_E_IO = 11,
  MLBIV_E_INTERNAL = 12
} mlbiv_status;

typedef enum mlbiv_method {
  MLBIV_METHOD_AUTO = 0,
  MLBIV_METHOD_SERIES = 1,
  MLBIV_METHOD_CONTOUR = 2,
  MLBIV_METHOD_ASYMPTOTIC = 3
} mlbiv_method;

typedef struct mlbiv_params mlbiv_params;
typedef struct mlbiv_result mlbiv_result;
typedef struct mlbiv_sweep mlbiv_sweep;

typedef struct mlbiv_options {
  mlbiv_method method;
  double tol;      /* relative */
  double r_series; /* auto: series up to this max(|x|,|y|) */
  double r_asym;   /* auto: expansion from this min(|x|,|y|) */
} mlbiv_options;

MLBIV_API const char* mlbiv_version(void);
MLBIV_API const char* mlbiv_last_error(void);
MLBIV_API const char* mlbiv_status_name(mlbiv_status status);

MLBIV_API mlbiv_options mlbiv_default_options(void);
MLBIV_API mlbiv_status mlbiv_method_parse(const char* name, mlbiv_method* out);
MLBIV_API const char* mlbiv_method_name(mlbiv_method method);

/* alpha, beta > 0; mu finite. */
MLBIV_API mlbiv_status mlbiv_params_create(double alpha, double beta, double mu_re, double mu_im,
                                           mlbiv_params** out);
MLBIV_API void mlbiv_params_destroy(mlbiv_params* params);

MLBIV_API mlbiv_status mlbiv_evaluate(const mlbiv_params* params, double x_re, double x_im, double y_re,
                                      double y_im, const mlbiv_options* options, mlbiv_result** out);
MLBIV_API void mlbiv_result_destroy(mlbiv_result* result);
MLBIV_API void mlbiv_result_value(const mlbiv_result* result, double* re, double* im);
MLBIV_API mlbiv_method mlbiv_result_method(const mlbiv_result* result);
MLBIV_API double mlbiv_result_error_estimate(const mlbiv_result* result);
/* Representation case or asymptotic sector; "" for the series. */
MLBIV_API const char* mlbiv_result_region(const mlbiv_result* result);
MLBIV_API size_t mlbiv_result_warning_count(const mlbiv_result* result);
MLBIV_API const char* mlbiv_result_warning(const mlbiv_result* result, size_t index);

/* Sweeps. Keys are those of the key=value configuration format: alpha, beta,
 * mu-re, mu-im, method, tol, format, r-series, r-asym, {x,y}-start,
 * {x,y}-stop, {x,y}-count, {x,y}-arg. */
MLBIV_API mlbiv_status mlbiv_sweep_create(mlbiv_sweep** out);
MLBIV_API void mlbiv_sweep_destroy(mlbiv_sweep* sweep);
MLBIV_API mlbiv_status mlbiv_sweep_set(mlbiv_sweep* sweep, const char* key, const char* value);
MLBIV_API mlbiv_status mlbiv_sweep_load_config(mlbiv_sweep* sweep, const char* path);
MLBIV_API mlbiv_status mlbiv_sweep_run(mlbiv_sweep* sweep);
MLBIV_API size_t mlbiv_sweep_record_count(const mlbiv_sweep* sweep);
MLBIV_API size_t mlbiv_sweep_failed_count(const mlbiv_sweep* sweep);
/* Writes the records of the last run in the configured format; path NULL or
 * "-" means standard output. */
MLBIV_API mlbiv_status mlbiv_sweep_write(const mlbiv_sweep* sweep, const char* path);

MLBIV_API size_t mlbiv_selftest_suite_count(void);
MLBIV_API const char* mlbiv_selftest_suite_name(size_t index);
/* detail receives a one-line summary (truncated to detail_size). */
MLBIV_API mlbiv_status mlbiv_selftest_run(const char* suite, int* passed, double* seconds, char* detail,
                                          size_t detail_size);

#ifdef __cplusplus
}
#endif

#endif
