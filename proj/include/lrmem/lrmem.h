/*
 * lrmem C API.
 *
 * Multivariate long-memory estimation: VARFIMA(0,d,0) simulation, periodogram
 * family spectral estimates, Gaussian semiparametric estimation of d and the
 * Monte Carlo harness. All objects are opaque handles released with the
 * matching *_free function. Every fallible call returns an lrmem_status; on
 * failure lrmem_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * lrmem_string_free.
 */
#ifndef LRMEM_H
#define LRMEM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LRMEM_BUILDING_LIBRARY)
#    define LRMEM_API __declspec(dllexport)
#  else
#    define LRMEM_API __declspec(dllimport)
#  endif
#else
#  define LRMEM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lrmem_status {
  LRMEM_OK = 0,
  LRMEM_E_IO = 1,               /* file could not be read or written */
  LRMEM_E_INVALID_ARGUMENT = 2, /* bad flag, option or configuration */
  LRMEM_E_DATA = 3,             /* malformed or non-finite input data */
  LRMEM_E_NUMERIC = 4,          /* a numerical step failed */
  LRMEM_E_INTERNAL = 5
} lrmem_status;

typedef struct lrmem_series lrmem_series;
typedef struct lrmem_spectrum lrmem_spectrum;
typedef struct lrmem_estimate lrmem_estimate;
typedef struct lrmem_mc_grid lrmem_mc_grid;
typedef struct lrmem_mc_result lrmem_mc_result;

/* Message for the last failed call on this thread ("" if none). */
LRMEM_API const char* lrmem_last_error(void);
LRMEM_API void lrmem_string_free(char* s);
LRMEM_API const char* lrmem_version(void);

/* ---- series ------------------------------------------------------------ */

/* `values` is row-major n x q. */
LRMEM_API lrmem_status lrmem_series_create(const double* values, size_t n, size_t q, lrmem_series** out);
LRMEM_API lrmem_status lrmem_series_read_csv(const char* path, lrmem_series** out);
LRMEM_API lrmem_status lrmem_series_parse_csv(const char* text, size_t len, lrmem_series** out);
LRMEM_API lrmem_status lrmem_series_write_csv(const lrmem_series* s, const char* path);
LRMEM_API size_t lrmem_series_rows(const lrmem_series* s);
LRMEM_API size_t lrmem_series_cols(const lrmem_series* s);
/* Copies n*q values, row-major, into `out` (capacity `len`). */
LRMEM_API lrmem_status lrmem_series_values(const lrmem_series* s, double* out, size_t len);
LRMEM_API void lrmem_series_free(lrmem_series* s);

/* ---- simulation --------------------------------------------------------- */

typedef struct lrmem_sim_options {
  size_t q;
  const double* d;    /* q memory parameters in (-1/2, 1/2) */
  const double* corr; /* q x q row-major innovation correlation */
  size_t n;
  size_t truncation;  /* number of MA coefficients, e.g. 50000 */
  uint64_t seed;
} lrmem_sim_options;

LRMEM_API lrmem_status lrmem_simulate(const lrmem_sim_options* opts, lrmem_series** out);

/* ---- spectral estimates -------------------------------------------------- */

typedef enum lrmem_spectrum_kind {
  LRMEM_SPECTRUM_PERIODOGRAM = 0,
  LRMEM_SPECTRUM_TAPERED = 1, /* cosine-bell taper */
  LRMEM_SPECTRUM_SMOOTHED = 2 /* Bartlett window; ell = 0 means no smoothing */
} lrmem_spectrum_kind;

typedef struct lrmem_spectrum_options {
  lrmem_spectrum_kind kind;
  size_t m;       /* number of frequencies; 0 => floor(n^alpha) */
  double alpha;
  size_t ell;     /* smoothing half-width; used when use_beta == 0 */
  double beta;    /* ell = floor(n^beta) when use_beta != 0 */
  int use_beta;
  int exclude_minus_j;
  int keep_mean;  /* nonzero: skip subtracting the sample mean */
} lrmem_spectrum_options;

LRMEM_API lrmem_status lrmem_spectrum_compute(const lrmem_series* s, const lrmem_spectrum_options* opts,
                                              lrmem_spectrum** out);
LRMEM_API size_t lrmem_spectrum_m(const lrmem_spectrum* sp);
LRMEM_API size_t lrmem_spectrum_dim(const lrmem_spectrum* sp);
/* Matrix j (1-based) as q*q interleaved (re, im) pairs, row-major. */
LRMEM_API lrmem_status lrmem_spectrum_matrix(const lrmem_spectrum* sp, size_t j, double* out, size_t len);
/* CSV: j, lambda, then re/im of each entry in row-major order. */
LRMEM_API lrmem_status lrmem_spectrum_to_csv(const lrmem_spectrum* sp, char** out);
LRMEM_API void lrmem_spectrum_free(lrmem_spectrum* sp);

/* ---- estimation ---------------------------------------------------------- */

typedef enum lrmem_method {
  LRMEM_METHOD_SH = 0,      /* ordinary periodogram */
  LRMEM_METHOD_TSH = 1,     /* cosine-bell tapered periodogram */
  LRMEM_METHOD_SSH = 2,     /* smoothed periodogram, all terms */
  LRMEM_METHOD_SSH_STAR = 3 /* smoothed periodogram, k = -j term excluded */
} lrmem_method;

typedef struct lrmem_estimate_options {
  lrmem_method method;
  double alpha; /* m = floor(n^alpha) unless m != 0 */
  size_t m;
  double beta;  /* smoothed methods: ell = floor(n^beta) */
  double eps1;  /* admissible box [-1/2 + eps1, 1/2 - eps2] */
  double eps2;
  int keep_mean; /* nonzero: skip subtracting the sample mean */
  int real_cross_spectrum; /* nonzero: use Re f_n in G_hat */
} lrmem_estimate_options;

/* Defaults: Sh, alpha 0.85, beta 0.9, eps 0.001, sample mean removed. */
LRMEM_API void lrmem_estimate_options_init(lrmem_estimate_options* opts);
LRMEM_API lrmem_status lrmem_method_parse(const char* name, lrmem_method* out);

LRMEM_API lrmem_status lrmem_estimate_run(const lrmem_series* s, const lrmem_estimate_options* opts,
                                          lrmem_estimate** out);
LRMEM_API size_t lrmem_estimate_dim(const lrmem_estimate* e);
LRMEM_API lrmem_status lrmem_estimate_d_hat(const lrmem_estimate* e, double* out, size_t len);
LRMEM_API lrmem_status lrmem_estimate_se(const lrmem_estimate* e, double* out, size_t len);
/* q x q row-major. */
LRMEM_API lrmem_status lrmem_estimate_g_hat(const lrmem_estimate* e, double* out, size_t len);
LRMEM_API double lrmem_estimate_objective(const lrmem_estimate* e);
LRMEM_API size_t lrmem_estimate_m(const lrmem_estimate* e);
LRMEM_API int lrmem_estimate_converged(const lrmem_estimate* e);
LRMEM_API int lrmem_estimate_iterations(const lrmem_estimate* e);
/* JSON record with keys d_hat, se, g_hat, objective_value, m, method,
 * converged, iterations. Fails with LRMEM_E_NUMERIC on non-finite values. */
LRMEM_API lrmem_status lrmem_estimate_to_json(const lrmem_estimate* e, char** out);
LRMEM_API void lrmem_estimate_free(lrmem_estimate* e);

/* ---- Monte Carlo --------------------------------------------------------- */

LRMEM_API lrmem_status lrmem_mc_grid_default(lrmem_mc_grid** out);
LRMEM_API lrmem_status lrmem_mc_grid_from_json(const char* text, size_t len, lrmem_mc_grid** out);
LRMEM_API lrmem_status lrmem_mc_grid_set_replications(lrmem_mc_grid* g, size_t replications);
LRMEM_API size_t lrmem_mc_grid_cell_count(const lrmem_mc_grid* g);
LRMEM_API void lrmem_mc_grid_free(lrmem_mc_grid* g);

LRMEM_API lrmem_status lrmem_mc_run(const lrmem_mc_grid* g, size_t threads, lrmem_mc_result** out);
LRMEM_API size_t lrmem_mc_result_cell_count(const lrmem_mc_result* r);
LRMEM_API lrmem_status lrmem_mc_result_cell_label(const lrmem_mc_result* r, size_t cell, char** out);
LRMEM_API lrmem_status lrmem_mc_result_table_csv(const lrmem_mc_result* r, char** out);
LRMEM_API lrmem_status lrmem_mc_result_raw_csv(const lrmem_mc_result* r, size_t cell, char** out);
LRMEM_API void lrmem_mc_result_free(lrmem_mc_result* r);

/* Writes `len` bytes of `text` to `path`. */
LRMEM_API lrmem_status lrmem_write_file(const char* path, const char* text, size_t len);

#ifdef __cplusplus
}
#endif

#endif /* LRMEM_H */
