#ifndef SCHATTEN_WIDTHS_H
#define SCHATTEN_WIDTHS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SW_API __declspec(dllexport)
#else
#define SW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; the first four double as CLI exit codes. */
typedef enum sw_status {
  SW_OK = 0,
  SW_ERR_USAGE = 1,
  SW_ERR_NUMERICAL = 2,
  SW_ERR_VERIFICATION = 3,
  SW_ERR_INPUT = 4,
  SW_ERR_INTERNAL = 5
} sw_status;

typedef struct sw_matrix sw_matrix;
typedef struct sw_result sw_result;

/* Exponents cross the boundary as doubles; +INFINITY is the infinite exponent. */

SW_API const char* sw_version(void);
/* Message for the last failing call on this thread ("" if none). */
SW_API const char* sw_last_error(void);

/* workers < 1 restores the default (SCHATTEN_WIDTHS_THREADS, else logical cores). */
SW_API sw_status sw_set_threads(int workers);
SW_API int sw_threads(void);

/* Accepts "2", "0.5", "4/3", "inf". */
SW_API sw_status sw_parse_exponent(const char* text, double* out);

/* Matrices */
SW_API sw_status sw_matrix_read_file(const char* path, sw_matrix** out);
/* Row-major order x order entries. */
SW_API sw_status sw_matrix_from_rows(int order, const double* entries, sw_matrix** out);
SW_API void sw_matrix_free(sw_matrix* m);
SW_API int sw_matrix_order(const sw_matrix* m);

SW_API sw_status sw_schatten_norm(const sw_matrix* m, double p, double* out);
/* l_outer over columns of l_inner within each column; transposed swaps rows and columns. */
SW_API sw_status sw_mixed_norm(const sw_matrix* m, double inner, double outer, int transposed,
                               double* out);
SW_API sw_status sw_kappa(int k, int order, long long* out);

/* Results carry CSV (17 significant digits) and JSON renderings plus a
   headline value and, for checks, a verdict. */
SW_API const char* sw_result_csv(const sw_result* r);
SW_API const char* sw_result_json(const sw_result* r);
SW_API double sw_result_value(const sw_result* r);
SW_API int sw_result_passed(const sw_result* r);
SW_API void sw_result_free(sw_result* r);

/* Schatten p, mixed l_p(l_2) and its transpose. Value: the Schatten norm. */
SW_API sw_status sw_norms(const sw_matrix* m, double p, sw_result** out);

typedef struct sw_flat_top_args {
  int order;
  int k;
  int dim; /* 0 means kappa(k) */
  uint64_t seed;
  double tol;
} sw_flat_top_args;
/* Flat-top certificate inside a seeded random subspace. Value: spectral residual. */
SW_API sw_status sw_flat_top(const sw_flat_top_args* args, sw_result** out);

typedef struct sw_gelfand_args {
  double p;
  double q;
  int order;
  int n; /* 0 with profile set */
  int restarts;
  int outer_iters;
  uint64_t seed;
  int profile; /* nonzero: every n = 1..N^2 */
} sw_gelfand_args;
SW_API sw_status sw_gelfand(const sw_gelfand_args* args, sw_result** out);

typedef enum sw_test_set { SW_SET_VASILEVA = 0, SW_SET_AVERAGED = 1 } sw_test_set;
typedef enum sw_target_kind { SW_TARGET_SCHATTEN = 0, SW_TARGET_MIXED = 1 } sw_target_kind;
typedef struct sw_kolmogorov_args {
  sw_test_set set;
  int order;
  int r;       /* averaged set only */
  int samples; /* averaged set: 0 enumerates the group */
  sw_target_kind target_kind;
  double target;
  int n;
  int outer_iters;
  uint64_t seed;
} sw_kolmogorov_args;
SW_API sw_status sw_kolmogorov(const sw_kolmogorov_args* args, sw_result** out);

/* Passed: the identity holds exactly and within 1e-14 in floating point. */
SW_API sw_status sw_orthocheck(int order, int r, sw_result** out);

typedef struct sw_gaussian_args {
  int order;
  double q;
  int trials;
  uint64_t seed;
} sw_gaussian_args;
SW_API sw_status sw_gaussian(const sw_gaussian_args* args, sw_result** out);

typedef struct sw_dvoretzky_args {
  int order;
  double q;
  int k; /* 0 means the critical dimension */
  int trials;
  uint64_t seed;
  double crit_frac;
} sw_dvoretzky_args;
SW_API sw_status sw_dvoretzky(const sw_dvoretzky_args* args, sw_result** out);

typedef struct sw_envelope_config {
  double small_codim_fraction; /* 0.5 by default */
  double critical_dim_fraction; /* 0.1 by default */
} sw_envelope_config;
SW_API sw_envelope_config sw_envelope_default_config(void);

/* Value: the upper end of the rate interval (the rate itself when sharp). */
SW_API sw_status sw_envelope(double p, double q, int order, int n, const sw_envelope_config* cfg,
                             sw_result** out);
/* Writes up to cap exponents of the default grid 0.25 * 2^(k/3), k = 0..18, then inf.
   Returns the grid length. */
SW_API size_t sw_default_exponent_grid(double* out, size_t cap);
SW_API sw_status sw_phase_diagram(const double* p_grid, size_t p_count, const double* q_grid,
                                  size_t q_count, int order, const int* n_grid, size_t n_count,
                                  const sw_envelope_config* cfg, sw_result** out);

typedef void (*sw_verify_callback)(const char* line, void* user);
typedef struct sw_verify_args {
  const int* criteria; /* NULL or empty runs 1..13 */
  size_t criteria_count;
  int mutate_kappa; /* nonzero: off-by-one kappa, the identity check must fail */
  sw_verify_callback on_line;
  void* user;
} sw_verify_args;
/* Runs the acceptance suite. The call itself returns SW_OK when the suite ran;
   the verdict is sw_result_passed. */
SW_API sw_status sw_verify(const sw_verify_args* args, sw_result** out);

#ifdef __cplusplus
}
#endif

#endif
