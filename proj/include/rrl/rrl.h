/* C interface to the rrl library. All functions return an rrl_status; on
 * failure rrl_last_error() holds a message for the calling thread. Strings
 * returned through char** are owned by the caller and released with
 * rrl_string_free. Evaluator callbacks may be invoked from several threads
 * at once. */
#ifndef RRL_RRL_H
#define RRL_RRL_H

#include <stddef.h>
#include <stdint.h>

#if defined(RRL_BUILDING_LIBRARY)
#define RRL_API __attribute__((visibility("default")))
#else
#define RRL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rrl_status {
  RRL_OK = 0,
  RRL_E_INVALID_ARGUMENT = 1,
  RRL_E_POLE_COLLISION = 2,
  RRL_E_NON_CONVERGENT = 3,
  RRL_E_DUPLICATE_POLE = 4,
  RRL_E_DUPLICATE_ROOT = 5,
  RRL_E_NOT_A_ROOT = 6,
  RRL_E_CAP_EXCEEDED = 7,
  RRL_E_RESONANT_GAMMA = 8,
  RRL_E_INSUFFICIENT_DEPTH = 9,
  RRL_E_EVAL_FAILURE = 10,
  RRL_E_UNKNOWN_RECIPE = 11,
  RRL_E_PARSE = 12,
  RRL_E_IO = 13,
  RRL_E_INTERNAL = 99
} rrl_status;

typedef struct rrl_complex {
  double re;
  double im;
} rrl_complex;

/* A point on the unit circle, angle in turns. Exact points are p/q. */
typedef struct rrl_point {
  int exact;
  int64_t p;
  int64_t q;
  double turns;
} rrl_point;

typedef struct rrl_measure rrl_measure;
typedef struct rrl_stream rrl_stream;
typedef struct rrl_shift_report rrl_shift_report;
typedef struct rrl_clusters rrl_clusters;
typedef struct rrl_recipe rrl_recipe;

/* Returns 0 on success and writes g(z) to *out. */
typedef int (*rrl_eval_fn)(void* user, rrl_complex z, rrl_complex* out);

RRL_API const char* rrl_version(void);
RRL_API const char* rrl_status_name(rrl_status status);
RRL_API const char* rrl_last_error(void);
/* Nonzero for errors caused by the input rather than by the computation. */
RRL_API int rrl_status_is_validation(rrl_status status);
RRL_API void rrl_string_free(char* s);
/* 0 means one worker per hardware thread. */
RRL_API void rrl_set_thread_cap(unsigned cap);

RRL_API rrl_status rrl_point_rational(int64_t p, int64_t q, rrl_point* out);
RRL_API rrl_status rrl_point_real(double turns, rrl_point* out);
/* "p/q", "golden", "sqrt2", "sqrt3" or a decimal number of turns. */
RRL_API rrl_status rrl_point_parse(const char* text, rrl_point* out);
RRL_API rrl_status rrl_point_value(rrl_point p, rrl_complex* out);

/* Pole measures and simple pole series. */
RRL_API rrl_status rrl_measure_create(rrl_measure** out);
RRL_API void rrl_measure_free(rrl_measure* m);
RRL_API rrl_status rrl_measure_add(rrl_measure* m, rrl_point point, rrl_complex weight);
RRL_API rrl_status rrl_measure_set_tail_mass(rrl_measure* m, double tail_mass);
RRL_API rrl_status rrl_measure_from_json(const char* json, rrl_measure** out);
RRL_API rrl_status rrl_measure_load(const char* path, rrl_measure** out);
RRL_API rrl_status rrl_measure_to_json(const rrl_measure* m, char** out);
RRL_API rrl_status rrl_measure_size(const rrl_measure* m, size_t* out);
RRL_API rrl_status rrl_measure_total_mass(const rrl_measure* m, double* out);

RRL_API rrl_status rrl_psp_eval(const rrl_measure* m, rrl_complex z, rrl_complex* out);
/* Adapter: pass the measure as `user`. */
RRL_API int rrl_psp_eval_fn(void* user, rrl_complex z, rrl_complex* out);
/* n is a decimal integer of any size. */
RRL_API rrl_status rrl_psp_coefficient(const rrl_measure* m, const char* n, rrl_complex* out);
/* out receives b_0 .. b_N (N + 1 values). */
RRL_API rrl_status rrl_taylor_inner(const rrl_measure* m, size_t N, rrl_complex* out);
/* out receives b_{-1} .. b_{-N} (N values). */
RRL_API rrl_status rrl_taylor_outer(const rrl_measure* m, size_t N, rrl_complex* out);
RRL_API rrl_status rrl_inner_partial_sum(const rrl_measure* m, rrl_complex z, size_t N, rrl_complex* value,
                                         double* bound);
RRL_API rrl_status rrl_outer_partial_sum(const rrl_measure* m, rrl_complex z, size_t N, rrl_complex* value,
                                         double* bound);
RRL_API rrl_status rrl_recover_residue(rrl_eval_fn g, void* user, rrl_point lambda, const double* radii,
                                       size_t n_radii, double tol, rrl_complex* estimate, double* oscillation);
RRL_API rrl_status rrl_fourier_psp(const int64_t* j, const rrl_complex* fhat, size_t n, double theta,
                                   rrl_measure** out);
/* out receives M(0) .. M(N). */
RRL_API rrl_status rrl_moment_sequence(const rrl_measure* m, size_t N, rrl_complex* out);

/* Coefficient streams and right limits. */
RRL_API rrl_status rrl_stream_constant(rrl_complex c, rrl_stream** out);
RRL_API rrl_status rrl_stream_periodic(const rrl_complex* period, size_t n, rrl_stream** out);
RRL_API rrl_status rrl_stream_preperiodic(const rrl_complex* pre, size_t n_pre, const rrl_complex* period,
                                          size_t n_period, rrl_stream** out);
RRL_API rrl_status rrl_stream_from_measure(const rrl_measure* m, rrl_stream** out);
/* a_k = {gamma + k theta}. */
RRL_API rrl_status rrl_stream_hecke(double theta, double gamma, rrl_stream** out);
RRL_API rrl_status rrl_stream_at(const rrl_stream* s, uint64_t k, rrl_complex* out);
RRL_API void rrl_stream_free(rrl_stream* s);

RRL_API rrl_status rrl_shift_search(rrl_stream* s, size_t W, uint64_t k_max, double tol, rrl_shift_report** out);
RRL_API rrl_status rrl_shift_report_size(const rrl_shift_report* r, size_t* out);
RRL_API rrl_status rrl_shift_report_entry(const rrl_shift_report* r, size_t i, uint64_t* shift,
                                          double* residual_pos);
/* out receives b_{-W} .. b_W (2W + 1 values). */
RRL_API rrl_status rrl_shift_report_window(const rrl_shift_report* r, size_t i, rrl_complex* out);
RRL_API void rrl_shift_report_free(rrl_shift_report* r);

RRL_API rrl_status rrl_window_cluster(const rrl_shift_report* r, double tol, rrl_clusters** out);
RRL_API rrl_status rrl_clusters_count(const rrl_clusters* c, size_t* out);
RRL_API rrl_status rrl_clusters_members(const rrl_clusters* c, size_t i, size_t* out);
/* out receives the representative window b_{-W} .. b_W. */
RRL_API rrl_status rrl_clusters_representative(const rrl_clusters* c, size_t i, rrl_complex* out,
                                               uint64_t* shift);
RRL_API rrl_status rrl_clusters_assignment(const rrl_clusters* c, size_t entry, size_t* cluster_id);
RRL_API rrl_status rrl_shift_report_csv(const rrl_shift_report* r, const rrl_clusters* c, char** out);
RRL_API void rrl_clusters_free(rrl_clusters* c);

/* shifts are decimal strings, positive and increasing. Each output array has
 * n_shifts entries. */
RRL_API rrl_status rrl_verify_rrl(const rrl_measure* m, const char* const* shifts, size_t n_shifts, size_t W,
                                  double* residual_neg, double* residual_pos, int* exact);

/* Diophantine tools. */
/* j! as a decimal string. */
RRL_API rrl_status rrl_factorial(unsigned j, char** out);
RRL_API rrl_status rrl_pigeonhole_shift(const rrl_point* lambdas, size_t n, unsigned j, unsigned j_cap,
                                        uint64_t* out);
/* p receives m integers. */
RRL_API rrl_status rrl_dirichlet_approx(const double* thetas, size_t m, uint64_t M, uint64_t* N, int64_t* p,
                                        double* max_error, double* bound);
/* out receives n + 1 coefficients, ascending degree. */
RRL_API rrl_status rrl_poly_from_roots(const rrl_point* F, size_t n, rrl_complex* out);
/* out receives n coefficients of P_F / (X - lambda). */
RRL_API rrl_status rrl_q_poly(rrl_point lambda, const rrl_point* F, size_t n, rrl_complex* out);
RRL_API rrl_status rrl_is_eps_balanced(const rrl_point* F, size_t n, double eps, int* balanced, double* defect,
                                       int* exact);
/* Result as a JSON object with points, defect, N, M and certification. */
RRL_API rrl_status rrl_balance_completion(const rrl_point* G, size_t n, double eps, size_t size_cap,
                                          uint64_t n_cap, char** json);
RRL_API rrl_status rrl_balance_bounds(const rrl_point* F, size_t n, double eps, size_t grid,
                                      double* max_on_circle, double* min_at_root, double* max_norm_ratio,
                                      int* holds);

/* Dynamics. */
RRL_API rrl_status rrl_hecke_inner_eval(double theta, double gamma, rrl_complex z, size_t N, rrl_complex* value,
                                        double* bound);
RRL_API rrl_status rrl_hecke_outer_eval(double theta, rrl_complex z, size_t N, rrl_complex* value, double* bound);
RRL_API rrl_status rrl_hecke_outer_direct(double theta, double gamma, rrl_complex z, size_t N, rrl_complex* value,
                                          double* bound);
RRL_API rrl_status rrl_hecke_gamma_outer(double theta, double gamma, rrl_complex z, size_t N, rrl_complex* value,
                                         double* bound);
/* Writes up to cap times to out (out may be NULL) and the total to *count. */
RRL_API rrl_status rrl_occurrence_times(double theta, double g1, double g2, uint64_t N, uint64_t* out, size_t cap,
                                        size_t* count);
RRL_API rrl_status rrl_occurrence_check(double theta, double g1, double g2, uint64_t N, double endpoint_margin,
                                        size_t* checked, size_t* skipped, double* max_residual);

/* map: "tent", "feigenbaum", "identity" or "quadratic:c". out receives N + 1 signs. */
RRL_API rrl_status rrl_itinerary(const char* map, double x0, size_t N, int* out);
/* eps receives eps_1 .. eps_N, d receives d_0 .. d_N. Either may be NULL. */
RRL_API rrl_status rrl_kneading(const char* map, size_t N, int* eps, int64_t* d);
RRL_API rrl_status rrl_kneading_determinant(const int* eps, size_t n, int64_t* d);

typedef struct rrl_zero {
  int found;
  double s;
  double lo;
  double hi;
  double r_max;
  double tail;
  double entropy;
  double entropy_upper;
} rrl_zero;

RRL_API rrl_status rrl_smallest_real_zero(const double* coeffs, size_t n, double tol, double r_cap, rrl_zero* out);
/* out receives tau_0 .. tau_N. */
RRL_API rrl_status rrl_thue_morse(size_t N, uint8_t* out);
RRL_API rrl_status rrl_feigenbaum_product(size_t N, int64_t* out);

/* Boundary probes. */
RRL_API rrl_status rrl_default_radii(double* out, size_t cap, size_t* count);
RRL_API rrl_status rrl_arc_l1_growth(rrl_eval_fn g, void* user, double omega1, double omega2, const double* radii,
                                     size_t n_radii, size_t quadrature_n, double* integrals);
RRL_API rrl_status rrl_radial_blowup(rrl_eval_fn g, void* user, rrl_point lambda, const double* radii,
                                     size_t n_radii, double* out);

/* Recipes. Unknown names and keys are rejected before anything runs. */
RRL_API rrl_status rrl_recipe_names(char** out);
RRL_API rrl_status rrl_recipe_keys(const char* recipe, char** out);
RRL_API rrl_status rrl_recipe_create(rrl_recipe** out);
RRL_API rrl_status rrl_recipe_from_config(const char* path, rrl_recipe** out);
RRL_API rrl_status rrl_recipe_set_name(rrl_recipe* r, const char* name);
RRL_API rrl_status rrl_recipe_set_param(rrl_recipe* r, const char* key, const char* value);
RRL_API rrl_status rrl_recipe_set_format(rrl_recipe* r, const char* format);
RRL_API rrl_status rrl_recipe_set_output(rrl_recipe* r, const char* path);
RRL_API rrl_status rrl_recipe_validate(const rrl_recipe* r);
RRL_API rrl_status rrl_recipe_run(const rrl_recipe* r, char** text);
RRL_API void rrl_recipe_free(rrl_recipe* r);

#ifdef __cplusplus
}
#endif

#endif
