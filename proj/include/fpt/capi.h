#ifndef FPT_CAPI_H
#define FPT_CAPI_H

/* C interface to the first-passage-time library.  All functions return an
 * error code (0 = success); on failure a thread-local message is available
 * via fpt_last_error().  Strings returned through char** outputs are
 * malloc'd and must be released with fpt_string_free(). */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    FPT_OK = 0,
    FPT_ERR_INVALID_INPUT = 1,
    FPT_ERR_DOMAIN = 2,
    FPT_ERR_ADMISSIBILITY = 3,
    FPT_ERR_HYPOTHESIS = 4,
    FPT_ERR_CONVERGENCE = 5,
    FPT_ERR_NO_DENSITY = 6,
    FPT_ERR_UNSUPPORTED = 7,
    FPT_ERR_CONFIG = 8,
    FPT_ERR_INSUFFICIENT_SAMPLES = 9,
    FPT_ERR_INTERNAL = 100
};

typedef struct fpt_model fpt_model;

const char* fpt_version(void);

/* Message from the most recent failing call on this thread ("" if none). */
const char* fpt_last_error(void);

void fpt_string_free(char* s);

/* Diagnostics for a model JSON spec (no barrier needed). */
int fpt_diagnose(const char* model_json, char** out_json);

/* Barrier problem handle; requires b > 0 and a density (diagnostics gate). */
int fpt_model_create(const char* model_json, double b, fpt_model** out);
void fpt_model_free(fpt_model* m);

/* First-passage density p_b(t) and its quadrature error estimate.
 * abs_tol <= 0 selects the default tolerance. */
int fpt_density(const fpt_model* m, double t, double abs_tol, double* value,
                double* error_estimate);

/* P(tau_b <= t). */
int fpt_cdf(const fpt_model* m, double t, double abs_tol, double* value);

/* Regime-matched tail asymptote: JSON description and point evaluation. */
int fpt_asymptote_describe(const fpt_model* m, char** out_json);
int fpt_asymptote_eval(const fpt_model* m, double t, double* value);

/* E[e^{-r tau_b}] = e^{-b Psi^{-1}(r)}. */
int fpt_laplace(const fpt_model* m, double r, double* value);

/* Replace the drift by the martingale drift for rate r; returns the
 * calibrated model JSON. */
int fpt_calibrate(const char* model_json, double r, char** out_json);

/* U_T = E[e^{-r tau_b}; tau_b <= T]; drift must be martingale for r. */
int fpt_urc_value(const fpt_model* m, double r, double T, double* value);

/* Large-T asymptote of laplace - U_T evaluated at T. */
int fpt_urc_gap_asymptote_eval(const fpt_model* m, double r, double T, double* value);

/* Monte Carlo first-passage sample.  times must hold n_paths doubles; the
 * first *n_crossed entries are the sorted crossing times, the remaining
 * paths were censored at the horizon. */
int fpt_simulate(const char* model_json, double b, uint64_t n_paths, double dt,
                 double eps, double horizon, uint64_t seed, double* times,
                 uint64_t* n_crossed);

/* KS distance between sorted crossing times (conditioned on crossing before
 * horizon) and the analytic conditional CDF. */
int fpt_ks_distance(const fpt_model* m, const double* times, uint64_t n_crossed,
                    uint64_t n_paths, double dt, double eps, double horizon,
                    uint64_t seed, double* ks);

/* Invariant suite over the built-in catalog; JSON array of
 * {"name","pass","detail"}.  *all_pass set to 1 iff every check passed. */
int fpt_run_checks(char** out_json, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
