#ifndef LOGLAB_H
#define LOGLAB_H

/* C interface to the diffusive logistic steady-state laboratory.
 *
 * All functions that can fail return a loglab_status; LOGLAB_OK is 0.
 * On failure a human-readable message is kept per thread and can be read
 * with loglab_last_error() until the next failing call.  Out-parameters
 * are written only on success.  Handles are created by _create/_run
 * functions and released with the matching _free; freeing NULL is a no-op.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum loglab_status {
  LOGLAB_OK = 0,
  LOGLAB_ERR_INVALID_ARGUMENT = 1,
  LOGLAB_ERR_DOMAIN = 2,
  LOGLAB_ERR_SINGULAR_OPERATOR = 3,
  LOGLAB_ERR_NO_CONVERGENCE = 4,
  LOGLAB_ERR_STEP_SIZE = 5,
  LOGLAB_ERR_MEAN_SIGN = 6,
  LOGLAB_ERR_INSUFFICIENT_DATA = 7,
  LOGLAB_ERR_NULL_POINTER = 8,
  LOGLAB_ERR_UNKNOWN = 9
} loglab_status;

const char* loglab_version(void);
const char* loglab_status_name(loglab_status s);
const char* loglab_last_error(void);

/* ---- resource profiles ---------------------------------------------- */

typedef struct loglab_profile loglab_profile;

loglab_status loglab_profile_constant(double c, loglab_profile** out);
loglab_status loglab_profile_linear(double a, double b, loglab_profile** out);
loglab_status loglab_profile_shifted_ramp(double s, loglab_profile** out);
loglab_status loglab_profile_sine_offset(double c, double a,
                                         loglab_profile** out);
loglab_status loglab_profile_cosine_offset(double c, double a,
                                           loglab_profile** out);
loglab_status loglab_profile_single_peak(double c, double a,
                                         loglab_profile** out);
/* count >= 2 triples (x, m, m'); xs strictly increasing from 0 to 1 */
loglab_status loglab_profile_sampled(const double* xs, const double* ms,
                                     const double* dms, size_t count,
                                     loglab_profile** out);
/* base + t * bump */
loglab_status loglab_profile_blend(const loglab_profile* base,
                                   const loglab_profile* bump, double t,
                                   loglab_profile** out);
void loglab_profile_free(loglab_profile* p);

loglab_status loglab_profile_value(const loglab_profile* p, double x,
                                   double* out);
loglab_status loglab_profile_derivative(const loglab_profile* p, double x,
                                        double* out);
/* copies a NUL-terminated description, truncating to buflen */
loglab_status loglab_profile_describe(const loglab_profile* p, char* buf,
                                      size_t buflen);

typedef struct loglab_conditions {
  double mean;
  double min_value;
  double max_value;
  int non_constant;
  int m0; /* non-constant with nonnegative mean */
  int m1; /* positive, max <= 2 min */
  int m2; /* monotone positive part */
  int m2_direction; /* +1 rising, -1 falling, 0 constant or none */
  int m3; /* single interior peak */
  double m3_peak;
} loglab_conditions;

loglab_status loglab_classify(const loglab_profile* p, size_t samples,
                              loglab_conditions* out);

/* ---- steady states --------------------------------------------------- */

typedef struct loglab_solution loglab_solution;

typedef struct loglab_solve_options {
  size_t n;           /* grid nodes (>= 3); 0 picks 1025 */
  double mu_start;    /* continuation start; <= 0 picks 1e3 */
  double ratio;       /* continuation ratio in (0,1); <= 0 picks 0.5 */
  double tol_factor;  /* newton tolerance factor; <= 0 picks 1 */
  int use_parabolic;  /* nonzero: relax to steady state, then polish */
} loglab_solve_options;

loglab_status loglab_solve(const loglab_profile* p, double mu,
                           const loglab_solve_options* opt /* nullable */,
                           loglab_solution** out);
void loglab_solution_free(loglab_solution* s);

size_t loglab_solution_size(const loglab_solution* s);
loglab_status loglab_solution_node(const loglab_solution* s, size_t i,
                                   double* out);
loglab_status loglab_solution_theta(const loglab_solution* s, size_t i,
                                    double* out);
loglab_status loglab_solution_theta_prime(const loglab_solution* s, size_t i,
                                          double* out);
loglab_status loglab_solution_theta_mu(const loglab_solution* s, size_t i,
                                       double* out);

typedef struct loglab_summary {
  double mu;
  double M;   /* max theta */
  double S;   /* min theta */
  double gap; /* M - S */
  double argmax_x;
  double argmin_x;
  double mass_p1;
  double mass_p2;
  double mass_p3;
  double grad_sq;
  double theta_mu_at_argmax;
  double theta_mu_at_0;
  double theta_mu_at_1;
  double min_theta_mu;
  double max_theta_mu;
  double theta_prime_interior_min;
  double theta_prime_interior_max;
  int theta_prime_sign_changes;
  int argmax_is_interior;
  int bounds_ok;
  int sandwich_ok;
  double identity_defect;
  int newton_iters;
  double residual;
} loglab_summary;

loglab_status loglab_solution_summary(const loglab_solution* s,
                                      loglab_summary* out);

/* central-difference cross-check of theta_mu; tol_factor <= 0 picks 1e-3 */
loglab_status loglab_fd_sensitivity_gap(const loglab_solution* s, double h_mu,
                                        double tol_factor, double* out);
/* d/dmu of the cubic moment against -3 * integral (theta')^2 */
loglab_status loglab_moment_check(const loglab_solution* s, double h_mu,
                                  double* fd, double* reference,
                                  double* rel_error);

/* ---- large-diffusion expansion --------------------------------------- */

typedef struct loglab_asymptotics loglab_asymptotics;

loglab_status loglab_asymptotics_compute(const loglab_profile* p, size_t n,
                                         loglab_asymptotics** out);
void loglab_asymptotics_free(loglab_asymptotics* a);

loglab_status loglab_asymptotics_mbar(const loglab_asymptotics* a,
                                      double* out);
loglab_status loglab_asymptotics_c_energy(const loglab_asymptotics* a,
                                          double* out);
loglab_status loglab_asymptotics_c_quadrature(const loglab_asymptotics* a,
                                              double* out);
loglab_status loglab_asymptotics_min_c_plus_rho(const loglab_asymptotics* a,
                                                double* out);
size_t loglab_asymptotics_size(const loglab_asymptotics* a);
loglab_status loglab_asymptotics_rho(const loglab_asymptotics* a, size_t i,
                                     double* out);
/* sup | theta(mu) - (mbar + (c + rho)/mu) | with a fresh solve at mu */
loglab_status loglab_expansion_error(const loglab_asymptotics* a, double mu,
                                     double* out);

/* least-squares slope of log(error) against log(lambda); count >= 2,
 * all inputs positive */
loglab_status loglab_convergence_order(const double* lambdas,
                                       const double* errors, size_t count,
                                       double* out);

typedef struct loglab_hunt_result {
  int found;
  double parameter;
  double min_c_plus_rho;
  double c_energy;
  size_t tried;
} loglab_hunt_result;

/* scans amplitude t in [lo, hi] over the family offset + t cos(pi x) */
loglab_status loglab_hunt_cosine(double offset, double lo, double hi,
                                 size_t budget, size_t n,
                                 loglab_hunt_result* out);
/* scans t in [lo, hi] over base + t * bump */
loglab_status loglab_hunt_blend(const loglab_profile* base,
                                const loglab_profile* bump, double lo,
                                double hi, size_t budget, size_t n,
                                loglab_hunt_result* out);

/* ---- diffusion sweeps ------------------------------------------------ */

typedef struct loglab_sweep loglab_sweep;

loglab_status loglab_sweep_run(const loglab_profile* p, const double* mus,
                               size_t count, size_t n, int independent,
                               int parallel, loglab_sweep** out);
void loglab_sweep_free(loglab_sweep* s);

size_t loglab_sweep_rows(const loglab_sweep* s);
size_t loglab_sweep_failed(const loglab_sweep* s);
loglab_status loglab_sweep_row_mu(const loglab_sweep* s, size_t row,
                                  double* out);
int loglab_sweep_row_ok(const loglab_sweep* s, size_t row);
/* LOGLAB_ERR_NO_CONVERGENCE for failed rows; the row error message goes
 * to loglab_last_error() */
loglab_status loglab_sweep_row_summary(const loglab_sweep* s, size_t row,
                                       loglab_summary* out);

typedef enum loglab_column {
  LOGLAB_COL_M = 0,
  LOGLAB_COL_S = 1,
  LOGLAB_COL_GAP = 2,
  LOGLAB_COL_MASS_P1 = 3,
  LOGLAB_COL_MASS_P2 = 4,
  LOGLAB_COL_MASS_P3 = 5,
  LOGLAB_COL_GRAD_SQ = 6
} loglab_column;

typedef enum loglab_verdict {
  LOGLAB_VERDICT_PASS = 0,
  LOGLAB_VERDICT_FAIL = 1,
  LOGLAB_VERDICT_INCONCLUSIVE = 2
} loglab_verdict;

typedef struct loglab_monotonicity {
  loglab_verdict verdict;
  size_t pairs;
  size_t witness_index;
  double witness_delta;
} loglab_monotonicity;

loglab_status loglab_sweep_monotonicity(const loglab_sweep* s,
                                        loglab_column column, int direction,
                                        double slack,
                                        loglab_monotonicity* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LOGLAB_H */
