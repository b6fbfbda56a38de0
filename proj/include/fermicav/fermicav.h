/*
 * fermicav — entanglement degradation of massless Dirac cavity modes under
 * grafted inertial / uniformly-accelerated motion, to second order in the
 * acceleration parameter h.
 *
 * C API: every handle is opaque, every function returns an fc_status, and all
 * results come back through out-parameters. On failure a thread-local message
 * is available from fc_last_error(). Handles are destroyed with the matching
 * *_destroy function; destroy functions accept NULL.
 *
 * Conventions: E1 = exp(2 pi i u) parametrises the accelerated-segment
 * duration (u = tau1 / degradation period), E2 = exp(2 pi i v) the inertial
 * coast (v = tau2 / (2 delta)). Degradation coefficients are returned per
 * unit h^2; state measures take the numeric h explicitly.
 */

#ifndef FERMICAV_H
#define FERMICAV_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
  FC_OK = 0,
  FC_ERR_CONFIG = 2,           /* invalid configuration or argument values */
  FC_ERR_TOLERANCE = 3,        /* cross-check or quadrature tolerance breach */
  FC_ERR_IO = 4,               /* filesystem failure */
  FC_ERR_INVALID_ARGUMENT = 5, /* precondition violation on a direct call */
  FC_ERR_INTERNAL = 6
} fc_status;

const char* fc_status_name(fc_status status);

/* Thread-local message describing the most recent failure; empty string if
 * the last call on this thread succeeded. */
const char* fc_last_error(void);

const char* fc_version(void);

/* ---------------------------------------------------------------- geometry */

typedef struct fc_geometry fc_geometry;

typedef struct fc_geometry_info {
  double a;
  double b;
  double s;
  double theta;
  double delta;
  double h;
  double log_ratio;
} fc_geometry_info;

fc_status fc_geometry_create(double a, double b, double s, double theta,
                             fc_geometry** out);
fc_status fc_geometry_create_from_acceleration(double delta, double h, double s,
                                               double theta, fc_geometry** out);
void fc_geometry_destroy(fc_geometry* geometry);
fc_status fc_geometry_inspect(const fc_geometry* geometry,
                              fc_geometry_info* out);

fc_status fc_minkowski_frequency(const fc_geometry* geometry, int n,
                                 double* out);
fc_status fc_rindler_frequency(const fc_geometry* geometry, int n, double* out);
fc_status fc_rapidity_from_proper_time(const fc_geometry* geometry, double tau,
                                       double* out);
fc_status fc_degradation_period(const fc_geometry* geometry, double* out);
fc_status fc_u_parameter(const fc_geometry* geometry, double tau1, double* out);
fc_status fc_v_parameter(const fc_geometry* geometry, double tau2, double* out);

/* ------------------------------------------------- perturbative Bogoliubov */

/* Coefficients of h and h^2 in the Minkowski -> Rindler transformation. */
fc_status fc_first_order_entry(int m, int n, double s, double* out);
fc_status fc_second_order_entry(int m, int n, double s, double* out);

typedef struct fc_scenario fc_scenario;

fc_status fc_scenario_create(const fc_geometry* geometry, fc_scenario** out);
/* kind: "accelerate-right", "accelerate-left" or "inertial"; duration is
 * proper time at the cavity centre. */
fc_status fc_scenario_add_segment(fc_scenario* scenario, const char* kind,
                                  double duration);
void fc_scenario_destroy(fc_scenario* scenario);

typedef struct fc_matrix fc_matrix;

fc_status fc_graft(const fc_scenario* scenario, int window, fc_matrix** out);
fc_status fc_segment_matrix_accel(const fc_geometry* geometry, double eta1,
                                  int leftward, int window, fc_matrix** out);
fc_status fc_inertial_phase_matrix(const fc_geometry* geometry, double tau,
                                   int window, fc_matrix** out);
void fc_matrix_destroy(fc_matrix* matrix);

fc_status fc_matrix_window(const fc_matrix* matrix, int* out);
/* order in {0, 1, 2}; order 0 is diagonal (m must equal n). */
fc_status fc_matrix_order_entry(const fc_matrix* matrix, int order, int m, int n,
                                double* re, double* im);
/* Full entry delta_mn G + h O1 + h^2 O2 at numeric h. */
fc_status fc_matrix_entry(const fc_matrix* matrix, int m, int n, double h,
                          double* re, double* im);
/* Residuals of the order-h and order-h^2 unitarity identities on the centred
 * block |m|,|n| <= eval_window. */
fc_status fc_matrix_unitarity_residuals(const fc_matrix* matrix, int eval_window,
                                        double* order1, double* order2);
/* sum |V_pq|^2 of the vacuum pair-creation ansatz, per unit h^2. */
fc_status fc_matrix_pair_creation_weight(const fc_matrix* matrix, double* out);

/* Exact coefficient A_mn by adaptive quadrature on the t=0 surface. */
fc_status fc_exact_coefficient(const fc_geometry* geometry, int m, int n,
                               double abs_tol, double* re, double* im,
                               double* error_estimate);

/* -------------------------------------------------------- unit-circle maths */

/* Re Li_order(e^{i phi}), order in {4, 6}. */
fc_status fc_re_polylog(int order, double phi, double* out);
fc_status fc_q_function(double alpha, double phi, double* out);

/* ----------------------------------------------------- entanglement measures */

/* Degradation coefficients (per unit h^2). */
fc_status fc_fk_closed(const fc_geometry* geometry, int k, double u, double* out);
fc_status fc_fk_series(const fc_geometry* geometry, int k, double u, int window,
                       double* out);
fc_status fc_oneway_fk(const fc_geometry* geometry, int k, double u, double v,
                       double* out);

fc_status fc_negativity_two_mode(double f_coefficient, double h, double* out);
fc_status fc_chsh_max_two_mode(double f_coefficient, double h, double* out);

/* Pass oneway = 0 to ignore v. interference may be NULL. */
fc_status fc_negativity_charge(const fc_geometry* geometry, int k, int k_prime,
                               double u, int oneway, double v, double h,
                               double* negativity, double* interference);

/* Density-matrix route. family: "two-mode-plus", "two-mode-minus" or
 * "charge" (which requires k_prime < 0; otherwise k_prime is ignored).
 * chsh receives NaN for the charge family. interference may be NULL. */
fc_status fc_density_matrix_oracle(const fc_scenario* scenario,
                                   const char* family, int k, int k_prime,
                                   double h, int window, double* negativity,
                                   double* chsh, double* interference);

/* ------------------------------------------------------------ run commands */

typedef struct fc_config fc_config;

fc_status fc_config_load(const char* path, fc_config** out);
fc_status fc_config_parse(const char* json_text, fc_config** out);
void fc_config_destroy(fc_config* config);

fc_status fc_config_override_out(fc_config* config, const char* path);
fc_status fc_config_override_window(fc_config* config, int window);
fc_status fc_config_override_h(fc_config* config, double h);
fc_status fc_config_override_grid(fc_config* config, int u_points, int v_points);

/* Sweep commands write the CSV (plus <csv>.meta.json) configured under
 * output.csv, which must be set. Reruns with identical configuration produce
 * byte-identical files. */
fc_status fc_run_figure2(const fc_config* config);
fc_status fc_run_figure3(const fc_config* config);

/* Single-scenario report; writes JSON when output.csv is set and fails with
 * FC_ERR_TOLERANCE if the closed-form and density-matrix routes disagree
 * beyond tolerances.oracle_match. */
fc_status fc_run_report(const fc_config* config);

/* Runs the invariant suite, printing one PASS/FAIL line per check to stdout.
 * Returns FC_ERR_TOLERANCE if any check fails. */
fc_status fc_run_validate(const fc_config* config);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FERMICAV_H */
