/*
 * C interface to the compound mixed renewal process toolkit.
 *
 * All entry points return a cmrp_status; CMRP_OK is 0. On failure,
 * cmrp_last_error() returns a thread-local description of what went wrong.
 * Scenario handles are opaque; close them with cmrp_scenario_close.
 */
#ifndef CMRP_H
#define CMRP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cmrp_scenario cmrp_scenario;

typedef enum cmrp_status {
  CMRP_OK = 0,
  CMRP_ERR_CONFIG = 1,
  CMRP_ERR_IO = 2,
  CMRP_ERR_DOMAIN = 3,
  CMRP_ERR_DIVERGENT_MGF = 4,
  CMRP_ERR_NON_EQUIVALENT_SUPPORTS = 5,
  CMRP_ERR_INVALID_TILT = 6,
  CMRP_ERR_INVALID_REWEIGHT = 7,
  CMRP_ERR_NO_ROOT = 8,
  CMRP_ERR_NO_POSITIVE_ROOT = 9,
  CMRP_ERR_UNSUPPORTED_CLAIM_LAW = 10,
  CMRP_ERR_EXPLOSION = 11,
  CMRP_ERR_MODEL = 12,
  CMRP_ERR_DEGENERATE_CHECK = 13,
  CMRP_ERR_INTERNAL = 14
} cmrp_status;

const char* cmrp_version(void);
const char* cmrp_status_name(cmrp_status status);
/* Message for the last failing call on this thread; empty string if none. */
const char* cmrp_last_error(void);

/* ---- scenarios ---- */

/* name_or_path is a shipped preset name or a path to a scenario JSON file. */
cmrp_status cmrp_scenario_open(const char* name_or_path, cmrp_scenario** out);
cmrp_status cmrp_scenario_open_json(const char* json_text, cmrp_scenario** out);
void cmrp_scenario_close(cmrp_scenario* scenario);

const char* cmrp_scenario_name(const cmrp_scenario* scenario);
int cmrp_scenario_mixing_dim(const cmrp_scenario* scenario);

/* Shipped preset names; *names points to static storage. */
cmrp_status cmrp_preset_names(const char* const** names, size_t* count);

/* ---- simulation and densities ---- */

/* Writes the paths CSV (path_id, theta[, theta2], n, T_n, W_n, X_n).
 * workers <= 0 means one worker per available core; output bytes do not
 * depend on the worker count. */
cmrp_status cmrp_simulate_csv(const cmrp_scenario* scenario, uint64_t n_paths, double horizon,
                              uint64_t seed, int workers, const char* out_csv);

/* Reads a paths CSV produced by cmrp_simulate_csv (t must not exceed the
 * horizon it was simulated with) and writes the weights CSV
 * (path_id, log_density, log_conditional, log_xi). */
cmrp_status cmrp_density_csv(const cmrp_scenario* scenario, const char* paths_csv, double t,
                             const char* out_csv);

/* ---- Lundberg exponent ---- */

/* theta has theta_len coordinates (1 or 2, matching the scenario mixing). */
cmrp_status cmrp_lundberg(const cmrp_scenario* scenario, const double* theta,
                          size_t theta_len, double r, double* kappa, double* residual);

/* ---- ruin probabilities ---- */

cmrp_status cmrp_ruin_quadrature(const cmrp_scenario* scenario, double u, double* psi,
                                 double* error_bound);

/* Finite-horizon Monte Carlo estimate (a lower bound of the infinite-horizon
 * probability); std_error receives the binomial standard error. */
cmrp_status cmrp_ruin_monte_carlo(const cmrp_scenario* scenario, double u, double horizon,
                                  uint64_t n_paths, uint64_t seed, int workers, double* psi,
                                  double* std_error);

/* ---- verification suite ---- */

/* suite is "default" or a path to a suite JSON file. Writes the report CSV
 * (check_name, estimate, std_error, target, passed, n_paths, seed) and
 * reports the number of checks and failures. Returns CMRP_OK even when some
 * checks fail; inspect *n_failed. */
cmrp_status cmrp_verify(const char* suite, uint64_t seed, int workers, const char* out_csv,
                        size_t* n_checks, size_t* n_failed);

#ifdef __cplusplus
}
#endif

#endif /* CMRP_H */
