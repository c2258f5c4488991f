#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cmrp/scenario.hpp"

namespace cmrp {

/// One executable check: passed iff |estimate - target| <= max(tolerance,
/// 3 * std_error). Deterministic checks carry std_error = 0.
struct VerifyReport {
  std::string check_name;
  double estimate = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
};

VerifyReport make_report(std::string name, double estimate, double std_error, double target,
                         double tolerance, std::size_t n_paths, std::uint64_t seed);

/// Absolute floor under the 3-sigma rule for probability-scale estimates.
inline constexpr double kProbabilityTolerance = 1e-3;
/// 99% asymptotic Kolmogorov-Smirnov critical constant (threshold c/sqrt(N)).
inline constexpr double kKsCritical = 1.63;

// ---- Monte Carlo theorem checks ----

/// E[M_t] = 1 under the base measure.
VerifyReport check_normalization(const Scenario& s, double t, std::size_t n_paths,
                                 std::uint64_t seed, unsigned workers = 0);

/// E[1_A M_t] = E[1_A M_u] for the documented F_u-measurable events
/// {N_u = 0}, {N_u >= 2}, {S_u <= median}; common random numbers.
std::vector<VerifyReport> check_martingale(const Scenario& s, double u, double t,
                                           std::size_t n_paths, std::uint64_t seed,
                                           unsigned workers = 0);

/// One simulation pass producing the normalization reports at t in {1, 5} and
/// the martingale reports at u=1, t=5 (shared paths).
std::vector<VerifyReport> check_scenario_core(const Scenario& s, std::size_t n_paths,
                                              std::uint64_t seed, unsigned workers = 0);

// ---- pushforward checks (weighted empirical law vs analytic target) ----

VerifyReport check_pushforward_claims(const Scenario& s, std::size_t n_samples,
                                      std::uint64_t seed);
std::vector<VerifyReport> check_pushforward_counts(const Scenario& s, double t,
                                                   const std::vector<int>& ns,
                                                   std::size_t n_paths, std::uint64_t seed,
                                                   unsigned workers = 0);
VerifyReport check_pushforward_mixing(const Scenario& s, std::size_t n_samples,
                                      std::uint64_t seed);

// ---- two-route identity checks ----

/// Generic density vs the closed form available when the mixing is gamma, the
/// reweight target is inverse-gamma, the kernel is Exponential(theta) and
/// rho(theta) = 1/theta.
VerifyReport check_ga_iga_closed_form(const Scenario& s, std::size_t n_paths,
                                      std::uint64_t seed, unsigned workers = 0);

/// Compound-mixed-Poisson form of the density vs the generic evaluator.
VerifyReport check_poissonization_identity(const Scenario& s, std::size_t n_paths,
                                           std::uint64_t seed, unsigned workers = 0);

/// Esscher-change conditional density: product form vs the exponential
/// closed form with the quadrature tail.
VerifyReport check_esscher_closed_form(const CmrpModel& model, double r, const Theta& theta,
                                       std::size_t n_paths, std::uint64_t seed,
                                       unsigned workers = 0);

// ---- solver checks ----

VerifyReport check_lundberg_exp_grid(const CmrpModel& model, const std::vector<double>& thetas,
                                     const std::vector<double>& rs);
VerifyReport check_lundberg_gamma_quadrature(const CmrpModel& model, const Theta& theta,
                                             double r);

// ---- qualitative checks ----

/// Medians of the conditional log-density at increasing horizons must be
/// strictly decreasing for a non-identity change (mutually singular tails).
/// Raises DegenerateCheck for the identity change.
VerifyReport check_singularity_drift(const Scenario& s, const Theta& theta,
                                     const std::vector<double>& horizons, std::size_t n_paths,
                                     std::uint64_t seed, unsigned workers = 0);

// ---- suites ----

std::vector<VerifyReport> run_default_suite(std::uint64_t seed, unsigned workers = 0);

/// Suite file: JSON {"checks": [{"check": ..., "scenario": ..., params...}]}.
std::vector<VerifyReport> run_suite(const std::string& suite_name_or_path, std::uint64_t seed,
                                    unsigned workers = 0);

void write_report_csv(std::ostream& os, const std::vector<VerifyReport>& reports);

}  // namespace cmrp
