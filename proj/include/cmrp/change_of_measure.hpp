#pragma once

#include <vector>

#include "cmrp/model.hpp"
#include "cmrp/simulate.hpp"

namespace cmrp {

// The density of the equivalent measure restricted to time t factors into
// per-jump terms (claim tilt f(X_j) and interarrival likelihood ratio
// dLambda/dK(W_j)), a waiting-time survival tail ratio, and the mixing
// reweight xi(theta). Everything is accumulated in log space.

struct JumpLogFactor {
  double claim;         // log f(X_j)
  double interarrival;  // log dLambda/dK (W_j)
};

struct DensityEval {
  double log_value = 0.0;
  std::vector<JumpLogFactor> jump_log_factors;
  double tail_log_factor = 0.0;
  double xi_log_factor = 0.0;
};

/// Likelihood ratio of n interarrivals plus the tail beyond their sum:
/// prod_j dLambda/dK(w_j) * (1 - Lambda(t - w)) / (1 - K(t - w)), in log.
/// n = 0 gives the pure tail term.
double log_g_n(const MeasureChange& mc, const CmrpModel& model, const Theta& theta,
               const std::vector<double>& w, double t);

/// Conditional density given theta; xi_log_factor is zero.
DensityEval log_density_conditional(const MeasureChange& mc, const CmrpModel& model,
                                    const Path& p, double t);

/// Unconditional density: conditional plus log xi(theta).
DensityEval log_density(const MeasureChange& mc, const CmrpModel& model, const Path& p,
                        double t);

/// Density written in its compound-mixed-Poisson form: target kernel
/// Exponential(rho(theta)), per-jump exponent beta(x, theta) = log f(x) +
/// alpha(theta), and the (rho * E[W1|theta])^-N_t normalizer. Must agree with
/// log_density assembled from the same (tilt, xi, Exp(rho)) ingredients.
DensityEval log_density_poissonization(const CmrpModel& model, const ClaimTilt& tilt,
                                       const MixReweight& rw, const Expr& rho, const Path& p,
                                       double t);

struct LundbergSolution {
  double r = 0.0;
  double kappa = 0.0;
  Theta theta;
  double residual = 0.0;  // M_X(r) * M_W(-kappa - c r) - 1 at the solution
};

/// Solves M_X(r) * M_W(-kappa - c(theta) r) = 1 for kappa. The interarrival
/// MGF is monotone in its argument, so the root is unique; the bracket is
/// expanded by doubling until it straddles the sign change.
LundbergSolution kappa_solve(const CmrpModel& model, const Theta& theta, double r);

/// Esscher change at exponent r: tilted claims and the exponentially tilted
/// interarrival kernel with tilt -(kappa_theta(r) + c(theta) r). The mixing
/// reweight is left to the caller (unit by default).
MeasureChange esscher_change(const CmrpModel& model, double r);

/// Closed-form route for the conditional density of the Esscher change:
///   r S_t - (kappa + c r) T_{N_t} + log M_X(r)
///   + log int_{t-T_{N_t}}^inf e^{-(kappa + c r) w} dK(w) - log(1 - K(t-T_{N_t}))
/// with the partial expectation evaluated by quadrature. Used as an
/// independent cross-check of log_density_conditional.
double log_density_esscher_closed_form(const CmrpModel& model, double r, const Theta& theta,
                                       const Path& p, double t);

}  // namespace cmrp
