#pragma once

#include <cstdint>
#include <string>

#include "cmrp/model.hpp"
#include "cmrp/quadrature.hpp"

namespace cmrp {

enum class RuinMethod { closed_form, quadrature, monte_carlo };

struct RuinResult {
  double u = 0.0;
  double psi = 0.0;
  RuinMethod method = RuinMethod::closed_form;
  double error_bound = 0.0;
};

std::string to_string(RuinMethod m);

/// Positive root of M_X(r) * E_theta[e^{-c(theta) r W1}] = 1.
/// Requires the net-profit condition c(theta) E[W1] > E[X1]; throws
/// NoPositiveRoot when it fails.
double adjustment_coefficient(const CmrpModel& model, const Theta& theta);

/// Whether premium income outruns expected claims at theta.
bool net_profit_holds(const CmrpModel& model, const Theta& theta);

/// Ruin probability for exponential claims Exponential(eta):
/// (1 - R(theta)/eta) e^{-R(theta) u}, and 1 when net profit fails (ruin is
/// then certain). Other claim laws raise UnsupportedClaimLaw.
double psi_theta(const CmrpModel& model, const Theta& theta, double u);

/// Mixture ruin probability: quadrature of psi_theta against the mixing
/// density, split at the net-profit boundary; the region where net profit
/// fails contributes its full mixing mass.
RuinResult psi_mixed(const CmrpModel& model, double u, const QuadratureConfig& cfg = {});

/// Fraction of simulated paths ruined within the horizon, with binomial
/// standard error in error_bound. Finite-horizon truncation makes this a
/// lower bound of the infinite-horizon probability.
RuinResult psi_monte_carlo(const CmrpModel& model, double u, double horizon,
                           std::size_t n_paths, std::uint64_t seed, unsigned workers = 0);

}  // namespace cmrp
