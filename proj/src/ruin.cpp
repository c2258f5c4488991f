#include "cmrp/ruin.hpp"

#include <cmath>
#include <limits>

#include "cmrp/errors.hpp"
#include "cmrp/roots.hpp"
#include "cmrp/simulate.hpp"

namespace cmrp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mgf_or_inf(const DistSpec& d, double s) {
  if (s >= mgf_abscissa(d)) return kInf;
  return mgf(d, s);
}

}  // namespace

std::string to_string(RuinMethod m) {
  switch (m) {
    case RuinMethod::closed_form:
      return "closed_form";
    case RuinMethod::quadrature:
      return "quadrature";
    case RuinMethod::monte_carlo:
      return "monte_carlo";
  }
  return "?";
}

bool net_profit_holds(const CmrpModel& model, const Theta& theta) {
  const double c = model.premium_rate(theta);
  return c * mean(model.interarrival_at(theta)) > mean(model.claims);
}

double adjustment_coefficient(const CmrpModel& model, const Theta& theta) {
  if (!net_profit_holds(model, theta)) {
    throw NoPositiveRoot("net-profit condition fails at theta=" + to_string(theta) +
                         ": c E[W1] <= E[X1], so no positive adjustment coefficient exists");
  }
  const double c = model.premium_rate(theta);
  const DistSpec kernel = model.interarrival_at(theta);
  const DistSpec& claims = model.claims;
  // log of the Lundberg function; negative slope at 0 under net profit,
  // +inf toward the claim MGF abscissa.
  auto phi = [&](double r) {
    const double mx = mgf_or_inf(claims, r);
    const double mw = mgf_or_inf(kernel, -c * r);
    return std::log(mx) + std::log(mw);
  };
  const double abscissa = mgf_abscissa(claims);
  double hi = std::isfinite(abscissa) ? abscissa * (1.0 - 1e-12) : 1.0;
  if (!std::isfinite(abscissa)) {
    int expansions = 0;
    while (phi(hi) < 0.0) {
      hi *= 2.0;
      if (++expansions > 200) {
        throw NoPositiveRoot("adjustment coefficient: Lundberg function never crosses zero");
      }
    }
  } else {
    while (!std::isfinite(phi(hi))) hi = abscissa - (abscissa - hi) * 2.0;  // shrink inward
  }
  // phi(0) = 0; start the bracket just above zero where phi < 0.
  double lo = hi * 1e-12;
  int shrink = 0;
  while (phi(lo) >= 0.0) {
    lo *= 0.5;
    if (++shrink > 200) {
      throw NoPositiveRoot("adjustment coefficient: no negative segment above r=0");
    }
  }
  if (phi(hi) < 0.0) {
    throw NoPositiveRoot("adjustment coefficient: no sign change below the MGF abscissa");
  }
  const double root = brent(phi, lo, hi, 1e-15);
  return root;
}

double psi_theta(const CmrpModel& model, const Theta& theta, double u) {
  const auto* exp_claims = std::get_if<Exponential>(&model.claims);
  const auto* gamma_claims = std::get_if<Gamma>(&model.claims);
  double eta = 0.0;
  if (exp_claims) {
    eta = exp_claims->rate;
  } else if (gamma_claims && gamma_claims->shape == 1.0) {
    eta = gamma_claims->rate;
  } else {
    throw UnsupportedClaimLaw("psi_theta has a closed form for exponential claims only; got " +
                              describe(model.claims) +
                              " (use the Monte Carlo estimator instead)");
  }
  if (!net_profit_holds(model, theta)) return 1.0;  // ruin is certain
  const double R = adjustment_coefficient(model, theta);
  return (1.0 - R / eta) * std::exp(-R * u);
}

RuinResult psi_mixed(const CmrpModel& model, double u, const QuadratureConfig& cfg) {
  if (model.mixing.dim() != 1) {
    throw ModelError("psi_mixed requires a one-dimensional mixing law");
  }
  RuinResult result;
  result.u = u;
  result.method = RuinMethod::quadrature;

  const DistSpec& mix = model.mixing.components[0];
  if (const auto* atom = std::get_if<Dirac>(&mix)) {
    result.psi = psi_theta(model, Theta{atom->point, 0.0, 1}, u);
    result.method = RuinMethod::closed_form;
    return result;
  }

  auto profit = [&](double t1) {
    const Theta th{t1, 0.0, 1};
    return model.premium_rate(th) * mean(model.interarrival_at(th)) - mean(model.claims);
  };
  auto psi_density = [&](double t1) {
    return psi_theta(model, Theta{t1, 0.0, 1}, u) * pdf(mix, t1);
  };

  // Locate the net-profit boundary; beyond it psi_theta is identically 1 and
  // the integral collapses to the mixing tail mass.
  const double probe_hi = 1e8;
  double boundary = kInf;
  if (profit(probe_hi) <= 0.0) {
    double lo = 1e-12;
    if (profit(lo) <= 0.0) {
      // Net profit fails on essentially the whole support.
      result.psi = 1.0;
      result.error_bound = 0.0;
      return result;
    }
    boundary = brent([&](double t1) { return profit(t1); }, lo, probe_hi, 1e-13);
  }

  double value = 0.0, error = 0.0;
  if (std::isfinite(boundary)) {
    QuadratureResult q = integrate(psi_density, 0.0, boundary, cfg);
    value = q.value + survival(mix, boundary);
    error = q.error;
  } else {
    QuadratureResult q = integrate_to_inf(psi_density, 0.0, cfg);
    value = q.value;
    error = q.error;
  }
  result.psi = std::min(1.0, value);
  result.error_bound = error;
  return result;
}

RuinResult psi_monte_carlo(const CmrpModel& model, double u, double horizon,
                           std::size_t n_paths, std::uint64_t seed, unsigned workers) {
  if (!(horizon > 0.0)) throw DomainError("psi_monte_carlo requires horizon > 0");
  RuinResult result;
  result.u = u;
  result.method = RuinMethod::monte_carlo;

  std::vector<unsigned char> ruined(n_paths, 0);
  for_each_path(model, n_paths, horizon, seed, workers, [&](std::size_t i, const Path& p) {
    ruined[i] = ruin_time(p, model, u).has_value() ? 1 : 0;
  });
  std::size_t count = 0;
  for (unsigned char f : ruined) count += f;
  const double n = static_cast<double>(n_paths);
  const double phat = static_cast<double>(count) / n;
  result.psi = phat;
  result.error_bound = std::sqrt(std::max(0.0, phat * (1.0 - phat)) / n);
  return result;
}

}  // namespace cmrp
