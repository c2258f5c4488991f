#include "cmrp/change_of_measure.hpp"

#include <cmath>
#include <limits>

#include "cmrp/errors.hpp"
#include "cmrp/quadrature.hpp"
#include "cmrp/roots.hpp"

namespace cmrp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// MGF that reports divergence as +inf instead of throwing, for bracketing.
double mgf_or_inf(const DistSpec& d, double s) {
  if (s >= mgf_abscissa(d)) return kInf;
  return mgf(d, s);
}

DistSpec tilted_kernel(const DistSpec& base, double tilt) {
  // Exponential tilt by e^{tilt * w}; closed under the gamma family.
  if (const auto* e = std::get_if<Exponential>(&base)) {
    const double rate = e->rate - tilt;
    if (!(rate > 0.0)) throw ModelError("tilted exponential kernel has non-positive rate");
    return Exponential{rate};
  }
  if (const auto* g = std::get_if<Gamma>(&base)) {
    const double rate = g->rate - tilt;
    if (!(rate > 0.0)) throw ModelError("tilted gamma kernel has non-positive rate");
    return Gamma{rate, g->shape};
  }
  throw ModelError("exponential tilting of the interarrival kernel is implemented for "
                   "exponential and gamma kernels; got " +
                   describe(base));
}

double checked_log_f(const ClaimTilt& tilt, double x) {
  const double lf = tilt.log_f(x);
  if (!(lf > -kInf) || std::isnan(lf)) {
    throw InvalidTilt("claim tilt is not positive at x=" + std::to_string(x));
  }
  return lf;
}

double checked_log_xi(const MixReweight& rw, const MixingSpec& mixing, const Theta& theta) {
  const double lx = rw.log_xi(mixing, theta);
  if (!(lx > -kInf) || std::isnan(lx)) {
    throw InvalidReweight("mixing reweight is not positive at theta=" + to_string(theta));
  }
  return lx;
}

}  // namespace

DistSpec MeasureChange::target_at(const CmrpModel& model, const Theta& theta) const {
  return std::visit(
      [&](const auto& t) -> DistSpec {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, IdentityTarget>) {
          return model.interarrival_at(theta);
        } else if constexpr (std::is_same_v<T, ExprTarget>) {
          return t.kernel.at(theta);
        } else {
          const LundbergSolution sol = kappa_solve(model, theta, t.r);
          const double c = model.premium_rate(theta);
          return tilted_kernel(model.interarrival_at(theta), -(sol.kappa + c * t.r));
        }
      },
      target);
}

double log_g_n(const MeasureChange& mc, const CmrpModel& model, const Theta& theta,
               const std::vector<double>& w, double t) {
  const DistSpec base = model.interarrival_at(theta);
  const DistSpec target = mc.target_at(model, theta);
  double sum_w = 0.0;
  double jumps = 0.0;
  for (double wj : w) {
    jumps += rn_log_ratio(target, base, wj);
    sum_w += wj;
  }
  if (sum_w > t) {
    throw DomainError("log_g_n: interarrivals sum to " + std::to_string(sum_w) +
                      " beyond t=" + std::to_string(t));
  }
  const double tau = t - sum_w;
  const double tail = log_survival(target, tau) - log_survival(base, tau);
  return jumps + tail;
}

namespace {

DensityEval conditional_eval(const MeasureChange& mc, const CmrpModel& model, const Path& p,
                             double t) {
  if (t < 0.0 || t > p.horizon) {
    throw DomainError("density requested at t=" + std::to_string(t) +
                      " outside the simulated horizon [0, " + std::to_string(p.horizon) + "]");
  }
  const DistSpec base = model.interarrival_at(p.theta);
  const DistSpec target = mc.target_at(model, p.theta);
  const bool identity_kernel = same_law(base, target);

  DensityEval eval;
  double acc = 0.0;
  double last_arrival = 0.0;
  for (std::size_t j = 0; j < p.jumps() && p.arrivals[j] <= t; ++j) {
    JumpLogFactor f;
    f.claim = checked_log_f(mc.tilt, p.claims[j]);
    f.interarrival =
        identity_kernel ? 0.0 : rn_log_ratio(target, base, p.interarrivals[j]);
    acc += f.claim;
    acc += f.interarrival;
    eval.jump_log_factors.push_back(f);
    last_arrival = p.arrivals[j];
  }
  const double tau = t - last_arrival;
  eval.tail_log_factor =
      identity_kernel ? 0.0 : log_survival(target, tau) - log_survival(base, tau);
  acc += eval.tail_log_factor;
  eval.log_value = acc;
  return eval;
}

}  // namespace

DensityEval log_density_conditional(const MeasureChange& mc, const CmrpModel& model,
                                    const Path& p, double t) {
  return conditional_eval(mc, model, p, t);
}

DensityEval log_density(const MeasureChange& mc, const CmrpModel& model, const Path& p,
                        double t) {
  DensityEval eval = conditional_eval(mc, model, p, t);
  eval.xi_log_factor = checked_log_xi(mc.reweight, model.mixing, p.theta);
  eval.log_value += eval.xi_log_factor;
  return eval;
}

DensityEval log_density_poissonization(const CmrpModel& model, const ClaimTilt& tilt,
                                       const MixReweight& rw, const Expr& rho, const Path& p,
                                       double t) {
  if (t < 0.0 || t > p.horizon) {
    throw DomainError("density requested at t=" + std::to_string(t) +
                      " outside the simulated horizon [0, " + std::to_string(p.horizon) + "]");
  }
  const Theta& theta = p.theta;
  const double rho_theta = rho.eval(theta);
  const double alpha = poissonization_alpha(model, rho, theta);
  const DistSpec base = model.interarrival_at(theta);
  const DistSpec target = Exponential{rho_theta};
  const double mean_w = mean(base);
  const double log_norm = std::log(rho_theta * mean_w);  // cancels the alpha terms

  DensityEval eval;
  double acc = 0.0;
  double last_arrival = 0.0;
  for (std::size_t j = 0; j < p.jumps() && p.arrivals[j] <= t; ++j) {
    JumpLogFactor f;
    f.claim = checked_log_f(tilt, p.claims[j]) + alpha;  // beta(X_j, theta)
    f.interarrival = rn_log_ratio(target, base, p.interarrivals[j]) - log_norm;
    acc += f.claim;
    acc += f.interarrival;
    eval.jump_log_factors.push_back(f);
    last_arrival = p.arrivals[j];
  }
  const double tau = t - last_arrival;
  eval.tail_log_factor = -rho_theta * tau - log_survival(base, tau);
  acc += eval.tail_log_factor;
  eval.xi_log_factor = checked_log_xi(rw, model.mixing, theta);
  acc += eval.xi_log_factor;
  eval.log_value = acc;
  return eval;
}

LundbergSolution kappa_solve(const CmrpModel& model, const Theta& theta, double r) {
  LundbergSolution sol;
  sol.r = r;
  sol.theta = theta;
  if (r == 0.0) return sol;  // M_X(0) = 1 forces M_W(-kappa) = 1, so kappa = 0

  const double mx = mgf(model.claims, r);  // DivergentMgf propagates
  const double c = model.premium_rate(theta);
  const DistSpec kernel = model.interarrival_at(theta);
  auto equation = [&](double kappa) { return mx * mgf_or_inf(kernel, -kappa - c * r) - 1.0; };

  // The equation is decreasing in kappa: positive toward the MGF divergence
  // on the left, -1 in the limit on the right.
  double kappa0 = std::max(1.0, std::abs(theta.x1) * mx);
  double lo = -c * r - kappa0;
  double hi = kappa0;
  int expansions = 0;
  while (equation(lo) < 0.0) {
    kappa0 *= 2.0;
    lo = -c * r - kappa0;
    if (++expansions > 60) {
      throw NoRoot("kappa_solve: no sign change on the left bracket at theta=" +
                   to_string(theta) + ", r=" + std::to_string(r));
    }
  }
  expansions = 0;
  while (equation(hi) > 0.0) {
    hi *= 2.0;
    if (++expansions > 60) {
      throw NoRoot("kappa_solve: no sign change on [" + std::to_string(lo) + ", " +
                   std::to_string(hi) + "] at theta=" + to_string(theta) +
                   ", r=" + std::to_string(r) + "; f(lo)=" + std::to_string(equation(lo)) +
                   ", f(hi)=" + std::to_string(equation(hi)));
    }
  }
  sol.kappa = brent(equation, lo, hi, 1e-15);
  sol.residual = equation(sol.kappa);
  return sol;
}

MeasureChange esscher_change(const CmrpModel& model, double r) {
  MeasureChange mc;
  if (r == 0.0) return mc;  // identity change
  mc.tilt = esscher_tilt(model, r);
  mc.target = EsscherTarget{r};
  return mc;
}

double log_density_esscher_closed_form(const CmrpModel& model, double r, const Theta& theta,
                                       const Path& p, double t) {
  if (r == 0.0) return 0.0;
  const LundbergSolution sol = kappa_solve(model, theta, r);
  const double c = model.premium_rate(theta);
  const double s_star = sol.kappa + c * r;
  const double log_mx = std::log(mgf(model.claims, r));
  const DistSpec kernel = model.interarrival_at(theta);

  const int n = count_at(p, t);
  const double s_t = aggregate_at(p, t);
  const double t_last = n > 0 ? p.arrivals[static_cast<std::size_t>(n - 1)] : 0.0;
  const double tau = t - t_last;

  // Partial expectation int_tau^inf e^{-s* w} dK(w), by quadrature.
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-13;
  const double partial =
      integrate_to_inf([&](double w) { return std::exp(-s_star * w) * pdf(kernel, w); }, tau,
                       cfg)
          .value;
  return r * s_t - s_star * t_last + log_mx + std::log(partial) - log_survival(kernel, tau);
}

}  // namespace cmrp
