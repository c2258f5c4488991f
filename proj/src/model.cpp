#include "cmrp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cmrp/errors.hpp"
#include "cmrp/quadrature.hpp"

namespace cmrp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double require(const std::map<std::string, double>& params, const std::string& family,
               const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw ConfigError("distribution \"" + family + "\" requires parameter \"" + key + "\"");
  }
  return it->second;
}

void require_positive(const std::string& family, const std::string& key, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError("distribution \"" + family + "\": parameter \"" + key +
                      "\" must be positive, got " + std::to_string(v));
  }
}

/// E[g(X)] for a distribution with a density, by adaptive quadrature.
QuadratureResult expect(const DistSpec& d, const std::function<double(double)>& g) {
  if (const auto* atom = std::get_if<Dirac>(&d)) {
    return {g(atom->point), 0.0, 1};
  }
  auto integrand = [&](double x) { return g(x) * pdf(d, x); };
  switch (support(d)) {
    case SupportKind::positive_half_line:
      return integrate_to_inf(integrand, 0.0);
    case SupportKind::real_line:
      return integrate_real_line(integrand);
    case SupportKind::unit_interval:
      return integrate(integrand, 0.0, 1.0);
    case SupportKind::point:
      return {g(std::get<Dirac>(d).point), 0.0, 1};
  }
  return {};
}

double grid_interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

}  // namespace

Theta MixingSpec::sample(RngStream& rng) const {
  Theta t;
  t.dim = dim();
  t.x1 = cmrp::sample(components.at(0), rng);
  if (t.dim == 2) t.x2 = cmrp::sample(components[1], rng);
  return t;
}

double MixingSpec::log_pdf(const Theta& theta) const {
  double v = cmrp::log_pdf(components.at(0), theta.x1);
  if (dim() == 2) v += cmrp::log_pdf(components[1], theta.x2);
  return v;
}

double MixingSpec::pdf(const Theta& theta) const { return std::exp(log_pdf(theta)); }

DistSpec make_dist(const std::string& family, const std::map<std::string, double>& params) {
  if (family == "exponential") {
    double rate = require(params, family, "rate");
    require_positive(family, "rate", rate);
    return Exponential{rate};
  }
  if (family == "gamma") {
    double rate = require(params, family, "rate");
    double shape = require(params, family, "shape");
    require_positive(family, "rate", rate);
    require_positive(family, "shape", shape);
    return Gamma{rate, shape};
  }
  if (family == "inverse_gamma") {
    double scale = require(params, family, "scale");
    double shape = require(params, family, "shape");
    require_positive(family, "scale", scale);
    require_positive(family, "shape", shape);
    return InverseGamma{scale, shape};
  }
  if (family == "lognormal") {
    double mu = require(params, family, "mu");
    double sigma2 = require(params, family, "sigma2");
    require_positive(family, "sigma2", sigma2);
    return LogNormal{mu, sigma2};
  }
  if (family == "normal") {
    double mu = require(params, family, "mu");
    double sigma2 = require(params, family, "sigma2");
    require_positive(family, "sigma2", sigma2);
    return Normal{mu, sigma2};
  }
  if (family == "beta") {
    double a = require(params, family, "a");
    double b = require(params, family, "b");
    require_positive(family, "a", a);
    require_positive(family, "b", b);
    return Beta{a, b};
  }
  if (family == "dirac") {
    return Dirac{require(params, family, "point")};
  }
  throw ConfigError("unknown distribution family \"" + family + "\"");
}

DistSpec ThetaKernel::at(const Theta& theta) const {
  std::map<std::string, double> values;
  for (const auto& [key, expr] : params) values[key] = expr.eval(theta);
  try {
    return make_dist(family, values);
  } catch (const ConfigError& e) {
    throw ModelError("kernel at theta=" + to_string(theta) + ": " + e.what());
  }
}

DistSpec CmrpModel::interarrival_at(const Theta& theta) const {
  return interarrival.at(theta);
}

double CmrpModel::premium_rate(const Theta& theta) const {
  double c = premium.eval(theta);
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ModelError("premium rate must be positive; got " + std::to_string(c) +
                     " at theta=" + to_string(theta));
  }
  return c;
}

double ClaimTilt::log_f(double x) const {
  return std::visit(
      [&](const auto& rep) -> double {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, UnitTilt>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, EsscherTilt>) {
          return rep.r * x - rep.log_norm;
        } else {
          return grid_interp(rep.x, rep.log_f, x) - rep.log_renorm;
        }
      },
      rep_);
}

double MixReweight::log_xi(const MixingSpec& base, const Theta& theta) const {
  return std::visit(
      [&](const auto& rep) -> double {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, UnitReweight>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, DensityRatioReweight>) {
          if (rep.target.dim() != base.dim()) {
            throw InvalidReweight("reweight target dimension " +
                                  std::to_string(rep.target.dim()) +
                                  " does not match the mixing dimension " +
                                  std::to_string(base.dim()));
          }
          double v = 0.0;
          for (int i = 0; i < base.dim(); ++i) {
            const double coord = i == 0 ? theta.x1 : theta.x2;
            v += rn_log_ratio(rep.target.components[i], base.components[i], coord);
          }
          return v;
        } else {
          if (base.dim() != 1) {
            throw InvalidReweight("grid reweights are only supported for 1-d mixing");
          }
          return grid_interp(rep.x, rep.log_xi, theta.x1) - rep.log_renorm;
        }
      },
      rep_);
}

ValidationReport validate_tilt(const CmrpModel& model, const ClaimTilt& tilt, std::size_t n_mc,
                               double tol) {
  ValidationReport rep;
  rep.tolerance = tol;
  if (tilt.is_unit()) {
    rep.estimate = 1.0;
    rep.method = "exact";
    rep.passed = true;
    return rep;
  }
  auto f = [&](double x) {
    const double lf = tilt.log_f(x);
    if (!(lf > -kInf)) {
      throw InvalidTilt("claim tilt vanishes at x=" + std::to_string(x));
    }
    return std::exp(lf);
  };
  if (support(model.claims) != SupportKind::point) {
    QuadratureResult q = expect(model.claims, f);
    rep.estimate = q.value;
    rep.error_bound = q.error;
    rep.method = "quadrature";
  } else {
    RngStream rng(0x7111'beef, 0);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n_mc; ++i) {
      const double v = f(sample(model.claims, rng));
      sum += v;
      sumsq += v * v;
    }
    const double n = static_cast<double>(n_mc);
    rep.estimate = sum / n;
    rep.error_bound = std::sqrt(std::max(0.0, sumsq / n - rep.estimate * rep.estimate) / n);
    rep.method = "monte_carlo";
  }
  rep.passed = std::abs(rep.estimate - 1.0) <= tol;
  return rep;
}

ValidationReport validate_reweight(const CmrpModel& model, const MixReweight& rw, double tol) {
  ValidationReport rep;
  rep.tolerance = tol;
  if (rw.is_unit()) {
    rep.estimate = 1.0;
    rep.method = "exact";
    rep.passed = true;
    return rep;
  }
  const MixingSpec& mixing = model.mixing;
  auto xi1 = [&](double t1) {
    Theta th{t1, 0.0, 1};
    return std::exp(rw.log_xi(mixing, th));
  };
  QuadratureResult q;
  if (mixing.dim() == 1) {
    q = expect(mixing.components[0], xi1);
  } else {
    auto inner = [&](double t1) {
      auto xi2 = [&](double t2) {
        Theta th{t1, t2, 2};
        return std::exp(rw.log_xi(mixing, th));
      };
      return expect(mixing.components[1], xi2).value;
    };
    q = expect(mixing.components[0], inner);
  }
  rep.estimate = q.value;
  rep.error_bound = q.error;
  rep.method = "quadrature";
  rep.passed = std::abs(rep.estimate - 1.0) <= tol;
  return rep;
}

ClaimTilt esscher_tilt(const CmrpModel& model, double r) {
  if (r == 0.0) return ClaimTilt(UnitTilt{});
  const double m = mgf(model.claims, r);  // DivergentMgf propagates
  return ClaimTilt(EsscherTilt{r, std::log(m)});
}

double poissonization_alpha(const CmrpModel& model, const Expr& rho, const Theta& theta) {
  const double r = rho.eval(theta);
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw ModelError("rho(theta) must be positive and finite; got " + std::to_string(r) +
                     " at theta=" + to_string(theta));
  }
  const double m = mean(model.interarrival_at(theta));
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw ModelError("interarrival mean is not positive and finite at theta=" +
                     to_string(theta));
  }
  return std::log(r) + std::log(m);
}

double rho_from_alpha(const CmrpModel& model, double alpha, const Theta& theta) {
  const double m = mean(model.interarrival_at(theta));
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw ModelError("interarrival mean is not positive and finite at theta=" +
                     to_string(theta));
  }
  return std::exp(alpha) / m;
}

}  // namespace cmrp
