#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cmrp/distributions.hpp"
#include "cmrp/theta_expr.hpp"

namespace cmrp {

/// Mixing law of the heterogeneity parameter: a product of one or two
/// independent one-dimensional components.
struct MixingSpec {
  std::vector<DistSpec> components;

  int dim() const { return static_cast<int>(components.size()); }
  Theta sample(RngStream& rng) const;
  double log_pdf(const Theta& theta) const;
  double pdf(const Theta& theta) const;
};

/// Conditional law indexed by theta: a distribution family whose parameters
/// are expressions of theta.
struct ThetaKernel {
  std::string family;
  std::map<std::string, Expr> params;

  DistSpec at(const Theta& theta) const;
};

/// Builds a distribution from a family name and numeric parameters.
/// Family names and parameter keys match the scenario file syntax:
/// exponential(rate), gamma(rate, shape), inverse_gamma(scale, shape),
/// lognormal(mu, sigma2), normal(mu, sigma2), beta(a, b), dirac(point).
DistSpec make_dist(const std::string& family, const std::map<std::string, double>& params);

/// Base-measure model: mixing law, interarrival kernel, claim law, premium rate.
struct CmrpModel {
  MixingSpec mixing;
  ThetaKernel interarrival;
  DistSpec claims = Exponential{1.0};
  Expr premium = Expr::constant(1.0);

  DistSpec interarrival_at(const Theta& theta) const;
  double premium_rate(const Theta& theta) const;
};

// ---- claim tilt (the positive reweighting f with E[f(X1)] = 1) ----

struct UnitTilt {};
struct EsscherTilt {
  double r;
  double log_norm;  // log E[exp(r X1)] under the base claim law
};
struct GridTilt {
  std::vector<double> x;
  std::vector<double> log_f;  // piecewise linear between knots, flat outside
  double log_renorm = 0.0;    // subtracted so the mean-one constraint holds
};

class ClaimTilt {
 public:
  ClaimTilt() : rep_(UnitTilt{}) {}
  explicit ClaimTilt(UnitTilt u) : rep_(u) {}
  explicit ClaimTilt(EsscherTilt e) : rep_(e) {}
  explicit ClaimTilt(GridTilt g) : rep_(std::move(g)) {}

  double log_f(double x) const;
  bool is_unit() const { return std::holds_alternative<UnitTilt>(rep_); }
  const EsscherTilt* esscher() const { return std::get_if<EsscherTilt>(&rep_); }
  GridTilt* grid() { return std::get_if<GridTilt>(&rep_); }
  const GridTilt* grid() const { return std::get_if<GridTilt>(&rep_); }

 private:
  std::variant<UnitTilt, EsscherTilt, GridTilt> rep_;
};

// ---- mixing reweight (xi with xi > 0 a.s. and E[xi(Theta)] = 1) ----

struct UnitReweight {};
struct DensityRatioReweight {
  MixingSpec target;
};
struct GridReweight {
  std::vector<double> x;
  std::vector<double> log_xi;
  double log_renorm = 0.0;
};

class MixReweight {
 public:
  MixReweight() : rep_(UnitReweight{}) {}
  explicit MixReweight(UnitReweight u) : rep_(u) {}
  explicit MixReweight(DensityRatioReweight d) : rep_(std::move(d)) {}
  explicit MixReweight(GridReweight g) : rep_(std::move(g)) {}

  double log_xi(const MixingSpec& base, const Theta& theta) const;
  bool is_unit() const { return std::holds_alternative<UnitReweight>(rep_); }
  const DensityRatioReweight* density_ratio() const {
    return std::get_if<DensityRatioReweight>(&rep_);
  }
  GridReweight* grid() { return std::get_if<GridReweight>(&rep_); }

 private:
  std::variant<UnitReweight, DensityRatioReweight, GridReweight> rep_;
};

// ---- target interarrival kernel of the measure change ----

struct IdentityTarget {};
struct ExprTarget {
  ThetaKernel kernel;
};
/// Exponentially tilted base kernel with tilt -(kappa_theta(r) + c(theta) r);
/// the tilted law is computed analytically for exponential and gamma bases.
struct EsscherTarget {
  double r;
};

struct MeasureChange {
  ClaimTilt tilt;
  MixReweight reweight;
  std::variant<IdentityTarget, ExprTarget, EsscherTarget> target;
  std::optional<Expr> rho;  // set when the target is Exponential(rho(theta))

  DistSpec target_at(const CmrpModel& model, const Theta& theta) const;
  bool has_kernel_change() const { return !std::holds_alternative<IdentityTarget>(target); }
};

// ---- validation of the admissibility constraints ----

struct ValidationReport {
  double estimate = 0.0;
  double error_bound = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string method;  // "quadrature" or "monte_carlo"
};

/// Checks E[f(X1)] = 1 under the base claim law. Quadrature when the claim
/// density is available (always, for the shipped families); n_mc is the
/// Monte Carlo fallback size.
ValidationReport validate_tilt(const CmrpModel& model, const ClaimTilt& tilt,
                               std::size_t n_mc = 100000, double tol = 1e-6);

/// Checks E[xi(Theta)] = 1 under the base mixing law.
ValidationReport validate_reweight(const CmrpModel& model, const MixReweight& rw,
                                   double tol = 1e-6);

/// f(x) = exp(r x) / E[exp(r X1)]; mean-one by construction.
ClaimTilt esscher_tilt(const CmrpModel& model, double r);

/// alpha(theta) = ln rho(theta) + ln E[W1 | theta]; the exponent that turns
/// the interarrival kernel into Exponential(rho(theta)).
double poissonization_alpha(const CmrpModel& model, const Expr& rho, const Theta& theta);

/// Inverse of the above: rho(theta) = exp(alpha(theta)) / E[W1 | theta].
double rho_from_alpha(const CmrpModel& model, double alpha, const Theta& theta);

}  // namespace cmrp
