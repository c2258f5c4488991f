#pragma once

#include <string>
#include <variant>

#include "cmrp/rng.hpp"

namespace cmrp {

// Parameter conventions, fixed repo-wide:
//   Gamma(rate b, shape a), so Gamma(b, 1) is the same law as Exponential(b).
//   InverseGamma(scale b, shape a) with density proportional to x^-(a+1) e^(-b/x).
//   LogNormal/Normal take (mu, sigma2) with sigma2 the variance parameter.

struct Exponential {
  double rate;
};
struct Gamma {
  double rate;
  double shape;
};
struct InverseGamma {
  double scale;
  double shape;
};
struct LogNormal {
  double mu;
  double sigma2;
};
struct Normal {
  double mu;
  double sigma2;
};
struct Beta {
  double a;
  double b;
};
struct Dirac {
  double point;
};

using DistSpec =
    std::variant<Exponential, Gamma, InverseGamma, LogNormal, Normal, Beta, Dirac>;

enum class SupportKind { positive_half_line, real_line, unit_interval, point };

SupportKind support(const DistSpec& d);
bool in_support(const DistSpec& d, double x);

/// True when the two specs describe the same law (Gamma(b,1) == Exponential(b)).
bool same_law(const DistSpec& a, const DistSpec& b);

double pdf(const DistSpec& d, double x);
double log_pdf(const DistSpec& d, double x);  // -inf outside the support

/// survival is the accurately computed tail; cdf is defined as 1 - survival so
/// the two always sum to one exactly as computed.
double survival(const DistSpec& d, double x);
double cdf(const DistSpec& d, double x);
double log_survival(const DistSpec& d, double x);

/// E[exp(sX)]. Throws DivergentMgf at or beyond the abscissa of convergence.
double mgf(const DistSpec& d, double s);
/// Supremum of the convergence region (may be +inf).
double mgf_abscissa(const DistSpec& d);

double mean(const DistSpec& d);

double sample(const DistSpec& d, RngStream& rng);

/// log of dNum/dDen at x. Requires equivalent supports; x must lie in the
/// common support.
double rn_log_ratio(const DistSpec& num, const DistSpec& den, double x);

std::string describe(const DistSpec& d);

}  // namespace cmrp
