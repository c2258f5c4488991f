#include "cmrp/distributions.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cmrp/errors.hpp"
#include "cmrp/quadrature.hpp"
#include "special.hpp"

namespace cmrp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454836;

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

DistSpec canonical(const DistSpec& d) {
  if (const auto* g = std::get_if<Gamma>(&d); g && g->shape == 1.0) {
    return Exponential{g->rate};
  }
  return d;
}

/// MGF of a distribution with density, by quadrature over the support.
double mgf_by_quadrature(const DistSpec& d, double s) {
  auto f = [&](double x) { return std::exp(s * x) * pdf(d, x); };
  switch (support(d)) {
    case SupportKind::positive_half_line:
      return integrate_to_inf(f, 0.0).value;
    case SupportKind::real_line:
      return integrate_real_line(f).value;
    case SupportKind::unit_interval:
      return integrate(f, 0.0, 1.0).value;
    case SupportKind::point:
      return std::exp(s * std::get<Dirac>(d).point);
  }
  return 1.0;
}

[[noreturn]] void throw_divergent(const DistSpec& d, double s) {
  std::ostringstream os;
  os << "mgf of " << describe(d) << " diverges at s=" << s << " (requires s < "
     << mgf_abscissa(d) << ")";
  throw DivergentMgf(os.str());
}

}  // namespace

SupportKind support(const DistSpec& d) {
  return std::visit(Overload{
                        [](const Exponential&) { return SupportKind::positive_half_line; },
                        [](const Gamma&) { return SupportKind::positive_half_line; },
                        [](const InverseGamma&) { return SupportKind::positive_half_line; },
                        [](const LogNormal&) { return SupportKind::positive_half_line; },
                        [](const Normal&) { return SupportKind::real_line; },
                        [](const Beta&) { return SupportKind::unit_interval; },
                        [](const Dirac&) { return SupportKind::point; },
                    },
                    d);
}

bool in_support(const DistSpec& d, double x) {
  switch (support(d)) {
    case SupportKind::positive_half_line:
      return x > 0.0;
    case SupportKind::real_line:
      return std::isfinite(x);
    case SupportKind::unit_interval:
      return x > 0.0 && x < 1.0;
    case SupportKind::point:
      return x == std::get<Dirac>(d).point;
  }
  return false;
}

bool same_law(const DistSpec& a, const DistSpec& b) {
  const DistSpec ca = canonical(a);
  const DistSpec cb = canonical(b);
  if (ca.index() != cb.index()) return false;
  return std::visit(
      Overload{
          [&](const Exponential& x) { return x.rate == std::get<Exponential>(cb).rate; },
          [&](const Gamma& x) {
            const auto& y = std::get<Gamma>(cb);
            return x.rate == y.rate && x.shape == y.shape;
          },
          [&](const InverseGamma& x) {
            const auto& y = std::get<InverseGamma>(cb);
            return x.scale == y.scale && x.shape == y.shape;
          },
          [&](const LogNormal& x) {
            const auto& y = std::get<LogNormal>(cb);
            return x.mu == y.mu && x.sigma2 == y.sigma2;
          },
          [&](const Normal& x) {
            const auto& y = std::get<Normal>(cb);
            return x.mu == y.mu && x.sigma2 == y.sigma2;
          },
          [&](const Beta& x) {
            const auto& y = std::get<Beta>(cb);
            return x.a == y.a && x.b == y.b;
          },
          [&](const Dirac& x) { return x.point == std::get<Dirac>(cb).point; },
      },
      ca);
}

double log_pdf(const DistSpec& d, double x) {
  if (!in_support(d, x)) {
    // Dirac carries density 1 at its atom with respect to the counting measure.
    if (support(d) == SupportKind::point) return -kInf;
    return -kInf;
  }
  return std::visit(
      Overload{
          [&](const Exponential& e) { return std::log(e.rate) - e.rate * x; },
          [&](const Gamma& g) {
            return g.shape * std::log(g.rate) - std::lgamma(g.shape) +
                   (g.shape - 1.0) * std::log(x) - g.rate * x;
          },
          [&](const InverseGamma& ig) {
            return ig.shape * std::log(ig.scale) - std::lgamma(ig.shape) -
                   (ig.shape + 1.0) * std::log(x) - ig.scale / x;
          },
          [&](const LogNormal& ln) {
            const double z = std::log(x) - ln.mu;
            return -std::log(x) - 0.5 * (kLog2Pi + std::log(ln.sigma2)) -
                   z * z / (2.0 * ln.sigma2);
          },
          [&](const Normal& n) {
            const double z = x - n.mu;
            return -0.5 * (kLog2Pi + std::log(n.sigma2)) - z * z / (2.0 * n.sigma2);
          },
          [&](const Beta& b) {
            const double lbeta =
                std::lgamma(b.a) + std::lgamma(b.b) - std::lgamma(b.a + b.b);
            return (b.a - 1.0) * std::log(x) + (b.b - 1.0) * std::log1p(-x) - lbeta;
          },
          [&](const Dirac&) { return 0.0; },
      },
      d);
}

double pdf(const DistSpec& d, double x) { return std::exp(log_pdf(d, x)); }

double survival(const DistSpec& d, double x) {
  return std::visit(
      Overload{
          [&](const Exponential& e) { return x <= 0.0 ? 1.0 : std::exp(-e.rate * x); },
          [&](const Gamma& g) {
            return x <= 0.0 ? 1.0 : special::gamma_q(g.shape, g.rate * x);
          },
          [&](const InverseGamma& ig) {
            return x <= 0.0 ? 1.0 : special::gamma_p(ig.shape, ig.scale / x);
          },
          [&](const LogNormal& ln) {
            if (x <= 0.0) return 1.0;
            const double z = (std::log(x) - ln.mu) / std::sqrt(2.0 * ln.sigma2);
            return 0.5 * std::erfc(z);
          },
          [&](const Normal& n) {
            const double z = (x - n.mu) / std::sqrt(2.0 * n.sigma2);
            return 0.5 * std::erfc(z);
          },
          [&](const Beta& b) {
            if (x <= 0.0) return 1.0;
            if (x >= 1.0) return 0.0;
            return special::beta_inc(b.b, b.a, 1.0 - x);
          },
          [&](const Dirac& dd) { return x >= dd.point ? 0.0 : 1.0; },
      },
      d);
}

double cdf(const DistSpec& d, double x) { return 1.0 - survival(d, x); }

double log_survival(const DistSpec& d, double x) {
  if (const auto* e = std::get_if<Exponential>(&d)) {
    return x <= 0.0 ? 0.0 : -e->rate * x;
  }
  const double s = survival(d, x);
  if (s > 0.0) return std::log(s);
  if (const auto* g = std::get_if<Gamma>(&d)) {
    // Leading asymptotic of the upper tail once Q underflows.
    const double bx = g->rate * x;
    return (g->shape - 1.0) * std::log(bx) - bx - std::lgamma(g->shape);
  }
  return -kInf;
}

double mgf_abscissa(const DistSpec& d) {
  return std::visit(Overload{
                        [](const Exponential& e) { return e.rate; },
                        [](const Gamma& g) { return g.rate; },
                        [](const InverseGamma&) { return 0.0; },
                        [](const LogNormal&) { return 0.0; },
                        [](const Normal&) { return kInf; },
                        [](const Beta&) { return kInf; },
                        [](const Dirac&) { return kInf; },
                    },
                    d);
}

double mgf(const DistSpec& d, double s) {
  if (s == 0.0) return 1.0;
  return std::visit(
      Overload{
          [&](const Exponential& e) {
            if (s >= e.rate) throw_divergent(d, s);
            return e.rate / (e.rate - s);
          },
          [&](const Gamma& g) {
            if (s >= g.rate) throw_divergent(d, s);
            return std::exp(g.shape * (std::log(g.rate) - std::log(g.rate - s)));
          },
          [&](const InverseGamma&) {
            if (s > 0.0) throw_divergent(d, s);
            return mgf_by_quadrature(d, s);
          },
          [&](const LogNormal&) {
            if (s > 0.0) throw_divergent(d, s);
            return mgf_by_quadrature(d, s);
          },
          [&](const Normal& n) { return std::exp(n.mu * s + 0.5 * n.sigma2 * s * s); },
          [&](const Beta& b) {
            // Kummer series 1F1(a; a+b; s), convergent for all s.
            double term = 1.0, sum = 1.0;
            for (int k = 0; k < 10000; ++k) {
              term *= s * (b.a + k) / ((b.a + b.b + k) * (k + 1));
              sum += term;
              if (std::abs(term) < 1e-16 * std::abs(sum)) break;
            }
            return sum;
          },
          [&](const Dirac& dd) { return std::exp(s * dd.point); },
      },
      d);
}

double mean(const DistSpec& d) {
  return std::visit(
      Overload{
          [](const Exponential& e) { return 1.0 / e.rate; },
          [](const Gamma& g) { return g.shape / g.rate; },
          [](const InverseGamma& ig) -> double {
            if (ig.shape <= 1.0) {
              throw ModelError("inverse-gamma mean requires shape > 1; got shape=" +
                               std::to_string(ig.shape));
            }
            return ig.scale / (ig.shape - 1.0);
          },
          [](const LogNormal& ln) { return std::exp(ln.mu + 0.5 * ln.sigma2); },
          [](const Normal& n) { return n.mu; },
          [](const Beta& b) { return b.a / (b.a + b.b); },
          [](const Dirac& dd) { return dd.point; },
      },
      d);
}

double sample(const DistSpec& d, RngStream& rng) {
  return std::visit(
      Overload{
          [&](const Exponential& e) { return rng.exponential(e.rate); },
          [&](const Gamma& g) { return rng.gamma(g.rate, g.shape); },
          [&](const InverseGamma& ig) { return 1.0 / rng.gamma(ig.scale, ig.shape); },
          [&](const LogNormal& ln) {
            return std::exp(ln.mu + std::sqrt(ln.sigma2) * rng.normal());
          },
          [&](const Normal& n) { return n.mu + std::sqrt(n.sigma2) * rng.normal(); },
          [&](const Beta& b) { return rng.beta(b.a, b.b); },
          [&](const Dirac& dd) { return dd.point; },
      },
      d);
}

double rn_log_ratio(const DistSpec& num, const DistSpec& den, double x) {
  if (same_law(num, den)) {
    if (!in_support(den, x)) {
      throw DomainError("rn_log_ratio: x=" + std::to_string(x) + " outside the support of " +
                        describe(den));
    }
    return 0.0;
  }
  if (support(num) != support(den)) {
    throw NonEquivalentSupports("rn_log_ratio: " + describe(num) + " and " + describe(den) +
                                " have different supports");
  }
  if (support(num) == SupportKind::point) {
    throw NonEquivalentSupports("rn_log_ratio: point masses at distinct atoms");
  }
  if (!in_support(den, x)) {
    throw DomainError("rn_log_ratio: x=" + std::to_string(x) +
                      " outside the common support of " + describe(num) + " and " +
                      describe(den));
  }
  return log_pdf(num, x) - log_pdf(den, x);
}

std::string describe(const DistSpec& d) {
  std::ostringstream os;
  std::visit(Overload{
                 [&](const Exponential& e) { os << "Exponential(rate=" << e.rate << ")"; },
                 [&](const Gamma& g) {
                   os << "Gamma(rate=" << g.rate << ", shape=" << g.shape << ")";
                 },
                 [&](const InverseGamma& ig) {
                   os << "InverseGamma(scale=" << ig.scale << ", shape=" << ig.shape << ")";
                 },
                 [&](const LogNormal& ln) {
                   os << "LogNormal(mu=" << ln.mu << ", sigma2=" << ln.sigma2 << ")";
                 },
                 [&](const Normal& n) {
                   os << "Normal(mu=" << n.mu << ", sigma2=" << n.sigma2 << ")";
                 },
                 [&](const Beta& b) { os << "Beta(a=" << b.a << ", b=" << b.b << ")"; },
                 [&](const Dirac& dd) { os << "Dirac(point=" << dd.point << ")"; },
             },
             d);
  return os.str();
}

}  // namespace cmrp
