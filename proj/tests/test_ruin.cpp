#include <doctest.h>

#include <cmath>

#include "cmrp/errors.hpp"
#include "cmrp/ruin.hpp"

using namespace cmrp;

namespace {

CmrpModel model_exp(DistSpec mixing, double claim_rate = 2.0, double premium = 1.0) {
  CmrpModel m;
  m.mixing.components = {mixing};
  m.interarrival.family = "exponential";
  m.interarrival.params["rate"] = Expr::parse("theta");
  m.claims = Exponential{claim_rate};
  m.premium = Expr::constant(premium);
  return m;
}

}  // namespace

TEST_CASE("adjustment coefficient, exp/exp closed form") {
  const CmrpModel m = model_exp(Dirac{1.0});
  const double R = adjustment_coefficient(m, Theta{1.0, 0.0, 1});
  CHECK(R == doctest::Approx(1.0).epsilon(1e-12));
  // substituted back: M_X(R) E[e^{-cRW}] = 2 * 1/2 = 1
  const double resid =
      mgf(m.claims, R) * mgf(m.interarrival_at(Theta{1.0, 0.0, 1}), -R) - 1.0;
  CHECK(std::abs(resid) <= 1e-12);

  // monotone sweep: R = eta - theta/c decreases to 0 at the boundary
  double prev = 2.0;
  for (double th : {1.0, 1.5, 1.9}) {
    const double r = adjustment_coefficient(m, Theta{th, 0.0, 1});
    CHECK(r == doctest::Approx(2.0 - th).epsilon(1e-9));
    CHECK(r < prev);
    prev = r;
  }
  // net profit fails at theta = c eta = 2
  CHECK_THROWS_AS(adjustment_coefficient(m, Theta{2.0, 0.0, 1}), NoPositiveRoot);
  CHECK_THROWS_AS(adjustment_coefficient(m, Theta{2.5, 0.0, 1}), NoPositiveRoot);
}

TEST_CASE("adjustment coefficient with a gamma kernel") {
  CmrpModel m = model_exp(Dirac{1.0});
  m.interarrival.family = "gamma";
  m.interarrival.params.clear();
  m.interarrival.params["rate"] = Expr::constant(2.0);
  m.interarrival.params["shape"] = Expr::constant(2.0);
  const double R = adjustment_coefficient(m, Theta{1.0, 0.0, 1});
  const double resid =
      mgf(m.claims, R) * mgf(m.interarrival_at(Theta{1.0, 0.0, 1}), -R) - 1.0;
  CHECK(R > 0.0);
  CHECK(std::abs(resid) <= 1e-12);
}

TEST_CASE("psi_theta") {
  const CmrpModel m = model_exp(Dirac{1.0});
  const Theta th{1.0, 0.0, 1};
  CHECK(psi_theta(m, th, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(psi_theta(m, th, 2.0) == doctest::Approx(0.06766764161830635).epsilon(1e-10));
  // decay at large reserves
  CHECK(psi_theta(m, th, 50.0) < 1e-20);
  // net-profit failure: ruin certain
  CHECK(psi_theta(m, Theta{2.0, 0.0, 1}, 3.0) == 1.0);
  CHECK(psi_theta(m, Theta{2.5, 0.0, 1}, 3.0) == 1.0);
  // nonincreasing in u
  double prev = 1.1;
  for (double u = 0.0; u <= 10.0; u += 0.5) {
    const double v = psi_theta(m, th, u);
    CHECK(v <= prev);
    prev = v;
  }
  // closed form is claims-specific
  CmrpModel bad = m;
  bad.claims = Gamma{2.0, 2.0};
  CHECK_THROWS_AS(psi_theta(bad, th, 1.0), UnsupportedClaimLaw);
}

TEST_CASE("psi_mixed: Dirac mixing collapses to psi_theta") {
  const CmrpModel m = model_exp(Dirac{1.0});
  const RuinResult r = psi_mixed(m, 2.0);
  CHECK(r.psi == psi_theta(m, Theta{1.0, 0.0, 1}, 2.0));
  CHECK(r.method == RuinMethod::closed_form);
}

TEST_CASE("psi_mixed: gamma mixing against the split oracle") {
  const CmrpModel m = model_exp(Gamma{4.0, 2.0});
  // oracle values computed with an independent composite rule
  const RuinResult r0 = psi_mixed(m, 0.0);
  CHECK(r0.psi == doctest::Approx(0.24958067171512185).epsilon(1e-7));
  const RuinResult r1 = psi_mixed(m, 1.0);
  CHECK(r1.psi == doctest::Approx(0.07824803330389292).epsilon(1e-7));
  CHECK(r1.method == RuinMethod::quadrature);

  // nonincreasing in u
  double prev = 1.1;
  for (double u = 0.0; u <= 10.0; u += 0.5) {
    const double v = psi_mixed(m, u).psi;
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("psi_monte_carlo") {
  const CmrpModel m = model_exp(Dirac{1.0});
  // enormous reserve: no ruin
  const RuinResult none = psi_monte_carlo(m, 1e6, 50.0, 2000, 7, 0);
  CHECK(none.psi == 0.0);

  // matches the closed form within 3 standard errors at a long horizon
  const RuinResult mc = psi_monte_carlo(m, 2.0, 200.0, 20000, 11, 0);
  const double closed = 0.06766764161830635;
  CHECK(std::abs(mc.psi - closed) <= 3.0 * mc.error_bound + 1e-3);
  CHECK(mc.psi <= closed + 3.0 * mc.error_bound);

  // deterministic given the seed
  const RuinResult again = psi_monte_carlo(m, 2.0, 200.0, 20000, 11, 0);
  CHECK(again.psi == mc.psi);
  // worker-count invariant
  const RuinResult w4 = psi_monte_carlo(m, 2.0, 200.0, 20000, 11, 4);
  CHECK(w4.psi == mc.psi);

  // nondecreasing in the horizon (same seed, nested horizons)
  const double h50 = psi_monte_carlo(m, 2.0, 50.0, 20000, 13, 0).psi;
  const double h100 = psi_monte_carlo(m, 2.0, 100.0, 20000, 13, 0).psi;
  CHECK(h50 <= h100);

  CHECK_THROWS_AS(psi_monte_carlo(m, 1.0, 0.0, 100, 1, 0), DomainError);
}
