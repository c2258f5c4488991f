#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cmrp/errors.hpp"
#include "cmrp/simulate.hpp"

using namespace cmrp;

namespace {

CmrpModel dirac_exp_model(double theta0 = 1.0) {
  CmrpModel m;
  m.mixing.components = {Dirac{theta0}};
  m.interarrival.family = "exponential";
  m.interarrival.params["rate"] = Expr::parse("theta");
  m.claims = Exponential{2.0};
  m.premium = Expr::constant(1.0);
  return m;
}

CmrpModel gamma_mixed_model() {
  CmrpModel m;
  m.mixing.components = {Gamma{2.0, 2.0}};
  m.interarrival.family = "exponential";
  m.interarrival.params["rate"] = Expr::parse("theta");
  m.claims = Exponential{2.0};
  m.premium = Expr::constant(1.0);
  return m;
}

}  // namespace

TEST_CASE("path structure invariants") {
  const CmrpModel m = gamma_mixed_model();
  RngStream rng(11, 0);
  for (int k = 0; k < 50; ++k) {
    const Path p = sample_path(m, 10.0, rng);
    REQUIRE(p.interarrivals.size() == p.arrivals.size());
    REQUIRE(p.claims.size() == p.arrivals.size());
    double t = 0.0;
    for (std::size_t n = 0; n < p.jumps(); ++n) {
      CHECK(p.interarrivals[n] > 0.0);
      CHECK(p.claims[n] > 0.0);
      t += p.interarrivals[n];
      CHECK(p.arrivals[n] == t);  // exact running sum
      CHECK(p.arrivals[n] <= p.horizon);
    }
  }
}

TEST_CASE("zero horizon gives an empty path") {
  const CmrpModel m = dirac_exp_model();
  RngStream rng(5, 0);
  const Path p = sample_path(m, 0.0, rng);
  CHECK(p.jumps() == 0);
  CHECK(count_at(p, 0.0) == 0);
  CHECK(aggregate_at(p, 0.0) == 0.0);
}

TEST_CASE("count mean matches the Poisson rate under Dirac mixing") {
  const CmrpModel m = dirac_exp_model(1.0);
  const std::size_t n = 100000;
  double sum = 0.0;
  std::vector<double> counts(n);
  for_each_path(m, n, 10.0, 123, 0,
                [&](std::size_t i, const Path& p) { counts[i] = p.jumps(); });
  for (double c : counts) sum += c;
  const double mean_n = sum / static_cast<double>(n);
  const double se = std::sqrt(10.0 / static_cast<double>(n));  // Poisson variance 10
  CHECK(std::abs(mean_n - 10.0) < 3.0 * se);
}

TEST_CASE("count_at / aggregate_at / reserve_at") {
  Path p;
  p.theta = Theta{1.0, 0.0, 1};
  p.arrivals = {0.5, 1.2};
  p.interarrivals = {0.5, 0.7};
  p.claims = {3.0, 4.0};
  p.horizon = 2.0;

  CHECK(count_at(p, 0.4) == 0);
  CHECK(aggregate_at(p, 0.4) == 0.0);
  CHECK(count_at(p, 1.0) == 1);
  CHECK(aggregate_at(p, 1.0) == 3.0);
  // jump included at the jump time (right continuity)
  CHECK(count_at(p, 1.2) == 2);
  CHECK(aggregate_at(p, 1.2) == 7.0);
  CHECK_THROWS_AS(count_at(p, 2.5), DomainError);
  CHECK_THROWS_AS(count_at(p, -0.1), DomainError);

  const CmrpModel m = dirac_exp_model();
  // u + c t - S_t with c = 1
  CHECK(reserve_at(p, m, 10.0, 2.0) == doctest::Approx(10.0 + 2.0 - 7.0));
  CHECK(reserve_at(p, m, 10.0, 0.0) == 10.0);
}

TEST_CASE("reserve with no claims grows at the premium rate") {
  CmrpModel m = dirac_exp_model();
  m.premium = Expr::constant(2.0);
  Path p;
  p.theta = Theta{1.0, 0.0, 1};
  p.horizon = 5.0;
  CHECK(reserve_at(p, m, 0.0, 5.0) == 10.0);
  CHECK(!ruin_time(p, m, 0.0).has_value());
}

TEST_CASE("ruin_time scans jump times") {
  const CmrpModel m = dirac_exp_model();
  Path p;
  p.theta = Theta{1.0, 0.0, 1};
  p.arrivals = {1.0};
  p.interarrivals = {1.0};
  p.claims = {2.0};
  p.horizon = 10.0;
  // u=0, c=1: reserve at T_1 is 1 - 2 < 0
  auto t = ruin_time(p, m, 0.0);
  REQUIRE(t.has_value());
  CHECK(*t == 1.0);
  // u=5 survives the single claim
  CHECK(!ruin_time(p, m, 5.0).has_value());
}

TEST_CASE("N_t equals the brute count at random probes") {
  const CmrpModel m = gamma_mixed_model();
  RngStream rng(77, 0);
  RngStream probe_rng(78, 0);
  for (int k = 0; k < 100; ++k) {
    const Path p = sample_path(m, 8.0, rng);
    const double t = 8.0 * probe_rng.uniform01();
    int brute = 0;
    for (double a : p.arrivals) brute += a <= t ? 1 : 0;
    CHECK(count_at(p, t) == brute);
  }
}

TEST_CASE("explosion guard") {
  const CmrpModel m = dirac_exp_model(1.0);
  RngStream rng(3, 0);
  CHECK_THROWS_AS(sample_path(m, 1000.0, rng, 100), ExplosionGuard);
}

TEST_CASE("parallel determinism across worker counts") {
  const CmrpModel m = gamma_mixed_model();
  const auto p1 = simulate_paths(m, 500, 5.0, 42, 1);
  const auto p2 = simulate_paths(m, 500, 5.0, 42, 2);
  const auto p8 = simulate_paths(m, 500, 5.0, 42, 8);
  REQUIRE(p1.size() == p2.size());
  REQUIRE(p1.size() == p8.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].theta.x1 == p2[i].theta.x1);
    CHECK(p1[i].theta.x1 == p8[i].theta.x1);
    REQUIRE(p1[i].arrivals == p2[i].arrivals);  // bitwise identical
    REQUIRE(p1[i].arrivals == p8[i].arrivals);
    REQUIRE(p1[i].claims == p8[i].claims);
  }
}

TEST_CASE("conditional interarrival law matches the kernel (KS)") {
  const CmrpModel m = dirac_exp_model(1.3);
  std::vector<double> ws;
  RngStream rng(2025, 1);
  while (ws.size() < 100000) {
    const Path p = sample_path(m, 50.0, rng);
    ws.insert(ws.end(), p.interarrivals.begin(), p.interarrivals.end());
  }
  ws.resize(100000);
  std::sort(ws.begin(), ws.end());
  const DistSpec k = Exponential{1.3};
  double d = 0.0;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const double f = cdf(k, ws[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / ws.size()));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / ws.size() - f));
  }
  CHECK(d < 1.63 / std::sqrt(100000.0));
}

TEST_CASE("unconditional claim law is mixing-free (KS)") {
  const CmrpModel m = gamma_mixed_model();
  std::vector<double> xs;
  RngStream rng(2026, 1);
  while (xs.size() < 100000) {
    const Path p = sample_path(m, 20.0, rng);
    if (!p.claims.empty()) xs.push_back(p.claims.front());  // X_1 across paths
  }
  std::sort(xs.begin(), xs.end());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(m.claims, xs[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / xs.size()));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / xs.size() - f));
  }
  CHECK(d < 1.63 / std::sqrt(100000.0));
}

TEST_CASE("paths CSV round trip") {
  const CmrpModel m = gamma_mixed_model();
  // horizon 1 keeps a few zero-jump paths in the set
  const auto paths = simulate_paths(m, 200, 1.0, 9, 0);
  std::ostringstream os;
  write_paths_csv(os, paths);
  std::istringstream is(os.str());
  const auto back = read_paths_csv(is, 1.0);
  REQUIRE(back.size() == paths.size());
  bool saw_empty = false;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    REQUIRE(back[i].jumps() == paths[i].jumps());
    saw_empty |= paths[i].jumps() == 0;
    for (std::size_t n = 0; n < paths[i].jumps(); ++n) {
      // %.12g round trip keeps ~12 significant digits
      CHECK(back[i].arrivals[n] == doctest::Approx(paths[i].arrivals[n]).epsilon(1e-11));
      CHECK(back[i].claims[n] == doctest::Approx(paths[i].claims[n]).epsilon(1e-11));
    }
  }
  CHECK(saw_empty);
}
