#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cmrp/distributions.hpp"
#include "cmrp/errors.hpp"
#include "cmrp/quadrature.hpp"
#include "cmrp/rng.hpp"

using namespace cmrp;

namespace {

const std::vector<DistSpec> kContinuousPresets = {
    Exponential{2.0},        Gamma{2.0, 3.0},   Gamma{0.8, 0.8},  InverseGamma{3.0, 4.0},
    LogNormal{0.3, 0.4},     Normal{0.0, 0.5},  Beta{2.0, 2.5},   Gamma{50.0, 50.0},
    InverseGamma{49.0, 50.0}};

/// Kolmogorov-Smirnov distance of n samples against the model cdf.
double sampling_ks(const DistSpec& d, std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, 7);
  std::vector<double> xs(n);
  for (auto& x : xs) x = sample(d, rng);
  std::sort(xs.begin(), xs.end());
  double dist = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(d, xs[i]);
    dist = std::max(dist, std::abs(f - static_cast<double>(i) / n));
    dist = std::max(dist, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return dist;
}

QuadratureResult integrate_support(const DistSpec& d,
                                   const std::function<double(double)>& f) {
  switch (support(d)) {
    case SupportKind::positive_half_line:
      return integrate_to_inf(f, 0.0);
    case SupportKind::real_line:
      return integrate_real_line(f);
    case SupportKind::unit_interval:
      return integrate(f, 0.0, 1.0);
    default:
      return {};
  }
}

}  // namespace

TEST_CASE("pdf closed forms") {
  CHECK(pdf(Exponential{2.0}, 1.0) == doctest::Approx(0.2706705664732254).epsilon(1e-12));
  // shape-1 gamma coincides with the exponential of the same rate
  CHECK(pdf(Gamma{2.0, 1.0}, 0.5) == doctest::Approx(0.7357588823428847).epsilon(1e-12));
  CHECK(pdf(Gamma{2.0, 1.0}, 0.7) == doctest::Approx(pdf(Exponential{2.0}, 0.7)));
  CHECK(pdf(Beta{1.0, 1.0}, 0.3) == doctest::Approx(1.0));
  CHECK(pdf(Exponential{2.0}, -1.0) == 0.0);
  CHECK(log_pdf(Exponential{2.0}, -1.0) == -std::numeric_limits<double>::infinity());
  CHECK(pdf(Dirac{3.5}, 3.5) == 1.0);
  CHECK(pdf(Dirac{3.5}, 3.4) == 0.0);
}

TEST_CASE("cdf and survival") {
  CHECK(survival(Exponential{2.0}, 1.0) ==
        doctest::Approx(0.1353352832366127).epsilon(1e-14));
  CHECK(cdf(Exponential{2.0}, -1.0) == 0.0);
  CHECK(cdf(Gamma{2.0, 3.0}, -0.5) == 0.0);
  CHECK(cdf(Dirac{2.0}, 2.0) == 1.0);
  CHECK(cdf(Dirac{2.0}, 1.999) == 0.0);

  for (const DistSpec& d : kContinuousPresets) {
    for (double x : {-0.5, 0.1, 0.4, 0.9, 1.5, 4.0}) {
      CHECK(cdf(d, x) + survival(d, x) == 1.0);  // exact as computed
      CHECK(cdf(d, x) >= 0.0);
      CHECK(cdf(d, x) <= 1.0);
    }
    // nondecreasing
    double prev = 0.0;
    for (double x = 0.05; x < 6.0; x += 0.05) {
      const double c = cdf(d, x);
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("log_survival matches survival and handles deep tails") {
  CHECK(log_survival(Exponential{2.0}, 3.0) == doctest::Approx(-6.0));
  CHECK(log_survival(Gamma{2.0, 2.0}, 4.0) ==
        doctest::Approx(std::log(survival(Gamma{2.0, 2.0}, 4.0))).epsilon(1e-12));
  // far beyond double underflow of the survival itself
  const double ls = log_survival(Gamma{2.0, 2.0}, 400.0);
  CHECK(std::isfinite(ls));
  CHECK(ls < -700.0);
  CHECK(log_survival(Exponential{3.0}, 0.0) == 0.0);
}

TEST_CASE("density normalization by quadrature") {
  for (const DistSpec& d : kContinuousPresets) {
    const double total = integrate_support(d, [&](double x) { return pdf(d, x); }).value;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("mgf closed forms and errors") {
  CHECK(mgf(Exponential{2.0}, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(mgf(Gamma{3.0, 2.0}, 1.0) == doctest::Approx(2.25).epsilon(1e-14));
  for (const DistSpec& d : kContinuousPresets) CHECK(mgf(d, 0.0) == 1.0);
  CHECK_THROWS_AS(mgf(Exponential{2.0}, 2.0), DivergentMgf);
  CHECK_THROWS_AS(mgf(Exponential{2.0}, 2.5), DivergentMgf);
  CHECK_THROWS_AS(mgf(LogNormal{0.0, 1.0}, 0.1), DivergentMgf);
  CHECK_THROWS_AS(mgf(InverseGamma{2.0, 3.0}, 0.1), DivergentMgf);
  // one-sided MGFs are finite on the negative axis
  CHECK(mgf(LogNormal{0.0, 1.0}, -0.5) > 0.0);
  CHECK(mgf(InverseGamma{2.0, 3.0}, -0.5) > 0.0);
  CHECK(mgf(Dirac{3.5}, 2.0) == doctest::Approx(std::exp(7.0)));
}

TEST_CASE("mgf derivative at zero equals the mean") {
  const double h = 1e-4;
  const std::vector<DistSpec> two_sided = {Exponential{2.0}, Gamma{2.0, 3.0}, Normal{0.3, 0.4},
                                           Beta{2.0, 2.5}, Dirac{1.7}};
  for (const DistSpec& d : two_sided) {
    const double deriv = (mgf(d, h) - mgf(d, -h)) / (2.0 * h);
    CHECK(deriv == doctest::Approx(mean(d)).epsilon(1e-6));
  }
}

TEST_CASE("means") {
  CHECK(mean(Exponential{2.0}) == 0.5);
  CHECK(mean(Gamma{2.0, 3.0}) == 1.5);
  CHECK(mean(InverseGamma{3.0, 4.0}) == 1.0);
  CHECK(mean(Beta{2.0, 2.0}) == 0.5);
  CHECK(mean(LogNormal{0.0, 2.0}) == doctest::Approx(std::exp(1.0)));
  CHECK_THROWS_AS(mean(InverseGamma{3.0, 1.0}), ModelError);
}

TEST_CASE("sampling: deterministic draws and Dirac") {
  RngStream a(42, 3), b(42, 3);
  const DistSpec d = Gamma{2.0, 3.0};
  for (int i = 0; i < 100; ++i) CHECK(sample(d, a) == sample(d, b));
  RngStream r(1, 1);
  CHECK(sample(Dirac{3.5}, r) == 3.5);
  CHECK(sample(Dirac{3.5}, r) == 3.5);
}

TEST_CASE("sampling: empirical means") {
  const std::size_t n = 100000;
  RngStream rng(2024, 0);
  double sum_exp = 0.0, sum_beta = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum_exp += sample(Exponential{2.0}, rng);
  for (std::size_t i = 0; i < n; ++i) sum_beta += sample(Beta{2.0, 2.0}, rng);
  // 3 standard errors around the true means
  CHECK(std::abs(sum_exp / n - 0.5) < 3.0 * 0.5 / std::sqrt(double(n)));
  const double beta_sd = std::sqrt(0.05);  // var of Beta(2,2)
  CHECK(std::abs(sum_beta / n - 0.5) < 3.0 * beta_sd / std::sqrt(double(n)));
}

TEST_CASE("sampling: KS against the cdf") {
  const std::size_t n = 100000;
  const double threshold = 1.63 / std::sqrt(static_cast<double>(n));
  std::uint64_t seed = 99;
  for (const DistSpec& d : kContinuousPresets) {
    CHECK(sampling_ks(d, n, seed++) < threshold);
  }
}

TEST_CASE("rn_log_ratio") {
  CHECK(rn_log_ratio(Exponential{3.0}, Exponential{2.0}, 1.0) ==
        doctest::Approx(-0.5945348918918356).epsilon(1e-12));
  CHECK(rn_log_ratio(Exponential{3.0}, Exponential{3.0}, 0.7) == 0.0);
  // same law under the shape-1 convention: exactly zero
  CHECK(rn_log_ratio(Gamma{2.0, 1.0}, Exponential{2.0}, 0.7) == 0.0);
  CHECK_THROWS_AS(rn_log_ratio(Normal{0.0, 1.0}, Exponential{2.0}, 0.5),
                  NonEquivalentSupports);
  CHECK_THROWS_AS(rn_log_ratio(Beta{2.0, 2.0}, Exponential{2.0}, 0.5),
                  NonEquivalentSupports);
  CHECK_THROWS_AS(rn_log_ratio(Dirac{1.0}, Dirac{2.0}, 1.0), NonEquivalentSupports);
  CHECK_THROWS_AS(rn_log_ratio(Exponential{3.0}, Exponential{2.0}, -1.0), DomainError);

  // exp(ratio) * pdf(den) == pdf(num) pointwise
  const std::vector<std::pair<DistSpec, DistSpec>> pairs = {
      {Exponential{3.0}, Exponential{2.0}},
      {Gamma{2.0, 3.0}, Exponential{1.0}},
      {InverseGamma{49.0, 50.0}, Gamma{50.0, 50.0}},
      {Normal{0.3, 0.4}, Normal{0.0, 0.5}},
  };
  for (const auto& [num, den] : pairs) {
    for (double x : {0.2, 0.7, 1.3, 2.9}) {
      if (!in_support(num, x)) continue;
      const double lhs = std::exp(rn_log_ratio(num, den, x)) * pdf(den, x);
      CHECK(lhs == doctest::Approx(pdf(num, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("rn_log_ratio: importance weights have unit mean") {
  const std::size_t n = 100000;
  const std::vector<std::pair<DistSpec, DistSpec>> pairs = {
      {Exponential{3.0}, Exponential{2.0}},
      {Exponential{1.0}, Gamma{0.8, 0.8}},
      {InverseGamma{49.0, 50.0}, Gamma{50.0, 50.0}},
      {Normal{0.3, 0.4}, Normal{0.0, 0.5}},
      {Gamma{1.0, 2.0}, Gamma{1.5, 2.0}},
  };
  std::uint64_t seed = 7;
  for (const auto& [num, den] : pairs) {
    RngStream rng(seed++, 11);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = std::exp(rn_log_ratio(num, den, sample(den, rng)));
      sum += w;
      sumsq += w * w;
    }
    const double mean_w = sum / n;
    const double se = std::sqrt((sumsq / n - mean_w * mean_w) / n);
    CHECK(std::abs(mean_w - 1.0) < 3.0 * se);
  }
}

TEST_CASE("quadrature sanity") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0).value ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate_to_inf([](double x) { return std::exp(-x); }, 0.0).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_real_line([](double x) { return std::exp(-x * x / 2.0); }).value ==
        doctest::Approx(std::sqrt(2.0 * 3.14159265358979323846)).epsilon(1e-12));
}
