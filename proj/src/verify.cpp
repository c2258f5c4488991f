#include "cmrp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cmrp/change_of_measure.hpp"
#include "cmrp/errors.hpp"
#include "cmrp/quadrature.hpp"
#include "cmrp/ruin.hpp"
#include "cmrp/simulate.hpp"
#include "csv_util.hpp"

namespace cmrp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct MeanStats {
  double mean = 0.0;
  double se = 0.0;
};

/// Sequential reduction in index order so results do not depend on the
/// worker count.
MeanStats mean_stats(const std::vector<double>& xs) {
  long double sum = 0.0L;
  for (double x : xs) sum += x;
  const double n = static_cast<double>(xs.size());
  const double mean = static_cast<double>(sum / n);
  long double ss = 0.0L;
  for (double x : xs) {
    const long double d = x - mean;
    ss += d * d;
  }
  MeanStats st;
  st.mean = mean;
  st.se = xs.size() > 1 ? std::sqrt(static_cast<double>(ss) / (n - 1.0) / n) : 0.0;
  return st;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Weighted one-sample Kolmogorov-Smirnov distance against a reference cdf,
/// with self-normalized weights.
double weighted_ks(std::vector<std::pair<double, double>> value_weight,
                   const std::function<double(double)>& ref_cdf) {
  std::sort(value_weight.begin(), value_weight.end());
  long double total = 0.0L;
  for (const auto& [v, w] : value_weight) total += w;
  long double cum = 0.0L;
  double d = 0.0;
  for (const auto& [v, w] : value_weight) {
    const double f = ref_cdf(v);
    d = std::max(d, std::abs(static_cast<double>(cum / total) - f));
    cum += w;
    d = std::max(d, std::abs(static_cast<double>(cum / total) - f));
  }
  return d;
}

/// Composite Simpson rule; deliberately a different integration route from
/// the adaptive rule used inside the library.
double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  if (n % 2 == 1) ++n;
  const double h = (b - a) / static_cast<double>(n);
  long double sum = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) {
    const double x = a + h * static_cast<double>(i);
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(x);
  }
  return static_cast<double>(sum * h / 3.0L);
}

std::string scenario_tag(const Scenario& s) { return s.name; }

const MixingSpec& target_mixing_or_base(const Scenario& s) {
  if (const auto* dr = s.change.reweight.density_ratio()) return dr->target;
  return s.model.mixing;
}

void require_change(const Scenario& s, const std::string& check) {
  if (!s.has_change) {
    throw DegenerateCheck(check + " requires a scenario with a measure change; \"" + s.name +
                          "\" has none");
  }
}

}  // namespace

VerifyReport make_report(std::string name, double estimate, double std_error, double target,
                         double tolerance, std::size_t n_paths, std::uint64_t seed) {
  VerifyReport r;
  r.check_name = std::move(name);
  r.estimate = estimate;
  r.std_error = std_error;
  r.target = target;
  r.tolerance = tolerance;
  r.n_paths = n_paths;
  r.seed = seed;
  r.passed = std::abs(estimate - target) <= std::max(tolerance, 3.0 * std_error);
  return r;
}

VerifyReport check_normalization(const Scenario& s, double t, std::size_t n_paths,
                                 std::uint64_t seed, unsigned workers) {
  require_change(s, "check_normalization");
  std::vector<double> weights(n_paths);
  for_each_path(s.model, n_paths, t, seed, workers, [&](std::size_t i, const Path& p) {
    weights[i] = std::exp(log_density(s.change, s.model, p, t).log_value);
  });
  const MeanStats st = mean_stats(weights);
  return make_report("normalization[" + scenario_tag(s) + ",t=" + g12(t) + "]", st.mean,
                     st.se, 1.0, kProbabilityTolerance, n_paths, seed);
}

namespace {

std::vector<VerifyReport> martingale_reports(const Scenario& s, double u, double t,
                                             const std::vector<double>& w_u,
                                             const std::vector<double>& w_t,
                                             const std::vector<int>& n_u,
                                             const std::vector<double>& s_u,
                                             std::size_t n_paths, std::uint64_t seed) {
  const double median_su = median_of(s_u);
  struct Event {
    std::string label;
    std::function<bool(std::size_t)> in;
  };
  const std::vector<Event> events = {
      {"N0", [&](std::size_t i) { return n_u[i] == 0; }},
      {"Nge2", [&](std::size_t i) { return n_u[i] >= 2; }},
      {"S_le_median", [&](std::size_t i) { return s_u[i] <= median_su; }},
  };
  std::vector<VerifyReport> out;
  std::vector<double> diff(n_paths);
  for (const Event& ev : events) {
    for (std::size_t i = 0; i < n_paths; ++i) {
      diff[i] = ev.in(i) ? (w_t[i] - w_u[i]) : 0.0;
    }
    const MeanStats st = mean_stats(diff);
    out.push_back(make_report("martingale[" + scenario_tag(s) + ",u=" + g12(u) +
                                  ",t=" + g12(t) + "," + ev.label + "]",
                              st.mean, st.se, 0.0, kProbabilityTolerance, n_paths, seed));
  }
  return out;
}

}  // namespace

std::vector<VerifyReport> check_martingale(const Scenario& s, double u, double t,
                                           std::size_t n_paths, std::uint64_t seed,
                                           unsigned workers) {
  require_change(s, "check_martingale");
  if (!(u < t)) throw DomainError("check_martingale requires u < t");
  std::vector<double> w_u(n_paths), w_t(n_paths), s_u(n_paths);
  std::vector<int> n_u(n_paths);
  for_each_path(s.model, n_paths, t, seed, workers, [&](std::size_t i, const Path& p) {
    w_u[i] = std::exp(log_density(s.change, s.model, p, u).log_value);
    w_t[i] = std::exp(log_density(s.change, s.model, p, t).log_value);
    n_u[i] = count_at(p, u);
    s_u[i] = aggregate_at(p, u);
  });
  return martingale_reports(s, u, t, w_u, w_t, n_u, s_u, n_paths, seed);
}

std::vector<VerifyReport> check_scenario_core(const Scenario& s, std::size_t n_paths,
                                              std::uint64_t seed, unsigned workers) {
  require_change(s, "check_scenario_core");
  const double u = 1.0, t = 5.0;
  std::vector<double> w_u(n_paths), w_t(n_paths), s_u(n_paths);
  std::vector<int> n_u(n_paths);
  for_each_path(s.model, n_paths, t, seed, workers, [&](std::size_t i, const Path& p) {
    w_u[i] = std::exp(log_density(s.change, s.model, p, u).log_value);
    w_t[i] = std::exp(log_density(s.change, s.model, p, t).log_value);
    n_u[i] = count_at(p, u);
    s_u[i] = aggregate_at(p, u);
  });
  std::vector<VerifyReport> out;
  const MeanStats st_u = mean_stats(w_u);
  out.push_back(make_report("normalization[" + scenario_tag(s) + ",t=" + g12(u) + "]",
                            st_u.mean, st_u.se, 1.0, kProbabilityTolerance, n_paths, seed));
  const MeanStats st_t = mean_stats(w_t);
  out.push_back(make_report("normalization[" + scenario_tag(s) + ",t=" + g12(t) + "]",
                            st_t.mean, st_t.se, 1.0, kProbabilityTolerance, n_paths, seed));
  std::vector<VerifyReport> mart =
      martingale_reports(s, u, t, w_u, w_t, n_u, s_u, n_paths, seed);
  out.insert(out.end(), mart.begin(), mart.end());
  return out;
}

VerifyReport check_pushforward_claims(const Scenario& s, std::size_t n_samples,
                                      std::uint64_t seed) {
  require_change(s, "check_pushforward_claims");
  if (!s.claims_target) {
    throw DegenerateCheck("scenario \"" + s.name + "\" declares no analytic claims target");
  }
  std::vector<std::pair<double, double>> vw(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    RngStream rng(seed, i);
    const double x = sample(s.model.claims, rng);
    vw[i] = {x, std::exp(s.change.tilt.log_f(x))};
  }
  const DistSpec target = *s.claims_target;
  const double d = weighted_ks(std::move(vw), [&](double x) { return cdf(target, x); });
  const double threshold = kKsCritical / std::sqrt(static_cast<double>(n_samples));
  return make_report("claims_pushforward[" + scenario_tag(s) + "]", d, 0.0, 0.0, threshold,
                     n_samples, seed);
}

std::vector<VerifyReport> check_pushforward_counts(const Scenario& s, double t,
                                                   const std::vector<int>& ns,
                                                   std::size_t n_paths, std::uint64_t seed,
                                                   unsigned workers) {
  require_change(s, "check_pushforward_counts");
  if (!s.change.rho) {
    throw DegenerateCheck("count pushforward needs rho (a mixed-Poisson target)");
  }
  const MixingSpec& q_mix = target_mixing_or_base(s);
  if (q_mix.dim() != 1) {
    throw DegenerateCheck("count pushforward oracle requires 1-d mixing");
  }
  const Expr rho = *s.change.rho;

  std::vector<double> weights(n_paths);
  std::vector<int> counts(n_paths);
  for_each_path(s.model, n_paths, t, seed, workers, [&](std::size_t i, const Path& p) {
    weights[i] = std::exp(log_density(s.change, s.model, p, t).log_value);
    counts[i] = count_at(p, t);
  });

  std::vector<VerifyReport> out;
  std::vector<double> contrib(n_paths);
  for (int n : ns) {
    // Oracle: mixed-Poisson probability under the target mixing,
    // integral of e^{-rho t} (rho t)^n / n! against the target density.
    auto pmf = [&](double theta1) {
      const double lam = rho.eval(Theta{theta1, 0.0, 1}) * t;
      return std::exp(n * std::log(lam) - lam - std::lgamma(n + 1.0)) *
             pdf(q_mix.components[0], theta1);
    };
    const double oracle = integrate_to_inf(pmf, 0.0).value;
    for (std::size_t i = 0; i < n_paths; ++i) {
      contrib[i] = counts[i] == n ? weights[i] : 0.0;
    }
    const MeanStats st = mean_stats(contrib);
    out.push_back(make_report("counts_pushforward[" + scenario_tag(s) + ",t=" + g12(t) +
                                  ",n=" + std::to_string(n) + "]",
                              st.mean, st.se, oracle, kProbabilityTolerance, n_paths, seed));
  }
  return out;
}

VerifyReport check_pushforward_mixing(const Scenario& s, std::size_t n_samples,
                                      std::uint64_t seed) {
  require_change(s, "check_pushforward_mixing");
  if (!s.change.rho || !s.rho_target) {
    throw DegenerateCheck("mixing pushforward needs rho and an analytic rho target");
  }
  const Expr rho = *s.change.rho;
  std::vector<std::pair<double, double>> vw(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    RngStream rng(seed, i);
    const Theta theta = s.model.mixing.sample(rng);
    vw[i] = {rho.eval(theta), std::exp(s.change.reweight.log_xi(s.model.mixing, theta))};
  }
  const DistSpec target = *s.rho_target;
  const double d = weighted_ks(std::move(vw), [&](double x) { return cdf(target, x); });
  const double threshold = kKsCritical / std::sqrt(static_cast<double>(n_samples));
  return make_report("mixing_pushforward[" + scenario_tag(s) + "]", d, 0.0, 0.0, threshold,
                     n_samples, seed);
}

namespace {

const std::vector<double> kProbeTimes = {0.0, 0.7, 1.0, 2.5, 4.0, 5.0};

double max_abs_diff_over_paths(const Scenario& s, std::size_t n_paths, std::uint64_t seed,
                               unsigned workers, double horizon,
                               const std::function<double(const Path&, double)>& route_a,
                               const std::function<double(const Path&, double)>& route_b) {
  std::vector<double> max_diff(n_paths, 0.0);
  for_each_path(s.model, n_paths, horizon, seed, workers, [&](std::size_t i, const Path& p) {
    double m = 0.0;
    for (double t : kProbeTimes) {
      if (t > horizon) continue;
      m = std::max(m, std::abs(route_a(p, t) - route_b(p, t)));
    }
    max_diff[i] = m;
  });
  return *std::max_element(max_diff.begin(), max_diff.end());
}

}  // namespace

VerifyReport check_ga_iga_closed_form(const Scenario& s, std::size_t n_paths,
                                      std::uint64_t seed, unsigned workers) {
  require_change(s, "check_ga_iga_closed_form");
  const auto* base_mix = std::get_if<Gamma>(&s.model.mixing.components.at(0));
  const auto* dr = s.change.reweight.density_ratio();
  if (!base_mix || !dr || s.model.mixing.dim() != 1) {
    throw DegenerateCheck("closed form requires 1-d gamma mixing with a density-ratio reweight");
  }
  const auto* target_mix = std::get_if<InverseGamma>(&dr->target.components.at(0));
  if (!target_mix || !s.change.rho) {
    throw DegenerateCheck("closed form requires an inverse-gamma target mixing and rho");
  }
  const double b1 = base_mix->rate, a1 = base_mix->shape;
  const double b2 = target_mix->scale, a2 = target_mix->shape;
  const Expr rho = *s.change.rho;
  const double log_const = a2 * std::log(b2) - a1 * std::log(b1) + std::lgamma(a1) -
                           std::lgamma(a2);

  auto closed_form = [&](const Path& p, double t) {
    const double theta = p.theta.x1;
    const double rho_theta = rho.eval(p.theta);
    const int n = count_at(p, t);
    double sum_gamma = 0.0;
    for (int j = 0; j < n; ++j) {
      sum_gamma += s.change.tilt.log_f(p.claims[static_cast<std::size_t>(j)]);
    }
    return log_const + b1 * theta - b2 / theta - (a1 + a2) * std::log(theta) + sum_gamma +
           n * std::log(rho_theta / theta) - t * (rho_theta - theta);
  };
  auto generic = [&](const Path& p, double t) {
    return log_density(s.change, s.model, p, t).log_value;
  };
  const double d =
      max_abs_diff_over_paths(s, n_paths, seed, workers, 5.0, generic, closed_form);
  return make_report("ga_iga_closed_form[" + scenario_tag(s) + "]", d, 0.0, 0.0, 1e-10,
                     n_paths, seed);
}

VerifyReport check_poissonization_identity(const Scenario& s, std::size_t n_paths,
                                           std::uint64_t seed, unsigned workers) {
  require_change(s, "check_poissonization_identity");
  if (!s.change.rho) {
    throw DegenerateCheck("scenario \"" + s.name + "\" has no rho; nothing to poissonize");
  }
  const Expr rho = *s.change.rho;
  auto generic = [&](const Path& p, double t) {
    return log_density(s.change, s.model, p, t).log_value;
  };
  auto poissonized = [&](const Path& p, double t) {
    return log_density_poissonization(s.model, s.change.tilt, s.change.reweight, rho, p, t)
        .log_value;
  };
  const double d =
      max_abs_diff_over_paths(s, n_paths, seed, workers, 5.0, generic, poissonized);
  return make_report("poissonization_identity[" + scenario_tag(s) + "]", d, 0.0, 0.0, 1e-12,
                     n_paths, seed);
}

VerifyReport check_esscher_closed_form(const CmrpModel& model, double r, const Theta& theta,
                                       std::size_t n_paths, std::uint64_t seed,
                                       unsigned workers) {
  const MeasureChange mc = esscher_change(model, r);
  const double c = model.premium_rate(theta);
  std::vector<double> max_diff(n_paths, 0.0);
  const double horizon = 5.0;
  for_each_path_given_theta(model, theta, n_paths, horizon, seed, workers,
                            [&](std::size_t i, const Path& p) {
                              double m = 0.0;
                              for (double t : kProbeTimes) {
                                const double a =
                                    log_density_conditional(mc, model, p, t).log_value;
                                const double b =
                                    log_density_esscher_closed_form(model, r, theta, p, t);
                                m = std::max(m, std::abs(a - b));
                              }
                              max_diff[i] = m;
                            });
  const double d = *std::max_element(max_diff.begin(), max_diff.end());
  return make_report("esscher_closed_form[theta=" + g12(theta.x1) + ",c=" + g12(c) +
                         ",r=" + g12(r) + "]",
                     d, 0.0, 0.0, 1e-10, n_paths, seed);
}

VerifyReport check_lundberg_exp_grid(const CmrpModel& model,
                                     const std::vector<double>& thetas,
                                     const std::vector<double>& rs) {
  const auto* claims = std::get_if<Exponential>(&model.claims);
  if (!claims) throw DegenerateCheck("the Lundberg grid check needs exponential claims");
  const double eta = claims->rate;
  double max_err = 0.0;
  double max_residual = 0.0;
  for (double th : thetas) {
    for (double r : rs) {
      const Theta theta{th, 0.0, 1};
      const double c = model.premium_rate(theta);
      const LundbergSolution sol = kappa_solve(model, theta, r);
      const double closed = th * eta / (eta - r) - th - c * r;
      max_err = std::max(max_err, std::abs(sol.kappa - closed));
      max_residual = std::max(max_residual, std::abs(sol.residual));
    }
  }
  VerifyReport rep = make_report("lundberg_exp_grid", max_err, 0.0, 0.0, 1e-10,
                                 thetas.size() * rs.size(), 0);
  rep.passed = rep.passed && max_residual <= 1e-12;
  return rep;
}

VerifyReport check_lundberg_gamma_quadrature(const CmrpModel& model, const Theta& theta,
                                             double r) {
  const LundbergSolution sol = kappa_solve(model, theta, r);
  const double c = model.premium_rate(theta);
  const DistSpec kernel = model.interarrival_at(theta);
  const double s_arg = -sol.kappa - c * r;
  // Independent route: composite Simpson of e^{s w} against the kernel
  // density over a truncated range. The integrand decays at the tilted rate.
  const double decay = mgf_abscissa(kernel) - s_arg;
  const double upper = 80.0 / std::min(std::max(decay, 0.05), 80.0);
  const double mw = simpson([&](double w) { return std::exp(s_arg * w) * pdf(kernel, w); },
                            0.0, upper, 1000000);
  const double residual = mgf(model.claims, r) * mw - 1.0;
  return make_report("lundberg_gamma_quadrature", residual, 0.0, 0.0, 1e-9, 1, 0);
}

VerifyReport check_singularity_drift(const Scenario& s, const Theta& theta,
                                     const std::vector<double>& horizons, std::size_t n_paths,
                                     std::uint64_t seed, unsigned workers) {
  require_change(s, "check_singularity_drift");
  const DistSpec base = s.model.interarrival_at(theta);
  const DistSpec target = s.change.target_at(s.model, theta);
  if (same_law(base, target) && s.change.tilt.is_unit()) {
    throw DegenerateCheck("identity change at theta=" + to_string(theta) +
                          ": all conditional densities are 1");
  }
  const double horizon = *std::max_element(horizons.begin(), horizons.end());
  std::vector<std::vector<double>> logs(horizons.size(), std::vector<double>(n_paths));
  for_each_path_given_theta(s.model, theta, n_paths, horizon, seed, workers,
                            [&](std::size_t i, const Path& p) {
                              for (std::size_t h = 0; h < horizons.size(); ++h) {
                                logs[h][i] =
                                    log_density_conditional(s.change, s.model, p, horizons[h])
                                        .log_value;
                              }
                            });
  std::vector<double> medians;
  for (auto& v : logs) medians.push_back(median_of(std::move(v)));
  std::size_t decreasing = 0;
  for (std::size_t h = 1; h < medians.size(); ++h) {
    if (medians[h] < medians[h - 1]) ++decreasing;
  }
  const double fraction =
      medians.size() > 1
          ? static_cast<double>(decreasing) / static_cast<double>(medians.size() - 1)
          : 1.0;
  return make_report("singularity_drift[" + scenario_tag(s) + ",theta=" + g12(theta.x1) + "]",
                     fraction, 0.0, 1.0, 0.0, n_paths, seed);
}

namespace {

// ---- suite-internal ruin checks ----

VerifyReport ruin_closed_form_report(std::uint64_t seed) {
  const Scenario s = load_scenario("dirac_exp");
  const double psi0 = psi_theta(s.model, Theta{1.0, 0.0, 1}, 0.0);
  return make_report("ruin_theta_u0", psi0, 0.0, 0.5, 1e-9, 1, seed);
}

VerifyReport ruin_mixed_report(double u, std::uint64_t seed) {
  const Scenario s = load_scenario("ruin_ga");
  const RuinResult lib = psi_mixed(s.model, u);

  // Split analytic oracle with both pieces on a composite rule: for
  // exponential claims Exponential(eta) and kernel Exponential(theta) with
  // constant premium c, R(theta) = eta - theta / c below the net-profit
  // boundary theta = c eta, and ruin is certain beyond it.
  const auto& mix = std::get<Gamma>(s.model.mixing.components.at(0));
  const double eta = std::get<Exponential>(s.model.claims).rate;
  const double c = s.model.premium_rate(Theta{1.0, 0.0, 1});
  const double boundary = c * eta;
  auto mix_pdf = [&](double th) {
    return std::exp(mix.shape * std::log(mix.rate) - std::lgamma(mix.shape) +
                    (mix.shape - 1.0) * std::log(th) - mix.rate * th);
  };
  const double piece = std::exp(-eta * u) / (c * eta) *
                       simpson([&](double th) { return th * std::exp(th * u / c) * mix_pdf(th); },
                               1e-12, boundary, 1000000);
  const double tail =
      simpson(mix_pdf, boundary, boundary + 80.0 / mix.rate, 1000000);
  const double oracle = piece + tail;
  return make_report("ruin_mixed[u=" + g12(u) + "]", lib.psi, 0.0, oracle, 1e-6, 1, seed);
}

VerifyReport ruin_monte_carlo_report(std::uint64_t seed, unsigned workers) {
  const Scenario s = load_scenario("dirac_exp");
  const std::size_t n = 100000;
  const RuinResult mc = psi_monte_carlo(s.model, 2.0, 200.0, n, seed, workers);
  const double closed = 0.5 * std::exp(-2.0);  // psi_theta(u=2) for eta=2, theta=1, c=1
  VerifyReport rep = make_report("ruin_mc_lower_bound", mc.psi, mc.error_bound, closed,
                                 kProbabilityTolerance, n, seed);
  return rep;
}

}  // namespace

std::vector<VerifyReport> run_default_suite(std::uint64_t seed, unsigned workers) {
  std::vector<VerifyReport> reports;
  auto seed_for = [&](const std::string& label) { return derive_seed(seed, label); };

  const std::vector<std::string> core_scenarios = {
      "example_ga_iga", "polya_lundberg", "poisson_lognormal", "poisson_beta", "esscher_r"};
  for (const std::string& name : core_scenarios) {
    const Scenario s = load_scenario(name);
    std::vector<VerifyReport> core =
        check_scenario_core(s, 200000, seed_for("core:" + name), workers);
    reports.insert(reports.end(), core.begin(), core.end());
  }

  {
    const Scenario s = load_scenario("example_ga_iga");
    reports.push_back(
        check_ga_iga_closed_form(s, 1000, seed_for("ga_iga_closed_form"), workers));
  }
  for (const std::string& name :
       {"example_ga_iga", "polya_lundberg", "poisson_lognormal", "poisson_beta"}) {
    const Scenario s = load_scenario(name);
    reports.push_back(
        check_poissonization_identity(s, 1000, seed_for("poissonization:" + name), workers));
  }
  {
    const Scenario s = load_scenario("polya_lundberg");
    std::vector<VerifyReport> counts =
        check_pushforward_counts(s, 1.0, {0, 1, 2, 5}, 200000, seed_for("counts"), workers);
    reports.insert(reports.end(), counts.begin(), counts.end());
  }
  {
    const Scenario s = load_scenario("poisson_beta");
    reports.push_back(check_pushforward_mixing(s, 100000, seed_for("mixing:poisson_beta")));
  }
  {
    const Scenario s = load_scenario("poisson_lognormal");
    reports.push_back(
        check_pushforward_mixing(s, 100000, seed_for("mixing:poisson_lognormal")));
  }
  {
    const Scenario s = load_scenario("esscher_r");
    reports.push_back(check_pushforward_claims(s, 100000, seed_for("claims:esscher_r")));
  }
  {
    const Scenario dirac = load_scenario("dirac_exp");
    reports.push_back(check_lundberg_exp_grid(dirac.model, {0.5, 1.0, 1.5, 2.0, 3.0},
                                              {0.2, 0.5, 0.8, 1.2, 1.5}));
    CmrpModel gamma_model = dirac.model;
    gamma_model.interarrival.family = "gamma";
    gamma_model.interarrival.params.clear();
    gamma_model.interarrival.params["rate"] = Expr::constant(2.0);
    gamma_model.interarrival.params["shape"] = Expr::constant(2.0);
    reports.push_back(check_lundberg_gamma_quadrature(gamma_model, Theta{1.0, 0.0, 1}, 0.5));

    const Scenario esscher = load_scenario("esscher_r");
    reports.push_back(check_esscher_closed_form(esscher.model, 1.0, Theta{1.0, 0.0, 1}, 1000,
                                                seed_for("esscher_closed_form:1"), workers));
    reports.push_back(check_esscher_closed_form(dirac.model, 0.3, Theta{1.5, 0.0, 1}, 1000,
                                                seed_for("esscher_closed_form:2"), workers));
  }
  reports.push_back(ruin_closed_form_report(seed));
  reports.push_back(ruin_mixed_report(0.0, seed));
  reports.push_back(ruin_mixed_report(1.0, seed));
  reports.push_back(ruin_monte_carlo_report(seed_for("ruin_mc"), workers));
  {
    const Scenario pl = load_scenario("polya_lundberg");
    reports.push_back(check_singularity_drift(pl, Theta{1.0, 0.0, 1}, {5.0, 20.0, 80.0},
                                              10000, seed_for("drift:polya_lundberg"),
                                              workers));
    const Scenario es = load_scenario("esscher_r");
    reports.push_back(check_singularity_drift(es, Theta{1.0, 0.0, 1}, {5.0, 20.0, 80.0},
                                              10000, seed_for("drift:esscher_r"), workers));
  }
  return reports;
}

std::vector<VerifyReport> run_suite(const std::string& suite_name_or_path, std::uint64_t seed,
                                    unsigned workers) {
  if (suite_name_or_path == "default") return run_default_suite(seed, workers);

  std::ifstream in(suite_name_or_path);
  if (!in) throw IoError("cannot open suite file \"" + suite_name_or_path + "\"");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("suite file is not valid JSON: ") + e.what());
  }
  if (!j.contains("checks") || !j.at("checks").is_array()) {
    throw ConfigError("suite file must contain a \"checks\" array");
  }
  std::vector<VerifyReport> reports;
  std::size_t idx = 0;
  for (const auto& c : j.at("checks")) {
    const std::string kind = c.value("check", "");
    const std::uint64_t check_seed = derive_seed(seed, kind + ":" + std::to_string(idx++));
    const std::size_t n = c.value("n_paths", std::size_t{100000});
    if (kind == "normalization") {
      const Scenario s = load_scenario(c.at("scenario").get<std::string>());
      reports.push_back(
          check_normalization(s, c.value("t", 1.0), n, check_seed, workers));
    } else if (kind == "martingale") {
      const Scenario s = load_scenario(c.at("scenario").get<std::string>());
      auto reps =
          check_martingale(s, c.value("u", 1.0), c.value("t", 5.0), n, check_seed, workers);
      reports.insert(reports.end(), reps.begin(), reps.end());
    } else if (kind == "poissonization_identity") {
      const Scenario s = load_scenario(c.at("scenario").get<std::string>());
      reports.push_back(check_poissonization_identity(s, n, check_seed, workers));
    } else if (kind == "ga_iga_closed_form") {
      const Scenario s = load_scenario(c.at("scenario").get<std::string>());
      reports.push_back(check_ga_iga_closed_form(s, n, check_seed, workers));
    } else if (kind == "claims_pushforward") {
      const Scenario s = load_scenario(c.at("scenario").get<std::string>());
      reports.push_back(check_pushforward_claims(s, n, check_seed));
    } else if (kind == "mixing_pushforward") {
      const Scenario s = load_scenario(c.at("scenario").get<std::string>());
      reports.push_back(check_pushforward_mixing(s, n, check_seed));
    } else if (kind == "counts_pushforward") {
      const Scenario s = load_scenario(c.at("scenario").get<std::string>());
      std::vector<int> ns;
      for (const auto& v : c.value("ns", nlohmann::json::array({0, 1, 2}))) {
        ns.push_back(v.get<int>());
      }
      auto reps =
          check_pushforward_counts(s, c.value("t", 1.0), ns, n, check_seed, workers);
      reports.insert(reports.end(), reps.begin(), reps.end());
    } else if (kind == "singularity_drift") {
      const Scenario s = load_scenario(c.at("scenario").get<std::string>());
      std::vector<double> horizons;
      for (const auto& v : c.value("horizons", nlohmann::json::array({5.0, 20.0, 80.0}))) {
        horizons.push_back(v.get<double>());
      }
      const Theta theta{c.value("theta", 1.0), c.value("theta2", 0.0),
                        c.contains("theta2") ? 2 : 1};
      reports.push_back(check_singularity_drift(s, theta, horizons, n, check_seed, workers));
    } else {
      throw ConfigError("unknown check kind \"" + kind + "\" in suite file");
    }
  }
  return reports;
}

void write_report_csv(std::ostream& os, const std::vector<VerifyReport>& reports) {
  os << "check_name,estimate,std_error,target,passed,n_paths,seed\n";
  for (const VerifyReport& r : reports) {
    os << r.check_name << "," << g12(r.estimate) << "," << g12(r.std_error) << ","
       << g12(r.target) << "," << (r.passed ? 1 : 0) << "," << r.n_paths << "," << r.seed
       << "\n";
  }
}

}  // namespace cmrp
