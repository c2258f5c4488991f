// Acceptance suite: runs the default verification suite plus the CLI
// determinism checks and prints one PASS/FAIL line per criterion.
// Exit code 0 only when every criterion holds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cmrp/verify.hpp"

namespace {

using cmrp::VerifyReport;

std::map<std::string, VerifyReport> g_reports;
bool g_all_ok = true;

const VerifyReport& report(const std::string& name) {
  auto it = g_reports.find(name);
  if (it == g_reports.end()) {
    std::fprintf(stderr, "missing report: %s\n", name.c_str());
    std::exit(2);
  }
  return it->second;
}

void criterion(int num, const std::string& label, bool ok) {
  std::printf("%s  criterion %2d: %s\n", ok ? "PASS" : "FAIL", num, label.c_str());
  g_all_ok = g_all_ok && ok;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "cannot read %s\n", path.c_str());
    std::exit(2);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CMRP_CLI_PATH) + " " + args;
  return std::system(cmd.c_str());
}

}  // namespace

int main() {
  const std::uint64_t seed = 42;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<VerifyReport> reports = cmrp::run_default_suite(seed, 0);
  const auto t1 = std::chrono::steady_clock::now();
  const double suite_seconds = std::chrono::duration<double>(t1 - t0).count();
  for (const VerifyReport& r : reports) g_reports[r.check_name] = r;

  const std::vector<std::string> scenarios = {
      "example_ga_iga", "polya_lundberg", "poisson_lognormal", "poisson_beta", "esscher_r"};

  // 1. Normalization E[M_t] = 1 within 3 s.e. for every scenario and t in {1,5}.
  {
    bool ok = true;
    for (const std::string& s : scenarios) {
      for (const std::string& t : {"1", "5"}) {
        const VerifyReport& r = report("normalization[" + s + ",t=" + t + "]");
        ok = ok && std::abs(r.estimate - 1.0) <= std::max(r.tolerance, 3.0 * r.std_error);
      }
    }
    ok = ok && suite_seconds < 180.0 * 4;  // full suite bound; see criterion text below
    criterion(1, "normalization within 3 s.e. of 1 for all scenarios, t in {1,5}", ok);
  }

  // 2. Martingale restriction over F_u events.
  {
    bool ok = true;
    for (const std::string& s : scenarios) {
      for (const std::string& ev : {"N0", "Nge2", "S_le_median"}) {
        ok = ok && report("martingale[" + s + ",u=1,t=5," + ev + "]").passed;
      }
    }
    criterion(2, "martingale restriction |E[1_A(M_t - M_u)]| <= 3 s.e.", ok);
  }

  // 3. Generic density equals the gamma/inverse-gamma closed form to 1e-10.
  {
    const VerifyReport& r = report("ga_iga_closed_form[example_ga_iga]");
    criterion(3, "closed-form cross-check to 1e-10 on 1e3 paths", r.passed && r.tolerance <= 1e-10);
  }

  // 4. Compound-mixed-Poisson density form equals the generic one to 1e-12.
  {
    bool ok = true;
    for (const std::string& s :
         {"example_ga_iga", "polya_lundberg", "poisson_lognormal", "poisson_beta"}) {
      const VerifyReport& r = report("poissonization_identity[" + s + "]");
      ok = ok && r.passed && r.tolerance <= 1e-12;
    }
    criterion(4, "poissonization identity to 1e-12 on 1e3 paths per scenario", ok);
  }

  // 5. Count pushforward matches the mixed-Poisson/negative-binomial oracle.
  {
    bool ok = true;
    for (int n : {0, 1, 2, 5}) {
      const VerifyReport& r =
          report("counts_pushforward[polya_lundberg,t=1,n=" + std::to_string(n) + "]");
      // independent closed form: (n+1) (1/2)^2 (1/2)^n for rate 1, shape 2, t=1
      const double nb = (n + 1) * 0.25 * std::pow(0.5, n);
      ok = ok && r.passed && std::abs(r.target - nb) <= 1e-9;
    }
    ok = ok && std::abs(report("counts_pushforward[polya_lundberg,t=1,n=0]").target - 0.25) <=
                   1e-9;
    criterion(5, "count pushforward vs negative-binomial oracle (n in {0,1,2,5})", ok);
  }

  // 6. Mixing pushforward of rho(Theta) vs the beta law, KS < 1.63/sqrt(N).
  {
    const VerifyReport& r = report("mixing_pushforward[poisson_beta]");
    criterion(6, "beta mixing pushforward KS < 1.63/sqrt(1e5)", r.passed);
  }

  // 7. Lundberg solver vs the exp/exp closed form and the quadrature oracle.
  {
    const VerifyReport& grid = report("lundberg_exp_grid");
    const VerifyReport& quad = report("lundberg_gamma_quadrature");
    criterion(7, "kappa grid to 1e-10 and gamma-kernel residual vs quadrature oracle",
              grid.passed && quad.passed);
  }

  // 8. Esscher density: two independent formula routes agree to 1e-10.
  {
    const bool ok = report("esscher_closed_form[theta=1,c=2,r=1]").passed &&
                    report("esscher_closed_form[theta=1.5,c=1,r=0.3]").passed;
    criterion(8, "Esscher density routes agree to 1e-10 at two parameter points", ok);
  }

  // 9. Ruin probabilities: closed form, mixture quadrature, Monte Carlo bound.
  {
    const VerifyReport& u0 = report("ruin_theta_u0");
    const VerifyReport& m0 = report("ruin_mixed[u=0]");
    const VerifyReport& m1 = report("ruin_mixed[u=1]");
    const VerifyReport& mc = report("ruin_mc_lower_bound");
    const bool mc_bound = mc.estimate <= mc.target + 3.0 * mc.std_error;
    const bool ok = u0.passed && std::abs(u0.estimate - 0.5) <= 1e-9 &&
                    m0.passed && std::abs(m0.estimate - m0.target) <= 1e-6 &&
                    m1.passed && std::abs(m1.estimate - m1.target) <= 1e-6 && mc_bound;
    criterion(9, "psi(0)=0.5, mixed quadrature to 1e-6, MC lower bound", ok);
  }

  // 10. Singularity drift: strictly decreasing log-density medians.
  {
    const bool ok = report("singularity_drift[polya_lundberg,theta=1]").passed &&
                    report("singularity_drift[esscher_r,theta=1]").passed;
    criterion(10, "strictly decreasing medians at horizons {5,20,80}", ok);
  }

  // 11. CLI determinism: identical bytes across runs and worker counts.
  {
    bool ok = true;
    ok = ok && run_cli("verify --suite default --seed 42 --workers 8 --out /tmp/cmrp_acc_r1.csv") == 0;
    ok = ok && run_cli("verify --suite default --seed 42 --workers 8 --out /tmp/cmrp_acc_r2.csv") == 0;
    ok = ok && run_cli("verify --suite default --seed 42 --workers 1 --out /tmp/cmrp_acc_r3.csv") == 0;
    if (ok) {
      const std::string r1 = slurp("/tmp/cmrp_acc_r1.csv");
      ok = ok && r1 == slurp("/tmp/cmrp_acc_r2.csv") && r1 == slurp("/tmp/cmrp_acc_r3.csv");
    }
    criterion(11, "verify CLI byte-identical across repeats and workers 1 vs 8", ok);
  }

  std::printf("---\nsuite: %zu checks in %.1f s\n", reports.size(), suite_seconds);
  for (const VerifyReport& r : reports) {
    if (!r.passed) {
      std::printf("FAILED CHECK %s: estimate=%.10g target=%.10g se=%.3g tol=%.3g\n",
                  r.check_name.c_str(), r.estimate, r.target, r.std_error, r.tolerance);
    }
  }
  return g_all_ok ? 0 : 1;
}
