#include "cmrp/cmrp.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cmrp/change_of_measure.hpp"
#include "cmrp/errors.hpp"
#include "cmrp/ruin.hpp"
#include "cmrp/scenario.hpp"
#include "cmrp/simulate.hpp"
#include "cmrp/verify.hpp"
#include "csv_util.hpp"

struct cmrp_scenario {
  cmrp::Scenario impl;
};

namespace {

thread_local std::string g_last_error;

cmrp_status status_of(const cmrp::Error& e) {
  using cmrp::ErrorCode;
  switch (e.code()) {
    case ErrorCode::config:
      return CMRP_ERR_CONFIG;
    case ErrorCode::io:
      return CMRP_ERR_IO;
    case ErrorCode::domain:
      return CMRP_ERR_DOMAIN;
    case ErrorCode::divergent_mgf:
      return CMRP_ERR_DIVERGENT_MGF;
    case ErrorCode::non_equivalent_supports:
      return CMRP_ERR_NON_EQUIVALENT_SUPPORTS;
    case ErrorCode::invalid_tilt:
      return CMRP_ERR_INVALID_TILT;
    case ErrorCode::invalid_reweight:
      return CMRP_ERR_INVALID_REWEIGHT;
    case ErrorCode::no_root:
      return CMRP_ERR_NO_ROOT;
    case ErrorCode::no_positive_root:
      return CMRP_ERR_NO_POSITIVE_ROOT;
    case ErrorCode::unsupported_claim_law:
      return CMRP_ERR_UNSUPPORTED_CLAIM_LAW;
    case ErrorCode::explosion:
      return CMRP_ERR_EXPLOSION;
    case ErrorCode::model:
      return CMRP_ERR_MODEL;
    case ErrorCode::degenerate_check:
      return CMRP_ERR_DEGENERATE_CHECK;
    case ErrorCode::internal:
      return CMRP_ERR_INTERNAL;
  }
  return CMRP_ERR_INTERNAL;
}

template <class Fn>
cmrp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CMRP_OK;
  } catch (const cmrp::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CMRP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CMRP_ERR_INTERNAL;
  }
}

unsigned workers_of(int workers) {
  return workers <= 0 ? cmrp::default_workers() : static_cast<unsigned>(workers);
}

cmrp_status require_args(bool ok, const char* msg) {
  if (ok) return CMRP_OK;
  g_last_error = msg;
  return CMRP_ERR_CONFIG;
}

std::ofstream open_output(const char* path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw cmrp::IoError(std::string("cannot open output file \"") + path + "\"");
  return os;
}

}  // namespace

extern "C" {

const char* cmrp_version(void) { return "0.1.0"; }

const char* cmrp_status_name(cmrp_status status) {
  switch (status) {
    case CMRP_OK:
      return "ok";
    case CMRP_ERR_CONFIG:
      return "config_error";
    case CMRP_ERR_IO:
      return "io_error";
    case CMRP_ERR_DOMAIN:
      return "domain_error";
    case CMRP_ERR_DIVERGENT_MGF:
      return "divergent_mgf";
    case CMRP_ERR_NON_EQUIVALENT_SUPPORTS:
      return "non_equivalent_supports";
    case CMRP_ERR_INVALID_TILT:
      return "invalid_tilt";
    case CMRP_ERR_INVALID_REWEIGHT:
      return "invalid_reweight";
    case CMRP_ERR_NO_ROOT:
      return "no_root";
    case CMRP_ERR_NO_POSITIVE_ROOT:
      return "no_positive_root";
    case CMRP_ERR_UNSUPPORTED_CLAIM_LAW:
      return "unsupported_claim_law";
    case CMRP_ERR_EXPLOSION:
      return "explosion_guard";
    case CMRP_ERR_MODEL:
      return "model_error";
    case CMRP_ERR_DEGENERATE_CHECK:
      return "degenerate_check";
    case CMRP_ERR_INTERNAL:
      return "internal_error";
  }
  return "unknown_status";
}

const char* cmrp_last_error(void) { return g_last_error.c_str(); }

cmrp_status cmrp_scenario_open(const char* name_or_path, cmrp_scenario** out) {
  if (cmrp_status s = require_args(name_or_path && out, "null argument")) return s;
  return guarded([&] {
    auto handle = new cmrp_scenario{cmrp::load_scenario(name_or_path)};
    *out = handle;
  });
}

cmrp_status cmrp_scenario_open_json(const char* json_text, cmrp_scenario** out) {
  if (cmrp_status s = require_args(json_text && out, "null argument")) return s;
  return guarded([&] {
    auto handle = new cmrp_scenario{cmrp::load_scenario_text(json_text)};
    *out = handle;
  });
}

void cmrp_scenario_close(cmrp_scenario* scenario) { delete scenario; }

const char* cmrp_scenario_name(const cmrp_scenario* scenario) {
  return scenario ? scenario->impl.name.c_str() : "";
}

int cmrp_scenario_mixing_dim(const cmrp_scenario* scenario) {
  return scenario ? scenario->impl.model.mixing.dim() : 0;
}

cmrp_status cmrp_preset_names(const char* const** names, size_t* count) {
  if (cmrp_status s = require_args(names && count, "null argument")) return s;
  return guarded([&] {
    static std::vector<const char*> pointers = [] {
      std::vector<const char*> v;
      for (const std::string& n : cmrp::preset_names()) v.push_back(n.c_str());
      return v;
    }();
    *names = pointers.data();
    *count = pointers.size();
  });
}

cmrp_status cmrp_simulate_csv(const cmrp_scenario* scenario, uint64_t n_paths, double horizon,
                              uint64_t seed, int workers, const char* out_csv) {
  if (cmrp_status s = require_args(scenario && out_csv, "null argument")) return s;
  if (cmrp_status s = require_args(horizon >= 0.0, "horizon must be >= 0")) return s;
  return guarded([&] {
    std::vector<cmrp::Path> paths = cmrp::simulate_paths(
        scenario->impl.model, static_cast<std::size_t>(n_paths), horizon, seed,
        workers_of(workers));
    std::ofstream os = open_output(out_csv);
    cmrp::write_paths_csv(os, paths);
  });
}

cmrp_status cmrp_density_csv(const cmrp_scenario* scenario, const char* paths_csv, double t,
                             const char* out_csv) {
  if (cmrp_status s = require_args(scenario && paths_csv && out_csv, "null argument")) {
    return s;
  }
  return guarded([&] {
    std::ifstream is(paths_csv);
    if (!is) throw cmrp::IoError(std::string("cannot open paths file \"") + paths_csv + "\"");
    std::vector<cmrp::Path> paths = cmrp::read_paths_csv(is, t);
    std::ofstream os = open_output(out_csv);
    os << "path_id,log_density,log_conditional,log_xi\n";
    const cmrp::Scenario& s = scenario->impl;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      cmrp::DensityEval eval = cmrp::log_density(s.change, s.model, paths[i], t);
      const double conditional = eval.log_value - eval.xi_log_factor;
      os << i << "," << cmrp::g12(eval.log_value) << "," << cmrp::g12(conditional) << ","
         << cmrp::g12(eval.xi_log_factor) << "\n";
    }
  });
}

cmrp_status cmrp_lundberg(const cmrp_scenario* scenario, const double* theta,
                          size_t theta_len, double r, double* kappa, double* residual) {
  if (cmrp_status s = require_args(scenario && theta && kappa, "null argument")) return s;
  if (cmrp_status s = require_args(theta_len == 1 || theta_len == 2,
                                   "theta must have 1 or 2 coordinates")) {
    return s;
  }
  return guarded([&] {
    cmrp::Theta th;
    th.x1 = theta[0];
    th.dim = static_cast<int>(theta_len);
    if (theta_len == 2) th.x2 = theta[1];
    cmrp::LundbergSolution sol = cmrp::kappa_solve(scenario->impl.model, th, r);
    *kappa = sol.kappa;
    if (residual) *residual = sol.residual;
  });
}

cmrp_status cmrp_ruin_quadrature(const cmrp_scenario* scenario, double u, double* psi,
                                 double* error_bound) {
  if (cmrp_status s = require_args(scenario && psi, "null argument")) return s;
  return guarded([&] {
    cmrp::RuinResult r = cmrp::psi_mixed(scenario->impl.model, u);
    *psi = r.psi;
    if (error_bound) *error_bound = r.error_bound;
  });
}

cmrp_status cmrp_ruin_monte_carlo(const cmrp_scenario* scenario, double u, double horizon,
                                  uint64_t n_paths, uint64_t seed, int workers, double* psi,
                                  double* std_error) {
  if (cmrp_status s = require_args(scenario && psi, "null argument")) return s;
  return guarded([&] {
    cmrp::RuinResult r =
        cmrp::psi_monte_carlo(scenario->impl.model, u, horizon,
                              static_cast<std::size_t>(n_paths), seed, workers_of(workers));
    *psi = r.psi;
    if (std_error) *std_error = r.error_bound;
  });
}

cmrp_status cmrp_verify(const char* suite, uint64_t seed, int workers, const char* out_csv,
                        size_t* n_checks, size_t* n_failed) {
  if (cmrp_status s = require_args(suite && out_csv, "null argument")) return s;
  return guarded([&] {
    std::vector<cmrp::VerifyReport> reports =
        cmrp::run_suite(suite, seed, workers_of(workers));
    std::ofstream os = open_output(out_csv);
    cmrp::write_report_csv(os, reports);
    std::size_t failed = 0;
    for (const auto& r : reports) {
      if (!r.passed) ++failed;
    }
    if (n_checks) *n_checks = reports.size();
    if (n_failed) *n_failed = failed;
  });
}

}  // extern "C"
