#include "cmrp/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cmrp/errors.hpp"
#include "cmrp/quadrature.hpp"
#include "presets.hpp"

namespace cmrp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("scenario key \"" + path + "\": " + msg);
}

const json& must_get(const json& j, const std::string& path, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Expr as_expr(const json& j, const std::string& path) {
  if (j.is_number()) return Expr::constant(j.get<double>());
  if (j.is_string()) {
    try {
      return Expr::parse(j.get<std::string>());
    } catch (const ConfigError& e) {
      fail(path, e.what());
    }
  }
  fail(path, "expected a number or an expression string");
}

const std::set<std::string> kDistKeys = {"family", "rate", "shape", "scale",
                                         "mu",     "sigma2", "a",   "b",
                                         "point"};

void check_dist_keys(const json& j, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!kDistKeys.count(it.key())) fail(path + "." + it.key(), "unknown distribution key");
  }
}

DistSpec dist_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a distribution object");
  check_dist_keys(j, path);
  const std::string family = as_string(must_get(j, path, "family"), path + ".family");
  std::map<std::string, double> params;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "family") continue;
    params[it.key()] = as_number(*it, path + "." + it.key());
  }
  try {
    return make_dist(family, params);
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
}

MixingSpec mixing_from_json(const json& j, const std::string& path) {
  MixingSpec mix;
  if (j.is_object() && j.contains("components")) {
    const json& comps = j.at("components");
    if (!comps.is_array() || comps.empty() || comps.size() > 2) {
      fail(path + ".components", "expected an array of 1 or 2 components");
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
      mix.components.push_back(
          dist_from_json(comps[i], path + ".components[" + std::to_string(i) + "]"));
    }
  } else {
    mix.components.push_back(dist_from_json(j, path));
  }
  return mix;
}

ThetaKernel kernel_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a kernel object");
  check_dist_keys(j, path);
  ThetaKernel k;
  k.family = as_string(must_get(j, path, "family"), path + ".family");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "family") continue;
    k.params[it.key()] = as_expr(*it, path + "." + it.key());
  }
  return k;
}

ClaimTilt tilt_from_json(const json& j, const std::string& path, const CmrpModel& model) {
  const std::string type = as_string(must_get(j, path, "type"), path + ".type");
  if (type == "unit") return ClaimTilt(UnitTilt{});
  if (type == "esscher") {
    const double r = as_number(must_get(j, path, "r"), path + ".r");
    return esscher_tilt(model, r);
  }
  if (type == "grid") {
    GridTilt g;
    const json& xs = must_get(j, path, "x");
    if (!xs.is_array() || xs.size() < 2) fail(path + ".x", "expected an array of >= 2 knots");
    for (const auto& v : xs) g.x.push_back(as_number(v, path + ".x"));
    for (std::size_t i = 1; i < g.x.size(); ++i) {
      if (!(g.x[i] > g.x[i - 1])) fail(path + ".x", "knots must be strictly increasing");
    }
    if (j.contains("f")) {
      for (const auto& v : j.at("f")) {
        const double fv = as_number(v, path + ".f");
        if (!(fv > 0.0)) throw InvalidTilt("grid tilt values must be positive");
        g.log_f.push_back(std::log(fv));
      }
    } else {
      for (const auto& v : must_get(j, path, "log_f")) {
        g.log_f.push_back(as_number(v, path + ".log_f"));
      }
    }
    if (g.log_f.size() != g.x.size()) fail(path, "x and f must have the same length");
    return ClaimTilt(std::move(g));
  }
  fail(path + ".type", "expected one of unit|esscher|grid");
}

MixReweight reweight_from_json(const json& j, const std::string& path) {
  const std::string type = as_string(must_get(j, path, "type"), path + ".type");
  if (type == "unit") return MixReweight(UnitReweight{});
  if (type == "density_ratio") {
    DensityRatioReweight d;
    d.target = mixing_from_json(must_get(j, path, "target"), path + ".target");
    return MixReweight(std::move(d));
  }
  if (type == "grid") {
    GridReweight g;
    for (const auto& v : must_get(j, path, "x")) g.x.push_back(as_number(v, path + ".x"));
    if (j.contains("xi")) {
      for (const auto& v : j.at("xi")) {
        const double xv = as_number(v, path + ".xi");
        if (!(xv > 0.0)) throw InvalidReweight("grid reweight values must be positive");
        g.log_xi.push_back(std::log(xv));
      }
    } else {
      for (const auto& v : must_get(j, path, "log_xi")) {
        g.log_xi.push_back(as_number(v, path + ".log_xi"));
      }
    }
    if (g.log_xi.size() != g.x.size() || g.x.size() < 2) {
      fail(path, "x and xi must have the same length >= 2");
    }
    return MixReweight(std::move(g));
  }
  fail(path + ".type", "expected one of unit|density_ratio|grid");
}

/// A few representative points of the mixing support, used to sanity-check
/// theta-dependent pieces at load time.
std::vector<Theta> probe_points(const MixingSpec& mixing) {
  std::vector<Theta> probes;
  RngStream rng(0x5eed'ca11, 0);
  for (int i = 0; i < 8; ++i) probes.push_back(mixing.sample(rng));
  return probes;
}

void validate_model(const CmrpModel& model) {
  if (support(model.claims) != SupportKind::positive_half_line) {
    throw ConfigError("claims must have support (0, inf); got " + describe(model.claims));
  }
  for (const Theta& th : probe_points(model.mixing)) {
    const DistSpec k = model.interarrival_at(th);
    if (support(k) != SupportKind::positive_half_line) {
      throw ConfigError("interarrival kernel must have support (0, inf); got " + describe(k) +
                        " at theta=" + to_string(th));
    }
    model.premium_rate(th);  // throws if not positive
  }
}

void renormalize_grid_tilt(const CmrpModel& model, ClaimTilt& tilt) {
  GridTilt* g = tilt.grid();
  if (!g) return;
  ValidationReport raw = validate_tilt(model, tilt, 100000, 1e-10);
  if (!(raw.estimate > 0.0) || !std::isfinite(raw.estimate)) {
    throw InvalidTilt("grid tilt has non-positive or non-finite mean " +
                      std::to_string(raw.estimate));
  }
  g->log_renorm += std::log(raw.estimate);
}

void renormalize_grid_reweight(const CmrpModel& model, MixReweight& rw) {
  GridReweight* g = rw.grid();
  if (!g) return;
  ValidationReport raw = validate_reweight(model, rw, 1e-10);
  if (!(raw.estimate > 0.0) || !std::isfinite(raw.estimate)) {
    throw InvalidReweight("grid reweight has non-positive or non-finite mean " +
                          std::to_string(raw.estimate));
  }
  g->log_renorm += std::log(raw.estimate);
}

MeasureChange change_from_json(const json& j, const std::string& path,
                               const CmrpModel& model) {
  MeasureChange mc;
  if (j.contains("type")) {
    const std::string type = as_string(j.at("type"), path + ".type");
    if (type != "esscher") fail(path + ".type", "the only shorthand type is \"esscher\"");
    const double r = as_number(must_get(j, path, "r"), path + ".r");
    mc = esscher_change(model, r);
    if (j.contains("xi")) mc.reweight = reweight_from_json(j.at("xi"), path + ".xi");
    return mc;
  }
  if (j.contains("tilt")) mc.tilt = tilt_from_json(j.at("tilt"), path + ".tilt", model);
  if (j.contains("xi")) mc.reweight = reweight_from_json(j.at("xi"), path + ".xi");
  if (j.contains("rho")) mc.rho = as_expr(j.at("rho"), path + ".rho");
  if (j.contains("target_kernel")) {
    mc.target = ExprTarget{kernel_from_json(j.at("target_kernel"), path + ".target_kernel")};
  } else if (mc.rho) {
    ThetaKernel k;
    k.family = "exponential";
    k.params["rate"] = *mc.rho;
    mc.target = ExprTarget{std::move(k)};
  }
  return mc;
}

}  // namespace

Scenario load_scenario_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  Scenario s;
  s.name = j.value("name", "unnamed");
  s.description = j.value("description", "");

  s.model.mixing = mixing_from_json(must_get(j, "", "mixing"), "mixing");
  s.model.interarrival =
      kernel_from_json(must_get(j, "", "interarrival_kernel"), "interarrival_kernel");
  s.model.claims = dist_from_json(must_get(j, "", "claims"), "claims");
  s.model.premium = as_expr(must_get(j, "", "premium_rate"), "premium_rate");
  validate_model(s.model);

  if (j.contains("measure_change")) {
    s.change = change_from_json(j.at("measure_change"), "measure_change", s.model);
    s.has_change = true;
    renormalize_grid_tilt(s.model, s.change.tilt);
    renormalize_grid_reweight(s.model, s.change.reweight);
    ValidationReport tilt_report = validate_tilt(s.model, s.change.tilt);
    if (!tilt_report.passed) {
      throw InvalidTilt("scenario \"" + s.name + "\": E[f(X1)] = " +
                        std::to_string(tilt_report.estimate) + " != 1");
    }
    ValidationReport rw_report = validate_reweight(s.model, s.change.reweight);
    if (!rw_report.passed) {
      throw InvalidReweight("scenario \"" + s.name + "\": E[xi(Theta)] = " +
                            std::to_string(rw_report.estimate) + " != 1");
    }
  }

  if (j.contains("targets")) {
    const json& t = j.at("targets");
    if (t.contains("claims")) {
      s.claims_target = dist_from_json(t.at("claims"), "targets.claims");
    }
    if (t.contains("rho")) s.rho_target = dist_from_json(t.at("rho"), "targets.rho");
  }
  return s;
}

Scenario load_scenario(const std::string& name_or_path) {
  for (const std::string& name : preset_names()) {
    if (name == name_or_path) return load_scenario_text(preset_json(name));
  }
  std::ifstream in(name_or_path);
  if (!in) {
    throw IoError("cannot open scenario \"" + name_or_path +
                  "\" (not a preset name and not a readable file)");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario_text(buffer.str());
}

}  // namespace cmrp
