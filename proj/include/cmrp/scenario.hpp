#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmrp/model.hpp"

namespace cmrp {

/// A named model plus an optional measure change, loaded from JSON.
/// Loading validates the admissibility constraints (mean-one tilt and
/// reweight) and rejects configurations that violate them.
struct Scenario {
  std::string name;
  std::string description;
  CmrpModel model;
  MeasureChange change;  // identity when the file has no measure_change
  bool has_change = false;

  // Analytic pushforward targets used by the verification checks.
  std::optional<DistSpec> claims_target;
  std::optional<DistSpec> rho_target;
};

Scenario load_scenario_text(const std::string& json_text);

/// Accepts a shipped preset name (see preset_names) or a filesystem path.
Scenario load_scenario(const std::string& name_or_path);

const std::vector<std::string>& preset_names();
const std::string& preset_json(const std::string& name);

}  // namespace cmrp
