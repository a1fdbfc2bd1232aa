#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wbglimm/glimm.hpp"
#include "wbglimm/steady.hpp"
#include "wbglimm_cli/config.hpp"

namespace wbglimm::cli {

struct Scenario {
  InitialData data;
  /// Exact steady solution of the data, when the scenario is one.
  std::optional<SteadySolution> reference;
  /// Initial position of a steady shock, when the scenario has one.
  std::optional<double> shock_r;
};

/// Built-in scenario names, plus "table".
const std::vector<std::string>& scenario_names();

/// Default parameters of a built-in scenario; throws ConfigError for unknown names.
const std::map<std::string, double>& scenario_defaults(const std::string& name);

/// Builds the initial data. Unknown parameters raise ConfigError; steady
/// states that cannot be constructed raise wbglimm::Error.
Scenario make_scenario(const RunConfig& cfg);

}  // namespace wbglimm::cli
