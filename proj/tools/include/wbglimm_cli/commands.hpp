#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wbglimm_cli/config.hpp"

namespace wbglimm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

struct CommandOptions {
  bool quiet = false;
  std::optional<std::uint64_t> seed_offset;
};

struct RunSummary {
  double tv_lnrho = 0.0;
  double tv_v = 0.0;
  double fitted_C = 0.0;
  double fitted_C1 = 0.0;
  bool envelope_holds = true;
  double wall_seconds = 0.0;
  std::size_t steps = 0;
  int grp_cells = 0;
  int triple_cells = 0;
  /// Sup-norm distance in (ln ρ, v) to the exact steady data at t_end.
  std::optional<double> drift;
  /// Distance of the steady shock from its initial radius at t_end.
  std::optional<double> shock_displacement;
  std::vector<std::string> files;
};

/// Runs the configured scenario and writes snapshots and the TV log.
RunSummary run_scenario(const RunConfig& cfg);

/// Writes the steady atlas; returns the files written.
std::vector<std::string> write_atlas(const RunConfig& cfg);

/// Exit codes: 0 success, 2 configuration error, 3 solver error.
int run_command(const std::string& config_path, const CommandOptions& opt, std::ostream& out,
                std::ostream& err);
int atlas_command(const std::string& config_path, const CommandOptions& opt, std::ostream& out,
                  std::ostream& err);
/// Built-in invariant self-tests; 0 when all pass, 3 otherwise.
int check_command(const CommandOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace wbglimm::cli
