#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbglimm/glimm.hpp"
#include "wbglimm/model.hpp"

namespace wbglimm::cli {

/// Invalid configuration; `field()` is "section.key" (or the section name).
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

enum class Format { Csv, Json };

struct InitialSpec {
  std::string scenario;
  /// Scenario parameters as given; missing ones take the scenario defaults.
  std::map<std::string, double> params;
  /// Path of an r,rho,v table for scenario "table".
  std::string table;
};

struct OutputSpec {
  std::string dir = ".";
  std::string prefix = "run";
  Format format = Format::Csv;
  int points = 401;
};

struct Anchor {
  double r;
  double rho;
  double v;
};

struct AtlasSpec {
  std::vector<Anchor> anchors;
  double r_lo = 0.1;
  double r_hi = 10.0;
  int samples = 201;
  bool critical = false;
};

struct RunConfig {
  ModelParams model;
  GridSpec grid;
  bool has_grid = false;
  InitialSpec initial;
  std::uint64_t seed_offset = 0;
  std::vector<double> snapshot_times;
  OutputSpec output;
  AtlasSpec atlas;
};

/// Parses sectioned `key = value` text ([model], [grid], [initial],
/// [sampler], [output], [atlas]; `;` or `#` comments). [model] needs m and k;
/// [grid] needs r_min, r_max, dr and t_end. Unknown keys are rejected.
RunConfig parse_config(const std::string& text);

/// Reads and parses a config file; unreadable files raise ConfigError("file").
RunConfig load_config(const std::string& path);

/// Checks the parts needed by `run`: a grid and a known scenario.
void require_run_sections(const RunConfig& cfg);

/// Checks the parts needed by `atlas`: at least one anchor.
void require_atlas_sections(const RunConfig& cfg);

}  // namespace wbglimm::cli
