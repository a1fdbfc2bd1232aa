#include "wbglimm_cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "wbglimm/errors.hpp"
#include "wbglimm_cli/scenario.hpp"

namespace wbglimm::cli {

namespace {

using boost::property_tree::ptree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double number(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  double x = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (ec != std::errc() || end != t.data() + t.size() || t.empty() || !std::isfinite(x)) {
    throw ConfigError(field, "expected a number, got '" + t + "'");
  }
  return x;
}

long integer(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  long x = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (ec != std::errc() || end != t.data() + t.size() || t.empty()) {
    throw ConfigError(field, "expected an integer, got '" + t + "'");
  }
  return x;
}

bool boolean(const std::string& field, const std::string& text) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw ConfigError(field, "expected true or false, got '" + t + "'");
}

// Visits every key of a section, rejecting those not in `known`.
template <class F>
void each_key(const ptree& section, const std::string& name, const std::set<std::string>& known,
              F&& f) {
  for (const auto& [key, node] : section) {
    const std::string field = name + "." + key;
    if (!node.empty()) throw ConfigError(field, "nested keys are not supported");
    if (!known.empty() && !known.count(key)) throw ConfigError(field, "unknown key");
    f(key, field, node.data());
  }
}

void positive(const std::string& field, double x) {
  if (!(x > 0.0)) throw ConfigError(field, "must be positive");
}

void parse_model(const ptree& s, RunConfig& cfg) {
  bool has_m = false, has_k = false;
  each_key(s, "model", {"m", "k", "source"}, [&](const std::string& key, const std::string& field,
                                               const std::string& value) {
    if (key == "m") {
      cfg.model.m = number(field, value);
      positive(field, cfg.model.m);
      has_m = true;
    } else if (key == "k") {
      cfg.model.k = number(field, value);
      positive(field, cfg.model.k);
      has_k = true;
    } else {
      cfg.model.with_source = boolean(field, value);
    }
  });
  if (!has_m) throw ConfigError("model.m", "missing");
  if (!has_k) throw ConfigError("model.k", "missing");
}

void parse_grid(const ptree& s, RunConfig& cfg) {
  std::set<std::string> seen;
  GridSpec& g = cfg.grid;
  each_key(s, "grid", {"r_min", "r_max", "dr", "cfl", "t_end"},
           [&](const std::string& key, const std::string& field, const std::string& value) {
             const double x = number(field, value);
             seen.insert(key);
             if (key == "r_min") g.r_min = x;
             else if (key == "r_max") g.r_max = x;
             else if (key == "dr") g.dr = x;
             else if (key == "cfl") g.cfl = x;
             else g.t_end = x;
             positive(field, x);
           });
  for (const char* key : {"r_min", "r_max", "dr", "t_end"}) {
    if (!seen.count(key)) throw ConfigError(std::string("grid.") + key, "missing");
  }
  if (!(g.r_max > g.r_min)) throw ConfigError("grid.r_max", "must exceed grid.r_min");
  if (!(g.cfl < 1.0)) throw ConfigError("grid.cfl", "must lie in (0, 1)");
  try {
    g.validate();
  } catch (const DomainError& e) {
    throw ConfigError("grid.dr", e.what());
  }
  cfg.has_grid = true;
}

void parse_initial(const ptree& s, RunConfig& cfg) {
  each_key(s, "initial", {}, [&](const std::string& key, const std::string& field,
                                 const std::string& value) {
    if (key == "scenario") cfg.initial.scenario = trim(value);
    else if (key == "table") cfg.initial.table = trim(value);
    else cfg.initial.params[key] = number(field, value);
  });
  if (cfg.initial.scenario.empty()) throw ConfigError("initial.scenario", "missing");
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), cfg.initial.scenario) == names.end()) {
    throw ConfigError("initial.scenario", "unknown scenario '" + cfg.initial.scenario + "'");
  }
  if (cfg.initial.scenario == "table") {
    if (cfg.initial.table.empty()) throw ConfigError("initial.table", "missing");
    if (!cfg.initial.params.empty()) {
      throw ConfigError("initial." + cfg.initial.params.begin()->first, "unknown key");
    }
  } else {
    if (!cfg.initial.table.empty()) throw ConfigError("initial.table", "only for scenario table");
    const auto& defaults = scenario_defaults(cfg.initial.scenario);
    for (const auto& [key, value] : cfg.initial.params) {
      if (!defaults.count(key)) throw ConfigError("initial." + key, "unknown key");
    }
  }
}

void parse_sampler(const ptree& s, RunConfig& cfg) {
  each_key(s, "sampler", {"offset"}, [&](const std::string&, const std::string& field,
                                         const std::string& value) {
    const long x = integer(field, value);
    if (x < 0) throw ConfigError(field, "must be nonnegative");
    cfg.seed_offset = static_cast<std::uint64_t>(x);
  });
}

void parse_output(const ptree& s, RunConfig& cfg) {
  OutputSpec& o = cfg.output;
  each_key(s, "output", {"dir", "prefix", "format", "points", "snapshots"},
           [&](const std::string& key, const std::string& field, const std::string& value) {
             if (key == "dir") {
               o.dir = trim(value);
             } else if (key == "prefix") {
               o.prefix = trim(value);
               if (o.prefix.empty()) throw ConfigError(field, "must not be empty");
             } else if (key == "format") {
               const std::string f = trim(value);
               if (f == "csv") o.format = Format::Csv;
               else if (f == "json") o.format = Format::Json;
               else throw ConfigError(field, "expected csv or json, got '" + f + "'");
             } else if (key == "points") {
               const long n = integer(field, value);
               if (n < 2) throw ConfigError(field, "needs at least 2 points");
               o.points = static_cast<int>(n);
             } else {
               cfg.snapshot_times.clear();
               for (const std::string& item : split(value, ',')) {
                 cfg.snapshot_times.push_back(number(field, item));
               }
             }
           });
}

void parse_atlas(const ptree& s, RunConfig& cfg) {
  AtlasSpec& a = cfg.atlas;
  each_key(s, "atlas", {"anchors", "r_lo", "r_hi", "samples", "critical"},
           [&](const std::string& key, const std::string& field, const std::string& value) {
             if (key == "anchors") {
               a.anchors.clear();
               for (const std::string& item : split(value, ';')) {
                 const auto parts = split(item, ',');
                 if (parts.size() != 3) {
                   throw ConfigError(field, "each anchor is 'r, rho, v', got '" + item + "'");
                 }
                 const Anchor an{number(field, parts[0]), number(field, parts[1]),
                                 number(field, parts[2])};
                 positive(field, an.r);
                 positive(field, an.rho);
                 if (an.v == 0.0) throw ConfigError(field, "anchors need a nonzero velocity");
                 a.anchors.push_back(an);
               }
             } else if (key == "r_lo") {
               a.r_lo = number(field, value);
               positive(field, a.r_lo);
             } else if (key == "r_hi") {
               a.r_hi = number(field, value);
               positive(field, a.r_hi);
             } else if (key == "samples") {
               const long n = integer(field, value);
               if (n < 2) throw ConfigError(field, "needs at least 2 samples");
               a.samples = static_cast<int>(n);
             } else {
               a.critical = boolean(field, value);
             }
           });
  if (!(a.r_hi > a.r_lo)) throw ConfigError("atlas.r_hi", "must exceed atlas.r_lo");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  // The INI reader only knows ';' comments.
  std::string normalized;
  {
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      const std::string t = trim(line);
      normalized += (!t.empty() && t[0] == '#') ? ";" + t : line;
      normalized += '\n';
    }
  }
  ptree tree;
  try {
    std::stringstream in(normalized);
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()), e.message());
  }

  RunConfig cfg;
  const std::set<std::string> sections{"model", "grid", "initial", "sampler", "output", "atlas"};
  for (const auto& [name, node] : tree) {
    if (!sections.count(name)) {
      throw ConfigError(name, node.empty() ? "keys must be inside a section" : "unknown section");
    }
  }
  const auto model = tree.get_child_optional("model");
  if (!model) throw ConfigError("model", "missing section");
  parse_model(*model, cfg);
  if (const auto g = tree.get_child_optional("grid")) parse_grid(*g, cfg);
  if (const auto i = tree.get_child_optional("initial")) parse_initial(*i, cfg);
  if (const auto s = tree.get_child_optional("sampler")) parse_sampler(*s, cfg);
  if (const auto o = tree.get_child_optional("output")) parse_output(*o, cfg);
  if (const auto a = tree.get_child_optional("atlas")) parse_atlas(*a, cfg);

  for (double t : cfg.snapshot_times) {
    if (!cfg.has_grid) throw ConfigError("output.snapshots", "needs a [grid] section");
    if (t < 0.0 || t > cfg.grid.t_end) {
      throw ConfigError("output.snapshots", "time " + std::to_string(t) + " outside [0, t_end]");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("file", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void require_run_sections(const RunConfig& cfg) {
  if (!cfg.has_grid) throw ConfigError("grid", "missing section");
  if (cfg.initial.scenario.empty()) throw ConfigError("initial", "missing section");
}

void require_atlas_sections(const RunConfig& cfg) {
  if (cfg.atlas.anchors.empty()) throw ConfigError("atlas.anchors", "missing");
}

}  // namespace wbglimm::cli
