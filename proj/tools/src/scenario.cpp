#include "wbglimm_cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>

#include "wbglimm/errors.hpp"
#include "wbglimm_cli/io.hpp"

namespace wbglimm::cli {

namespace {

using Params = std::map<std::string, double>;

const std::map<std::string, Params>& defaults_table() {
  static const std::map<std::string, Params> table{
      {"steady-preserve", {{"anchor_r", 1.0}, {"rho", 1.0}, {"v", 0.1}}},
      {"steady-shock", {{"anchor_r", 3.0}, {"rho", 1.0}, {"v", 4.0}}},
      {"riemann",
       {{"jump", 3.0}, {"rho_left", 1.0}, {"v_left", 0.05}, {"rho_right", 2.0},
        {"v_right", 0.05}}},
      {"triple",
       {{"r_s", 2.5},
        {"r_b", 3.5},
        {"rho_alpha", 1.0},
        {"v_alpha", 0.05},
        {"rho_beta", 1.5},
        {"v_beta", 0.05},
        {"rho_gamma", 2.25},
        {"v_gamma", 0.05}}},
      {"perturbed-steady",
       {{"anchor_r", 1.0},
        {"rho", 1.0},
        {"v", 0.1},
        {"amplitude", 0.1},
        {"width", 0.2},
        {"center", 3.0}}},
  };
  return table;
}

Params merged(const RunConfig& cfg) {
  Params p = scenario_defaults(cfg.initial.scenario);
  for (const auto& [key, value] : cfg.initial.params) {
    if (!p.count(key)) throw ConfigError("initial." + key, "unknown key");
    p[key] = value;
  }
  return p;
}

std::shared_ptr<const SteadySolution> steady(double r, double rho, double v,
                                             const ModelParams& p) {
  return std::make_shared<const SteadySolution>(solve_steady(r, {rho, v}, p));
}

void require_inside(const std::string& field, double r, const GridSpec& g) {
  if (!(r > g.r_min && r < g.r_max)) {
    throw ConfigError(field, "must lie strictly inside (r_min, r_max)");
  }
}

Scenario table_scenario(const RunConfig& cfg) {
  std::ifstream in(cfg.initial.table);
  if (!in) throw ConfigError("initial.table", "cannot read '" + cfg.initial.table + "'");
  std::vector<std::array<double, 3>> rows;
  try {
    rows = read_table_csv(in);
  } catch (const std::exception& e) {
    throw ConfigError("initial.table", e.what());
  }
  if (rows.size() < 2) throw ConfigError("initial.table", "needs at least two rows");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i][0] > rows[i - 1][0])) {
      throw ConfigError("initial.table", "radii must be strictly increasing");
    }
  }
  for (const auto& row : rows) {
    if (!(row[1] > 0.0)) throw ConfigError("initial.table", "densities must be positive");
  }
  if (rows.front()[0] > cfg.grid.r_min || rows.back()[0] < cfg.grid.r_max) {
    throw ConfigError("initial.table", "must cover [r_min, r_max]");
  }
  auto shared = std::make_shared<const std::vector<std::array<double, 3>>>(std::move(rows));
  Scenario sc;
  sc.data = [shared](double r) {
    const auto& t = *shared;
    auto it = std::lower_bound(t.begin(), t.end(), r,
                               [](const std::array<double, 3>& row, double x) {
                                 return row[0] < x;
                               });
    if (it == t.begin()) return FluidState{t.front()[1], t.front()[2]};
    if (it == t.end()) return FluidState{t.back()[1], t.back()[2]};
    const auto& b = *it;
    const auto& a = *(it - 1);
    const double s = (r - a[0]) / (b[0] - a[0]);
    return FluidState{a[1] + s * (b[1] - a[1]), a[2] + s * (b[2] - a[2])};
  };
  return sc;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"steady-preserve", "steady-shock", "riemann",
                                              "triple", "perturbed-steady", "table"};
  return names;
}

const std::map<std::string, double>& scenario_defaults(const std::string& name) {
  const auto& t = defaults_table();
  const auto it = t.find(name);
  if (it == t.end()) throw ConfigError("initial.scenario", "no defaults for '" + name + "'");
  return it->second;
}

Scenario make_scenario(const RunConfig& cfg) {
  const std::string& name = cfg.initial.scenario;
  const ModelParams& p = cfg.model;
  const GridSpec& g = cfg.grid;
  if (name == "table") return table_scenario(cfg);
  const Params q = merged(cfg);
  Scenario sc;

  if (name == "steady-preserve") {
    const auto s = steady(q.at("anchor_r"), q.at("rho"), q.at("v"), p);
    if (!s->covers(g.r_min, g.r_max)) {
      throw ConfigError("initial.v", "steady solution does not cover the grid");
    }
    sc.reference = *s;
    sc.data = [s](double r) { return s->at(r); };
  } else if (name == "steady-shock") {
    const double r0 = q.at("anchor_r");
    require_inside("initial.anchor_r", r0, g);
    const FluidState left{q.at("rho"), q.at("v")};
    FluidState right;
    try {
      right = steady_shock_conjugate(left, p);
    } catch (const DomainError& e) {
      throw ConfigError("initial.v", e.what());
    }
    const auto a = steady(r0, left.rho, left.v, p);
    const auto b = steady(r0, right.rho, right.v, p);
    if (!a->covers(g.r_min, r0) || !b->covers(r0, g.r_max)) {
      throw ConfigError("initial.anchor_r", "steady states do not cover their sides of the grid");
    }
    sc.shock_r = r0;
    sc.data = [a, b, r0](double r) { return r < r0 ? a->at(r) : b->at(r); };
  } else if (name == "riemann") {
    const double r0 = q.at("jump");
    require_inside("initial.jump", r0, g);
    const auto a = steady(r0, q.at("rho_left"), q.at("v_left"), p);
    const auto b = steady(r0, q.at("rho_right"), q.at("v_right"), p);
    if (!a->covers(g.r_min, r0) || !b->covers(r0, g.r_max)) {
      throw ConfigError("initial.jump", "steady states do not cover their sides of the grid");
    }
    sc.data = [a, b, r0](double r) { return r < r0 ? a->at(r) : b->at(r); };
  } else if (name == "triple") {
    const double rs = q.at("r_s"), rb = q.at("r_b");
    require_inside("initial.r_s", rs, g);
    require_inside("initial.r_b", rb, g);
    if (!(rs < rb)) throw ConfigError("initial.r_b", "must exceed initial.r_s");
    const auto a = steady(rs, q.at("rho_alpha"), q.at("v_alpha"), p);
    const auto b = steady(0.5 * (rs + rb), q.at("rho_beta"), q.at("v_beta"), p);
    const auto c = steady(rb, q.at("rho_gamma"), q.at("v_gamma"), p);
    if (!a->covers(g.r_min, rs) || !b->covers(rs, rb) || !c->covers(rb, g.r_max)) {
      throw ConfigError("initial", "steady states do not cover their parts of the grid");
    }
    sc.data = [a, b, c, rs, rb](double r) {
      return r < rs ? a->at(r) : (r < rb ? b->at(r) : c->at(r));
    };
  } else {
    const auto s = steady(q.at("anchor_r"), q.at("rho"), q.at("v"), p);
    if (!s->covers(g.r_min, g.r_max)) {
      throw ConfigError("initial.v", "steady solution does not cover the grid");
    }
    const double amp = q.at("amplitude"), width = q.at("width"), center = q.at("center");
    if (!(amp > -1.0)) throw ConfigError("initial.amplitude", "must exceed -1");
    if (!(width > 0.0)) throw ConfigError("initial.width", "must be positive");
    sc.data = [s, amp, width, center](double r) {
      FluidState u = s->at(r);
      const double x = (r - center) / width;
      u.rho *= 1.0 + amp * std::exp(-x * x);
      return u;
    };
  }
  return sc;
}

}  // namespace wbglimm::cli
