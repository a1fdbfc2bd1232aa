#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "wbglimm_cli/commands.hpp"
#include "wbglimm_cli/config.hpp"
#include "wbglimm_cli/io.hpp"
#include "wbglimm_cli/scenario.hpp"

namespace fs = std::filesystem;
using namespace wbglimm;
using namespace wbglimm::cli;

namespace {

const char* kModelGrid = R"(
[model]
m = 1
k = 1

[grid]
r_min = 1
r_max = 5
dr = 0.05
t_end = 0.2
)";

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wbglimm_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string field_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST(Config, DefaultsFillUnsetKeys) {
  const RunConfig cfg = parse_config(std::string(kModelGrid) + "[initial]\nscenario = riemann\n");
  EXPECT_DOUBLE_EQ(cfg.model.m, 1.0);
  EXPECT_TRUE(cfg.has_grid);
  EXPECT_DOUBLE_EQ(cfg.grid.cfl, 0.45);
  EXPECT_EQ(cfg.seed_offset, 0u);
  EXPECT_EQ(cfg.output.prefix, "run");
  EXPECT_EQ(cfg.output.format, Format::Csv);
  EXPECT_EQ(cfg.output.points, 401);
  EXPECT_TRUE(cfg.snapshot_times.empty());
  EXPECT_NO_THROW(require_run_sections(cfg));
}

TEST(Config, CommentsAndListsParse) {
  const RunConfig cfg = parse_config(std::string("# leading comment\n") + kModelGrid +
                                     "[sampler]\noffset = 7\n"
                                     "[output]\nsnapshots = 0.05, 0.1\nformat = json\n"
                                     "[atlas]\nanchors = 1, 1, 0.1; 3, 1, 4\n");
  EXPECT_EQ(cfg.seed_offset, 7u);
  EXPECT_EQ(cfg.output.format, Format::Json);
  ASSERT_EQ(cfg.snapshot_times.size(), 2u);
  EXPECT_DOUBLE_EQ(cfg.snapshot_times[1], 0.1);
  ASSERT_EQ(cfg.atlas.anchors.size(), 2u);
  EXPECT_DOUBLE_EQ(cfg.atlas.anchors[1].v, 4.0);
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_EQ(field_of("[model]\nm = 1\nk = -1\n"), "model.k");
  EXPECT_EQ(field_of("[model]\nm = 1\n"), "model.k");
  EXPECT_EQ(field_of("[model]\nm = x\nk = 1\n"), "model.m");
  EXPECT_EQ(field_of(std::string(kModelGrid) + "[output]\nsnapshots = 0.5\n"),
            "output.snapshots");
  EXPECT_EQ(field_of(std::string(kModelGrid) + "[output]\nformat = xml\n"), "output.format");
  EXPECT_EQ(field_of("[model]\nm = 1\nk = 1\nspeed = 2\n"), "model.speed");
  EXPECT_EQ(field_of("[model]\nm = 1\nk = 1\n[grid]\nr_min = 1\nr_max = 2\ndr = 0.1\n"),
            "grid.t_end");
  EXPECT_EQ(field_of("[model]\nm = 1\nk = 1\n[physics]\nx = 1\n"), "physics");
  EXPECT_EQ(field_of(std::string(kModelGrid) + "[initial]\nscenario = vortex\n"),
            "initial.scenario");
  EXPECT_EQ(field_of(std::string(kModelGrid) + "[initial]\nscenario = riemann\nwidth = 2\n"),
            "initial.width");
}

TEST(Io, SnapshotCsvRoundTrip) {
  Snapshot s;
  s.t = 0.3;
  for (int i = 0; i < 50; ++i) {
    s.r.push_back(1.0 + 0.0731 * i);
    s.u.push_back({std::exp(std::sin(0.37 * i)), 0.1 * std::cos(1.3 * i) - 1.0 / 3.0});
  }
  std::stringstream buf;
  write_snapshot_csv(buf, s, {1.0, 1.0});
  const Snapshot back = read_snapshot_csv(buf);
  ASSERT_EQ(back.r.size(), s.r.size());
  for (std::size_t i = 0; i < s.r.size(); ++i) {
    EXPECT_NEAR(back.r[i], s.r[i], 1e-12);
    EXPECT_NEAR(back.u[i].rho, s.u[i].rho, 1e-12 * s.u[i].rho);
    EXPECT_NEAR(back.u[i].v, s.u[i].v, 1e-12);
  }
}

TEST(Io, TableRequiresHeaderColumns) {
  std::stringstream ok("v,r,rho,extra\n0.1,1,2,9\n0.2,2,3,9\n");
  const auto rows = read_table_csv(ok);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(rows[1][0], 2.0);
  EXPECT_DOUBLE_EQ(rows[1][1], 3.0);
  EXPECT_DOUBLE_EQ(rows[1][2], 0.2);
  std::stringstream bad("r,rho\n1,2\n");
  EXPECT_ANY_THROW(read_table_csv(bad));
}

TEST(Scenario, EveryNamedScenarioBuildsWithDefaults) {
  for (const std::string& name : scenario_names()) {
    if (name == "table") continue;
    RunConfig cfg = parse_config(std::string(kModelGrid) + "[initial]\nscenario = " + name + "\n");
    if (name == "steady-shock" || name == "triple") {
      cfg.grid.r_min = 2.0;
      cfg.grid.r_max = 4.0;
    }
    const Scenario sc = make_scenario(cfg);
    for (double r = cfg.grid.r_min; r <= cfg.grid.r_max; r += 0.1) {
      const FluidState u = sc.data(r);
      EXPECT_GT(u.rho, 0.0) << name;
      EXPECT_TRUE(std::isfinite(u.v)) << name;
    }
  }
}

TEST(Scenario, TableInterpolatesLinearly) {
  const fs::path dir = scratch_dir("table");
  {
    std::ofstream t(dir / "data.csv");
    t << "r,rho,v\n1,1,0.1\n3,3,0.3\n5,1,0.1\n";
  }
  RunConfig cfg = parse_config(std::string(kModelGrid) + "[initial]\nscenario = table\ntable = " +
                               (dir / "data.csv").string() + "\n");
  const Scenario sc = make_scenario(cfg);
  EXPECT_NEAR(sc.data(2.0).rho, 2.0, 1e-14);
  EXPECT_NEAR(sc.data(4.5).v, 0.15, 1e-14);
  cfg.grid.r_max = 6.0;
  EXPECT_THROW(make_scenario(cfg), ConfigError);
}

TEST(Commands, SteadyRunKeepsItsProfile) {
  const fs::path dir = scratch_dir("steady");
  RunConfig cfg = parse_config(std::string(kModelGrid) +
                               "[initial]\nscenario = steady-preserve\n"
                               "[output]\nsnapshots = 0.1\n");
  cfg.output.dir = dir.string();
  const RunSummary s = run_scenario(cfg);
  ASSERT_TRUE(s.drift.has_value());
  EXPECT_LT(*s.drift, 1e-10);
  EXPECT_EQ(s.grp_cells, 0);
  EXPECT_TRUE(fs::exists(dir / "run_snap_000.csv"));
  EXPECT_TRUE(fs::exists(dir / "run_snap_001.csv"));
  EXPECT_TRUE(fs::exists(dir / "run_snapshots.csv"));
  EXPECT_TRUE(fs::exists(dir / "run_tv.csv"));

  std::ifstream in(dir / "run_snap_001.csv");
  const Snapshot last = read_snapshot_csv(in);
  const SteadySolution ref = solve_steady(1.0, {1.0, 0.1}, cfg.model);
  ASSERT_EQ(last.r.size(), 401u);
  for (std::size_t i = 0; i < last.r.size(); i += 20) {
    EXPECT_NEAR(last.u[i].v, ref.at(last.r[i]).v, 1e-10);
  }
}

TEST(Commands, SteadyShockStaysPut) {
  const fs::path dir = scratch_dir("shock");
  RunConfig cfg = parse_config(std::string(kModelGrid) +
                               "[initial]\nscenario = steady-shock\n[output]\nformat = json\n");
  cfg.grid.r_min = 2.0;
  cfg.grid.r_max = 4.0;
  cfg.output.dir = dir.string();
  const RunSummary s = run_scenario(cfg);
  ASSERT_TRUE(s.shock_displacement.has_value());
  EXPECT_LE(*s.shock_displacement, cfg.grid.dr);
  EXPECT_TRUE(fs::exists(dir / "run_snapshots.json"));
}

TEST(Commands, ExitCodes) {
  const fs::path dir = scratch_dir("exit");
  std::ostringstream out, err;
  CommandOptions quiet;
  quiet.quiet = true;
  EXPECT_EQ(run_command((dir / "missing.ini").string(), quiet, out, err), kExitConfig);

  {
    std::ofstream f(dir / "bad.ini");
    f << "[model]\nm = 1\nk = 0\n";
  }
  err.str("");
  EXPECT_EQ(run_command((dir / "bad.ini").string(), quiet, out, err), kExitConfig);
  EXPECT_NE(err.str().find("model.k"), std::string::npos);

  // A vanishing initial velocity is a solver failure, not a config one.
  {
    std::ofstream t(dir / "still.csv");
    t << "r,rho,v\n1,1,0\n5,1,0\n";
    std::ofstream f(dir / "still.ini");
    f << kModelGrid << "[initial]\nscenario = table\ntable = " << (dir / "still.csv").string()
      << "\n[output]\ndir = " << dir.string() << "\n";
  }
  EXPECT_EQ(run_command((dir / "still.ini").string(), quiet, out, err), kExitSolver);

  {
    std::ofstream f(dir / "ok.ini");
    f << kModelGrid << "[initial]\nscenario = steady-preserve\n[output]\ndir = " << dir.string()
      << "\n";
  }
  out.str("");
  EXPECT_EQ(run_command((dir / "ok.ini").string(), {}, out, err), kExitOk);
  EXPECT_NE(out.str().find("steady drift"), std::string::npos);
  EXPECT_EQ(check_command(quiet, out, err), kExitOk);
}

TEST(Commands, SeedOffsetOverridesConfig) {
  const fs::path dir = scratch_dir("seed");
  {
    std::ofstream f(dir / "r.ini");
    f << kModelGrid << "[initial]\nscenario = riemann\n[sampler]\noffset = 3\n[output]\ndir = "
      << dir.string() << "\n";
  }
  auto final_csv = [&] {
    std::ifstream in(dir / "run_snap_000.csv");
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  std::ostringstream out, err;
  CommandOptions opt;
  opt.quiet = true;
  ASSERT_EQ(run_command((dir / "r.ini").string(), opt, out, err), kExitOk);
  const std::string from_config = final_csv();
  opt.seed_offset = 3;
  ASSERT_EQ(run_command((dir / "r.ini").string(), opt, out, err), kExitOk);
  EXPECT_EQ(final_csv(), from_config);
  opt.seed_offset = 4;
  ASSERT_EQ(run_command((dir / "r.ini").string(), opt, out, err), kExitOk);
  EXPECT_NE(final_csv(), from_config);
}

TEST(Atlas, ClassifiesAnchorsAndMatchesSonicOracle) {
  const fs::path dir = scratch_dir("atlas");
  RunConfig cfg = parse_config(
      "[model]\nm = 1\nk = 1\n"
      "[atlas]\nanchors = 1, 1, 0.1; 0.5, 1, 1; 2, 1, 1.05; 3, 16, 0.25\ncritical = true\n");
  cfg.output.dir = dir.string();
  const auto files = write_atlas(cfg);
  ASSERT_FALSE(files.empty());
  EXPECT_EQ(fs::path(files.front()).filename(), "run_atlas.csv");
  EXPECT_TRUE(fs::exists(dir / "run_critical_P-flat.csv"));

  std::ifstream in(files.front());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "index,r0,rho0,v0,tag,sonic_r,S0,domain_lo,domain_hi");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0][4], "GlobalSmooth");
  EXPECT_EQ(rows[1][4], "Critical");
  EXPECT_EQ(rows[2][4], "SonicLimited");
  EXPECT_EQ(rows[3][4], "SonicLimited");
  const ModelParams p{1.0, 1.0};
  EXPECT_NEAR(std::stod(rows[2][5]), oracle::sonic_radius(2.0, {1.0, 1.05}, p, false), 1e-10);
  EXPECT_NEAR(std::stod(rows[3][5]), oracle::sonic_radius(3.0, {16.0, 0.25}, p, false), 1e-10);

  // Sampled curves satisfy the steady relations.
  std::ifstream curve(dir / "run_anchor_002.csv");
  std::getline(curve, line);
  int n = 0;
  while (std::getline(curve, line)) {
    double r, rho, v;
    char c1, c2;
    std::stringstream(line) >> r >> c1 >> rho >> c2 >> v;
    const auto res = oracle::steady_residual(r, {rho, v}, 2.0, {1.0, 1.05}, p);
    EXPECT_LT(res.mass, 1e-10);
    EXPECT_LT(res.energy, 1e-10);
    ++n;
  }
  EXPECT_GT(n, 100);
}
