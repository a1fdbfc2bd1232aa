#include "wbglimm_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wbglimm/errors.hpp"
#include "wbglimm/waves.hpp"
#include "wbglimm_cli/io.hpp"
#include "wbglimm_cli/scenario.hpp"

namespace wbglimm::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("output.dir", "cannot write '" + path.string() + "'");
  return out;
}

fs::path prepare_dir(const OutputSpec& o) {
  const fs::path dir(o.dir.empty() ? "." : o.dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("output.dir", "cannot create '" + dir.string() + "': " + ec.message());
  return dir;
}

std::string indexed(const std::string& prefix, const char* what, std::size_t i) {
  std::ostringstream name;
  name << prefix << '_' << what << '_' << std::setw(3) << std::setfill('0') << i << ".csv";
  return name.str();
}

double sup_distance(const Snapshot& s, const SteadySolution& ref) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.r.size(); ++i) {
    const FluidState e = ref.at(s.r[i]);
    worst = std::max({worst, std::abs(std::log(s.u[i].rho / e.rho)), std::abs(s.u[i].v - e.v)});
  }
  return worst;
}

template <class F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace

RunSummary run_scenario(const RunConfig& cfg) {
  require_run_sections(cfg);
  const Scenario sc = make_scenario(cfg);
  const GridSpec& g = cfg.grid;
  std::vector<double> out_r(static_cast<std::size_t>(cfg.output.points));
  for (std::size_t i = 0; i < out_r.size(); ++i) {
    out_r[i] = i + 1 == out_r.size()
                   ? g.r_max
                   : g.r_min + (g.r_max - g.r_min) * static_cast<double>(i) /
                                   static_cast<double>(out_r.size() - 1);
  }

  const auto start = std::chrono::steady_clock::now();
  const RunResult res = run(sc.data, g, cfg.model, cfg.seed_offset, out_r, cfg.snapshot_times);
  const auto stop = std::chrono::steady_clock::now();

  RunSummary sum;
  sum.wall_seconds = std::chrono::duration<double>(stop - start).count();
  sum.steps = res.tv.records.size() - 1;
  sum.tv_lnrho = res.tv.records.back().tv_lnrho;
  sum.tv_v = res.tv.records.back().tv_v;
  sum.fitted_C = res.tv.fitted_C();
  sum.fitted_C1 = res.tv.fitted_C1();
  sum.envelope_holds = res.tv.envelope_holds(sum.fitted_C1);
  sum.grp_cells = res.grp_cells;
  sum.triple_cells = res.triple_cells;
  const Snapshot& last = res.snapshots.back();
  if (sc.reference) sum.drift = sup_distance(last, *sc.reference);
  if (sc.shock_r) {
    double best = std::numeric_limits<double>::infinity();
    for (double r : last.jumps) best = std::min(best, std::abs(r - *sc.shock_r));
    sum.shock_displacement = best;
  }

  const fs::path dir = prepare_dir(cfg.output);
  const std::string& prefix = cfg.output.prefix;
  if (cfg.output.format == Format::Csv) {
    const fs::path index = dir / (prefix + "_snapshots.csv");
    std::ofstream idx = open_out(index);
    idx << "index,t,file,jumps\n" << std::setprecision(17);
    for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
      const Snapshot& s = res.snapshots[i];
      const std::string name = indexed(prefix, "snap", i);
      std::ofstream out = open_out(dir / name);
      write_snapshot_csv(out, s, cfg.model);
      sum.files.push_back((dir / name).string());
      idx << i << ',' << s.t << ',' << name << ',';
      for (std::size_t j = 0; j < s.jumps.size(); ++j) idx << (j ? ";" : "") << s.jumps[j];
      idx << '\n';
    }
    sum.files.push_back(index.string());
  } else {
    const fs::path path = dir / (prefix + "_snapshots.json");
    std::ofstream out = open_out(path);
    write_snapshots_json(out, res.snapshots, cfg.model);
    sum.files.push_back(path.string());
  }
  const fs::path tv = dir / (prefix + "_tv.csv");
  std::ofstream tv_out = open_out(tv);
  write_tv_csv(tv_out, res.tv);
  sum.files.push_back(tv.string());
  return sum;
}

std::vector<std::string> write_atlas(const RunConfig& cfg) {
  require_atlas_sections(cfg);
  const AtlasSpec& a = cfg.atlas;
  const ModelParams& p = cfg.model;
  const fs::path dir = prepare_dir(cfg.output);
  const std::string& prefix = cfg.output.prefix;
  std::vector<std::string> files;

  auto radii = [&](double lo, double hi) {
    std::vector<double> r;
    lo = std::max(lo, a.r_lo);
    hi = std::min(hi, a.r_hi);
    if (!(hi > lo)) return r;
    for (int i = 0; i < a.samples; ++i) {
      r.push_back(i + 1 == a.samples ? hi : lo + (hi - lo) * i / (a.samples - 1.0));
    }
    return r;
  };

  nlohmann::json doc;
  doc["critical_radius"] = p.critical_radius();
  doc["anchors"] = nlohmann::json::array();
  std::ostringstream table;
  table << "index,r0,rho0,v0,tag,sonic_r,S0,domain_lo,domain_hi\n" << std::setprecision(17);
  for (std::size_t i = 0; i < a.anchors.size(); ++i) {
    const Anchor& an = a.anchors[i];
    const SteadySolution s = solve_steady(an.r, {an.rho, an.v}, p);
    const auto r = radii(s.domain().lo, s.domain().hi);
    const double sonic = s.sonic_radius().value_or(std::nan(""));
    table << i << ',' << an.r << ',' << an.rho << ',' << an.v << ',' << tag_name(s.tag()) << ','
          << sonic << ',' << s.S0() << ',' << s.domain().lo << ',' << s.domain().hi << '\n';
    if (cfg.output.format == Format::Csv) {
      const fs::path path = dir / indexed(prefix, "anchor", i);
      std::ofstream out = open_out(path);
      out << "r,rho,v\n" << std::setprecision(17);
      for (double x : r) {
        const FluidState u = s.at(x);
        out << x << ',' << u.rho << ',' << u.v << '\n';
      }
      files.push_back(path.string());
    } else {
      nlohmann::json e;
      e["anchor"] = {an.r, an.rho, an.v};
      e["tag"] = tag_name(s.tag());
      e["sonic_r"] = s.sonic_radius() ? nlohmann::json(*s.sonic_radius()) : nlohmann::json();
      e["S0"] = s.S0();
      std::vector<double> rho, v;
      for (double x : r) {
        const FluidState u = s.at(x);
        rho.push_back(u.rho);
        v.push_back(u.v);
      }
      e["r"] = r;
      e["rho"] = rho;
      e["v"] = v;
      doc["anchors"].push_back(std::move(e));
    }
  }
  if (a.critical) {
    const auto r = radii(0.0, std::numeric_limits<double>::infinity());
    for (CriticalBranch b : {CriticalBranch::PFlat, CriticalBranch::PSharp, CriticalBranch::NFlat,
                             CriticalBranch::NSharp}) {
      std::vector<double> v;
      for (double x : r) v.push_back(eval_critical(b, x, p));
      if (cfg.output.format == Format::Csv) {
        const fs::path path = dir / (prefix + "_critical_" + branch_name(b) + ".csv");
        std::ofstream out = open_out(path);
        out << "r,v\n" << std::setprecision(17);
        for (std::size_t i = 0; i < r.size(); ++i) out << r[i] << ',' << v[i] << '\n';
        files.push_back(path.string());
      } else {
        doc["critical"][branch_name(b)] = {{"r", r}, {"v", v}};
      }
    }
  }
  if (cfg.output.format == Format::Csv) {
    const fs::path path = dir / (prefix + "_atlas.csv");
    std::ofstream out = open_out(path);
    out << table.str();
    files.insert(files.begin(), path.string());
  } else {
    const fs::path path = dir / (prefix + "_atlas.json");
    std::ofstream out = open_out(path);
    out << doc.dump(1) << '\n';
    files.push_back(path.string());
  }
  return files;
}

int run_command(const std::string& config_path, const CommandOptions& opt, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    RunConfig cfg = load_config(config_path);
    if (opt.seed_offset) cfg.seed_offset = *opt.seed_offset;
    const RunSummary s = run_scenario(cfg);
    if (!opt.quiet) {
      out << std::setprecision(10) << "scenario     " << cfg.initial.scenario << '\n'
          << "steps        " << s.steps << '\n'
          << "wall time    " << s.wall_seconds << " s\n"
          << "final TV     ln rho " << s.tv_lnrho << ", v " << s.tv_v << '\n'
          << "fitted C     " << s.fitted_C << '\n'
          << "fitted C1    " << s.fitted_C1 << (s.envelope_holds ? "" : " (envelope exceeded)")
          << '\n'
          << "GRP cells    " << s.grp_cells << ", triple cells " << s.triple_cells << '\n';
      if (s.drift) out << "steady drift " << *s.drift << '\n';
      if (s.shock_displacement) out << "shock moved  " << *s.shock_displacement << '\n';
      for (const std::string& f : s.files) out << "wrote        " << f << '\n';
    }
    return kExitOk;
  });
}

int atlas_command(const std::string& config_path, const CommandOptions& opt, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config_path);
    const std::vector<std::string> files = write_atlas(cfg);
    if (!opt.quiet) {
      out << std::setprecision(12);
      for (const Anchor& an : cfg.atlas.anchors) {
        const SteadySolution s = solve_steady(an.r, {an.rho, an.v}, cfg.model);
        out << "anchor (" << an.r << ", " << an.rho << ", " << an.v << "): " << tag_name(s.tag());
        if (s.sonic_radius()) out << ", sonic radius " << *s.sonic_radius();
        out << '\n';
      }
      for (const std::string& f : files) out << "wrote " << f << '\n';
    }
    return kExitOk;
  });
}

int check_command(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    struct Check {
      const char* name;
      std::function<double()> measure;
      double limit;
    };
    const ModelParams p{1.0, 1.0};
    std::mt19937_64 gen(opt.seed_offset.value_or(0));
    std::uniform_real_distribution<double> lr(-2.0, 2.0), vv(-2.0, 2.0);
    const std::vector<Check> checks{
        {"riemann middle lies on both wave curves",
         [&] {
           double worst = 0.0;
           for (int i = 0; i < 200; ++i) {
             const FluidState l{std::exp(lr(gen)), vv(gen)}, r{std::exp(lr(gen)), vv(gen)};
             const WaveFan f = solve_riemann(l, r, p);
             const double v1 = f.middle.rho <= l.rho ? rarefaction1(f.middle.rho, l, p).v
                                                     : shock1(f.middle.rho, l, p).state.v;
             const double v2 = f.middle.rho <= r.rho ? rarefaction2(f.middle.rho, r, p).v
                                                     : shock2(f.middle.rho, r, p).state.v;
             worst = std::max({worst, std::abs(v1 - f.middle.v), std::abs(v2 - f.middle.v)});
           }
           return worst;
         },
         1e-10},
        {"shock curves satisfy the jump conditions",
         [&] {
           double worst = 0.0;
           for (int i = 0; i < 200; ++i) {
             const FluidState a{std::exp(lr(gen)), vv(gen)};
             const ShockPoint s = shock1(a.rho * std::exp(std::abs(lr(gen))), a, p);
             worst = std::max(worst, rankine_hugoniot_residual(a, s.state, s.sigma, p));
           }
           return worst;
         },
         1e-10},
        {"steady states conserve mass flux and energy",
         [&] {
           double worst = 0.0;
           const SteadySolution s = solve_steady(1.0, {1.0, 0.1}, p);
           const double e0 = 0.5 * 0.01 - p.m;
           for (int i = 0; i <= 100; ++i) {
             const double r = 0.2 + 0.1 * i;
             const FluidState u = s.at(r);
             worst = std::max({worst, std::abs(r * r * u.rho * u.v - s.Q0()) / s.Q0(),
                               std::abs(0.5 * u.v * u.v + std::log(u.rho) - p.m / r - e0)});
           }
           return worst;
         },
         1e-10},
        {"steady data is preserved by the scheme",
         [&] {
           const SteadySolution s = solve_steady(1.0, {1.0, 0.1}, p);
           GridSpec g;
           g.dr = 0.05;
           GlimmState st = init_approximation([&](double r) { return s.at(r); }, g, p);
           const Sampler sampler(opt.seed_offset.value_or(0));
           for (int n = 0; n < 20; ++n) step(st, g, p, sampler, 1.0);
           double worst = 0.0;
           for (int i = 0; i <= 80; ++i) {
             const double r = 1.0 + 0.05 * i;
             const FluidState u = st.at(r), e = s.at(r);
             worst = std::max({worst, std::abs(std::log(u.rho / e.rho)), std::abs(u.v - e.v)});
           }
           return worst;
         },
         1e-10},
    };
    int failed = 0;
    for (const Check& c : checks) {
      const double value = c.measure();
      const bool ok = value <= c.limit;
      failed += ok ? 0 : 1;
      if (!opt.quiet || !ok) {
        out << (ok ? "ok   " : "FAIL ") << c.name << ": " << std::setprecision(3) << value
            << " (limit " << c.limit << ")\n";
      }
    }
    return failed == 0 ? kExitOk : kExitSolver;
  });
}

}  // namespace wbglimm::cli
