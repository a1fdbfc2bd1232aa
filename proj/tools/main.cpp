#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wbglimm_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace wbglimm::cli;
  CLI::App app{"Well-balanced random-choice solver for radial isothermal flow"};
  app.require_subcommand(1);

  CommandOptions opt;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed-offset", seed, "Offset into the sampling sequence");
  app.add_flag("--quiet", opt.quiet, "Print only errors");

  std::string config;
  auto* run = app.add_subcommand("run", "Run a configured scenario");
  run->add_option("config", config, "Configuration file")->required();
  auto* atlas = app.add_subcommand("atlas", "Tabulate steady solutions through anchors");
  atlas->add_option("config", config, "Configuration file")->required();
  auto* check = app.add_subcommand("check", "Run built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (seed_opt->count() > 0) opt.seed_offset = seed;

  if (run->parsed()) return run_command(config, opt, std::cout, std::cerr);
  if (atlas->parsed()) return atlas_command(config, opt, std::cout, std::cerr);
  if (check->parsed()) return check_command(opt, std::cout, std::cerr);
  return kExitConfig;
}
