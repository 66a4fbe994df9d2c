#include <cstdio>
#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "runner.hpp"

using degenflow::cli::ExperimentConfig;

int main(int argc, char** argv) {
  CLI::App app{"Degenerate diffusion experiments on periodic grids"};
  ExperimentConfig config;
  std::string scenario;
  std::string names;
  for (const auto& n : degenflow::cli::scenario_names()) names += (names.empty() ? "" : ", ") + n;

  app.add_option("--scenario", scenario, "One of: " + names)->required();
  app.add_option("--m", config.m, "Grid resolution (nodes i/m, i = -m..m-1); default depends on the scenario");
  app.add_option("--sigma", config.sigma, "Weight exponent")->capture_default_str();
  app.add_option("--eps", config.eps, "Multiplier exponent")->capture_default_str();
  app.add_option("--t-final", config.t_final, "Final time")->capture_default_str();
  app.add_option("--h-step", config.h_step, "Coarsest minimizing-movement step")->capture_default_str();
  app.add_option("--seed", config.seed, "Seed for random data")->capture_default_str();
  app.add_option("--m2d", config.m2d, "kernel-exponent: planar grid resolution, 0 skips")->capture_default_str();
  app.add_option("--out", config.output_path, "Output JSON path; CSV tables go next to it")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const auto kind = degenflow::cli::parse_scenario(scenario);
    if (!kind) throw std::invalid_argument("unknown scenario '" + scenario + "'");
    config.scenario = *kind;
    config = degenflow::cli::validate(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    const auto report = degenflow::cli::run(config);
    degenflow::cli::emit(report, config.output_path);
    for (const auto& c : report.checks) {
      std::printf("%-4s %-32s %.6g (%s)\n", c.pass ? "ok" : "FAIL", c.name.c_str(), c.value, c.requirement.c_str());
    }
    return report.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
