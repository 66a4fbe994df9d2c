#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace degenflow::cli {

enum class Scenario {
  ParityDemo,
  Spectrum,
  KernelExponent,
  DiffusivityExponent,
  ViscosityLimit,
  FlowsCompare,
  GammaReport,
};

const char* to_string(Scenario s);
std::optional<Scenario> parse_scenario(const std::string& name);
std::vector<std::string> scenario_names();

struct ExperimentConfig {
  Scenario scenario = Scenario::ParityDemo;
  int m = 0;  // 0: scenario default
  double sigma = 0.5;
  double eps = 0.5;
  double t_final = 0.1;
  double h_step = 0.01;
  std::uint64_t seed = 1;
  int m2d = 0;  // kernel-exponent only; 0 skips the planar fit
  std::string output_path;
};

// Grid size the scenario runs with when --m is not given.
int default_m(Scenario s);
// Resolves defaults and checks scenario-specific ranges. Throws
// std::invalid_argument with a user-facing message.
ExperimentConfig validate(ExperimentConfig config);

struct Check {
  std::string name;
  double value = 0.0;
  std::string requirement;
  bool pass = false;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<std::pair<std::string, double>> metrics;  // insertion order is output order
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> tables;  // name -> CSV text
  double wall_time = 0.0;

  bool all_pass() const;
};

// Runs a validated config.
ExperimentReport run(const ExperimentConfig& config);

nlohmann::ordered_json to_json(const ExperimentReport& report);

// Writes <path> (JSON) and <stem>.<table>.csv side files, each through a
// temporary file and rename. Throws std::runtime_error naming the path.
void emit(const ExperimentReport& report, const std::string& path);

// DEGENFLOW_THREADS if set and positive, else hardware concurrency (>= 1).
unsigned thread_cap();

// Runs task(0..n-1) on at most thread_cap() threads. Exceptions propagate.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace degenflow::cli
