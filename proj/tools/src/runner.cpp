#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "degenflow/export.hpp"
#include "degenflow/gamma_viscosity.hpp"

namespace degenflow::cli {
namespace {

constexpr std::pair<Scenario, const char*> kNames[] = {
    {Scenario::ParityDemo, "parity-demo"},
    {Scenario::Spectrum, "spectrum"},
    {Scenario::KernelExponent, "kernel-exponent"},
    {Scenario::DiffusivityExponent, "diffusivity-exponent"},
    {Scenario::ViscosityLimit, "viscosity-limit"},
    {Scenario::FlowsCompare, "flows-compare"},
    {Scenario::GammaReport, "gamma-report"},
};

constexpr FitWindow kFitWindow{0.005, 0.05};
const std::vector<int> kGammaScales{8, 16, 32, 64, 128, 256, 512};
const std::vector<double> kDeltas{1e-1, 1e-2, 1e-3, 1e-4};

std::string brief(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

class Recorder {
 public:
  explicit Recorder(ExperimentReport& r) : r_(r) {}

  void metric(const std::string& name, double value) {
    if (!std::isfinite(value)) throw std::runtime_error("metric " + name + " is not finite");
    r_.metrics.emplace_back(name, value);
  }
  void at_most(const std::string& name, double value, double bound) {
    metric(name, value);
    r_.checks.push_back({name, value, "<= " + brief(bound), value <= bound});
  }
  void at_least(const std::string& name, double value, double bound) {
    metric(name, value);
    r_.checks.push_back({name, value, ">= " + brief(bound), value >= bound});
  }
  void near(const std::string& name, double value, double target, double tol) {
    metric(name, value);
    r_.checks.push_back(
        {name, value, brief(target) + " +- " + brief(tol), std::abs(value - target) <= tol});
  }
  void flag(const std::string& name, bool ok) {
    r_.checks.push_back({name, ok ? 1.0 : 0.0, "true", ok});
  }
  void table(const std::string& name, std::string csv) { r_.tables.emplace_back(name, std::move(csv)); }

 private:
  ExperimentReport& r_;
};

double long_time(const FlowPropagator& p) { return 40.0 / p.gap(); }

void parity_demo(const ExperimentConfig& c, Recorder& rec) {
  const GammaSet gamma = GammaSet::one_d();
  const Grid1D even(c.m), odd(c.m + 1);
  const State h_even = make_h(even), h_odd = make_h(odd);

  const FlowPropagator pe(FlowKind::T1, power_weight(even, gamma, c.sigma));
  const FlowPropagator po(FlowKind::T1, power_weight(odd, gamma, c.sigma));
  const State ue = pe.evolve(h_even, long_time(pe));
  const State uo = po.evolve(h_odd, long_time(po));

  rec.metric("even_gap", pe.gap());
  rec.metric("odd_gap", po.gap());
  rec.metric("odd_initial_average", average(h_odd));
  rec.at_most("even_distance_to_h", norm(ue - h_even), 1e-10);
  rec.at_most("odd_distance_to_average", norm(uo - State::constant(odd, average(h_odd))), 1e-8);
  rec.metric("even_limit_norm", norm(ue));
  rec.metric("odd_limit_norm", norm(uo));
  rec.table("even_limit", state_csv(ue));
  rec.table("odd_limit", state_csv(uo));
}

void spectrum(const ExperimentConfig& c, Recorder& rec) {
  const Grid1D g(c.m);
  const DiscreteOperator op = assemble_operator(power_weight(g, GammaSet::one_d(), c.sigma), g);
  const SpectralDecomposition dec = eigendecompose(op);

  const std::size_t expected = (c.sigma > 0.0 && g.is_even()) ? 2 : 1;
  rec.near("kernel_dim", static_cast<double>(dec.kernel_dim), static_cast<double>(expected), 0.0);
  rec.at_most("max_eigen_residual", max_eigen_residual(dec, op), 1e-8);
  rec.at_most("orthonormality_defect", orthonormality_defect(dec), 1e-10);
  rec.metric("spectral_gap", dec.spectral_gap());
  rec.metric("poincare_constant", poincare_constant(dec));
  rec.metric("mu_max", dec.eigenvalues.maxCoeff());
  if (c.m == 2 && c.sigma == 0.5) {
    const double top = 8.0 * std::sqrt(0.5);
    const Eigen::Vector4d hand(0.0, 0.0, top, top);
    rec.at_most("hand_spectrum_error", (dec.eigenvalues - hand).cwiseAbs().maxCoeff(), 1e-9);
  }
  rec.table("spectrum", spectrum_csv(dec));
}

void kernel_exponent(const ExperimentConfig& c, Recorder& rec) {
  const Grid1D g(c.m);
  const State k1 = kernel_samples(MultiplierSpec::make(c.eps, 1), g);
  const ExponentFit f1 = fit_singularity_exponent(k1, 0.0, kFitWindow);
  rec.near("slope_1d", f1.slope, c.eps - 1.0, 0.05);
  rec.metric("r_squared_1d", f1.r_squared);
  std::vector<std::pair<std::string, ExponentFit>> fits{{"kernel_1d", f1}};
  rec.table("kernel_1d", state_csv(k1));

  if (c.m2d > 0) {
    const Grid2D g2(c.m2d);
    const GammaSet circle = GammaSet::circle();
    const Field2D delta = circle_line_delta(g2, circle);
    const Field2D n2 = apply_multiplier(delta, MultiplierSpec::make(c.eps, 2));
    const ExponentFit f2 = fit_singularity_exponent(n2, circle, kFitWindow);
    rec.metric("circle_delta_mass", lattice_integral(delta));
    rec.near("slope_2d", f2.slope, c.eps - 1.0, 0.1);
    rec.metric("r_squared_2d", f2.r_squared);
    fits.emplace_back("circle_2d", f2);
  }
  rec.table("fits", fit_csv(fits));
}

void diffusivity_exponent(const ExperimentConfig& c, Recorder& rec) {
  const Grid1D g(c.m);
  const GammaSet gamma = GammaSet::one_d();
  const State chi = State::sample(g, [](double x) { return std::abs(x) <= 0.5 ? 1.0 : 0.0; });
  const Weight a = edge_diffusivity(chi, MultiplierSpec::make(c.eps, 1));
  const ExponentFit f = fit_diffusivity_exponent(a, gamma, kFitWindow);
  rec.near("diffusivity_exponent", f.slope, 2.0 - 2.0 * c.eps, 0.1);
  rec.metric("r_squared", f.r_squared);
  rec.metric("min_alpha", a.samples.minCoeff());
  rec.table("diffusivity", state_csv(State(g, a.samples)));
  rec.table("fits", fit_csv({{"diffusivity", f}}));
}

void viscosity_limit(const ExperimentConfig& c, Recorder& rec) {
  const Grid1D g(c.m);
  const Weight w = power_weight(g, GammaSet::one_d(), c.sigma);
  const State u0 = State::sample(g, [](double x) { return std::cos(M_PI * x); });

  const auto rows = viscosity_flow_compare(u0, w, kDeltas, c.t_final);
  bool decreasing = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rec.metric("error_delta_" + brief(rows[k].delta), rows[k].error);
    if (k > 0) decreasing = decreasing && rows[k].error < rows[k - 1].error;
  }
  rec.flag("errors_strictly_decreasing", decreasing);
  rec.table("viscosity", viscosity_csv(rows));

  // Minimizing movements against the exact semigroup at t_final.
  const DiscreteOperator op = assemble_operator(w, g);
  const State exact = FlowPropagator(FlowKind::T1, w).evolve(u0, c.t_final);
  std::vector<double> steps, errors(4);
  for (int k = 0; k < 4; ++k) steps.push_back(c.h_step / std::pow(2.0, k));
  parallel_for(steps.size(), [&](std::size_t k) {
    errors[k] = norm(minimizing_movement(u0, op, steps[k], c.t_final) - exact);
  });
  double worst_order = std::numeric_limits<double>::infinity();
  std::string csv = "h_step,error\n";
  for (std::size_t k = 0; k < steps.size(); ++k) {
    csv += format_real(steps[k]) + ',' + format_real(errors[k]) + '\n';
    if (k > 0) worst_order = std::min(worst_order, std::log2(errors[k - 1] / errors[k]));
  }
  rec.metric("mm_error_finest", errors.back());
  rec.at_least("mm_observed_order", worst_order, 0.9);
  rec.table("minimizing_movement", csv);
}

void flows_compare(const ExperimentConfig& c, Recorder& rec) {
  const Grid1D g(c.m);
  const GammaSet gamma = GammaSet::one_d();
  const Weight weak = power_weight(g, gamma, c.sigma);
  const Weight strong = strong_weight(g, gamma, c.sigma);
  const State u0 = random_state(g, c.seed);
  const State h = make_h(g);
  const State avg_plus_h = State::constant(g, average(u0)) + inner(u0, h) * h;
  const auto sb = split_blocks(g);

  struct Row {
    FlowKind kind;
    const Weight* w;
    State closed;
    State limit;
  };
  std::vector<Row> rows{
      {FlowKind::T1, &weak, even_grid_limit(u0), State(g)},
      {FlowKind::T2, &weak, avg_plus_h, State(g)},
      {FlowKind::T3, &weak, block_averages(u0, {sb.inner, sb.outer}), State(g)},
      {FlowKind::Strong, &strong, avg_plus_h, State(g)},
  };
  parallel_for(rows.size(), [&](std::size_t k) {
    const FlowPropagator p(rows[k].kind, *rows[k].w);
    rows[k].limit = p.evolve(u0, long_time(p));
  });

  std::string csv = "node,x,u0,T1,T2,T3,Strong\n";
  for (std::size_t j = 0; j < g.size(); ++j) {
    csv += std::to_string(g.label(j)) + ',' + format_real(g.node(j)) + ',' + format_real(u0[j]);
    for (const Row& r : rows) csv += ',' + format_real(r.limit[j]);
    csv += '\n';
  }
  for (const Row& r : rows) {
    rec.at_most(std::string(to_string(r.kind)) + "_limit_error", norm(r.limit - r.closed), 1e-6);
  }
  rec.at_least("distance_T2_T3", norm(rows[1].limit - rows[2].limit), 1e-3);
  rec.at_least("distance_T2_Strong", norm(rows[1].limit - rows[3].limit), 1e-3);
  rec.at_least("distance_T3_Strong", norm(rows[2].limit - rows[3].limit), 1e-3);
  rec.metric("h_coefficient", inner(u0, h));
  rec.table("limits", csv);
}

void gamma_report(const ExperimentConfig& c, Recorder& rec) {
  const Grid1D g(c.m);
  const GammaSet gamma = GammaSet::one_d();
  const State smooth = State::sample(g, [](double x) { return std::cos(M_PI * x); });
  const State h = make_h(g);
  const Weight weak = power_weight(g, gamma, c.sigma);
  const Weight strong = strong_weight(g, gamma, c.sigma);

  std::vector<GammaReport> reps(3);
  parallel_for(3, [&](std::size_t k) {
    switch (k) {
      case 0: reps[0] = recovery_sequence_report(smooth, weak, kGammaScales); break;
      case 1: reps[1] = recovery_sequence_report(h, weak, kGammaScales); break;
      default: reps[2] = recovery_sequence_report(h, strong, kGammaScales); break;
    }
  });
  rec.near("smooth_viscosity_rate", reps[0].viscosity_rate.slope, c.sigma - 1.0, 0.15);
  rec.near("h_weak_energy_rate", reps[1].weighted_rate.slope, 1.0 - c.sigma, 0.15);
  rec.near("h_strong_energy_rate", reps[2].weighted_rate.slope, -c.sigma, 0.15);
  rec.metric("smooth_limit_energy", reps[0].limit_energy);
  rec.metric("smooth_energy_at_finest_scale", reps[0].entries.back().weighted_energy);
  rec.flag("liminf_inequality", reps[0].liminf_ok && reps[1].liminf_ok && reps[2].liminf_ok);
  rec.table("smooth_weak", gamma_csv(reps[0]));
  rec.table("h_weak", gamma_csv(reps[1]));
  rec.table("h_strong", gamma_csv(reps[2]));
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot rename into " + path.string());
  }
}

}  // namespace

const char* to_string(Scenario s) {
  for (const auto& [k, name] : kNames) {
    if (k == s) return name;
  }
  return "?";
}

std::optional<Scenario> parse_scenario(const std::string& name) {
  for (const auto& [k, n] : kNames) {
    if (name == n) return k;
  }
  return std::nullopt;
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const auto& [k, n] : kNames) out.emplace_back(n);
  return out;
}

int default_m(Scenario s) {
  switch (s) {
    case Scenario::KernelExponent: return 4096;
    case Scenario::DiffusivityExponent: return 2048;
    case Scenario::ViscosityLimit: return 129;
    case Scenario::GammaReport: return 4096;
    default: return 64;
  }
}

ExperimentConfig validate(ExperimentConfig c) {
  require(c.m >= 0, "--m must be positive");
  if (c.m == 0) c.m = default_m(c.scenario);
  require(!c.output_path.empty(), "--out is required");
  require(std::isfinite(c.sigma) && std::isfinite(c.eps) && std::isfinite(c.t_final) && std::isfinite(c.h_step),
          "parameters must be finite");
  const bool sigma_open = c.sigma > 0.0 && c.sigma < 1.0;
  const bool eps_open = c.eps > 0.0 && c.eps < 1.0;
  switch (c.scenario) {
    case Scenario::ParityDemo:
      require(c.m >= 2 && c.m % 2 == 0, "parity-demo needs an even --m >= 2 (the odd grid is m+1)");
      require(sigma_open, "parity-demo needs --sigma in (0,1)");
      break;
    case Scenario::Spectrum:
      require(c.m >= 2 && c.m <= 2048, "spectrum needs 2 <= --m <= 2048");
      require(c.sigma >= 0.0 && c.sigma < 1.0, "spectrum needs --sigma in [0,1)");
      break;
    case Scenario::KernelExponent:
      require(eps_open, "kernel-exponent needs --eps in (0,1)");
      require(c.m >= 512, "kernel-exponent needs --m >= 512 to resolve the fit window");
      require(c.m2d == 0 || c.m2d >= 256, "--m2d must be 0 (skip) or >= 256");
      break;
    case Scenario::DiffusivityExponent:
      require(eps_open, "diffusivity-exponent needs --eps in (0,1)");
      require(c.m >= 512, "diffusivity-exponent needs --m >= 512 to resolve the fit window");
      break;
    case Scenario::ViscosityLimit:
      require(c.m >= 3 && c.m <= 2048, "viscosity-limit needs 3 <= --m <= 2048");
      require(c.sigma >= 0.0 && c.sigma < 1.0, "viscosity-limit needs --sigma in [0,1)");
      require(c.t_final > 0.0, "viscosity-limit needs --t-final > 0");
      require(c.h_step > 0.0 && c.h_step / 8.0 <= c.t_final, "viscosity-limit needs 0 < --h-step <= 8 t_final");
      break;
    case Scenario::FlowsCompare:
      require(c.m >= 4 && c.m % 2 == 0 && c.m <= 2048, "flows-compare needs an even 4 <= --m <= 2048");
      require(sigma_open, "flows-compare needs --sigma in (0,1)");
      break;
    case Scenario::GammaReport:
      require(c.m >= 8 * kGammaScales.back(), "gamma-report needs --m >= " + std::to_string(8 * kGammaScales.back()));
      require(sigma_open, "gamma-report needs --sigma in (0,1)");
      break;
  }
  return c;
}

bool ExperimentReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

ExperimentReport run(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = config;
  Recorder rec(report);
  switch (config.scenario) {
    case Scenario::ParityDemo: parity_demo(config, rec); break;
    case Scenario::Spectrum: spectrum(config, rec); break;
    case Scenario::KernelExponent: kernel_exponent(config, rec); break;
    case Scenario::DiffusivityExponent: diffusivity_exponent(config, rec); break;
    case Scenario::ViscosityLimit: viscosity_limit(config, rec); break;
    case Scenario::FlowsCompare: flows_compare(config, rec); break;
    case Scenario::GammaReport: gamma_report(config, rec); break;
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::ordered_json to_json(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  const ExperimentConfig& c = r.config;
  j["scenario"] = to_string(c.scenario);
  j["config"] = {{"m", c.m},           {"sigma", c.sigma},   {"eps", c.eps}, {"t_final", c.t_final},
                 {"h_step", c.h_step}, {"seed", c.seed},     {"m2d", c.m2d}};
  j["metrics"] = nlohmann::ordered_json::object();
  for (const auto& [name, v] : r.metrics) j["metrics"][name] = v;
  j["checks"] = nlohmann::ordered_json::array();
  for (const Check& ch : r.checks) {
    j["checks"].push_back({{"name", ch.name}, {"value", ch.value}, {"requirement", ch.requirement}, {"pass", ch.pass}});
  }
  j["all_pass"] = r.all_pass();
  j["tables"] = nlohmann::ordered_json::array();
  for (const auto& t : r.tables) j["tables"].push_back(t.first);
  j["wall_time"] = r.wall_time;
  return j;
}

void emit(const ExperimentReport& report, const std::string& path) {
  const std::filesystem::path p(path);
  std::filesystem::path stem = p;
  if (stem.extension() == ".json") stem.replace_extension();
  for (const auto& [name, csv] : report.tables) {
    std::filesystem::path side = stem;
    side += "." + name + ".csv";
    write_atomic(side, csv);
  }
  write_atomic(p, to_json(report).dump(2) + "\n");
}

unsigned thread_cap() {
  if (const char* env = std::getenv("DEGENFLOW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(n, thread_cap());
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) task(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < n; k = next++) {
        try {
          task(k);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace degenflow::cli
