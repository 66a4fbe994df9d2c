#pragma once

#include <vector>

#include "degenflow/flows.hpp"

namespace degenflow {

// Discrete bump phi_m(x) = m phi(m x), phi(s) ~ exp(-1/(1-s^2)) on |s| < 1,
// sampled at offsets k d for |k| <= half_width and rescaled so that
// sum samples * spacing = 1.
struct Mollifier {
  int scale = 1;
  double spacing = 1.0;
  std::vector<double> samples;  // offsets -half_width..half_width

  int half_width() const { return static_cast<int>(samples.size() / 2); }
  double at(int k) const { return samples[static_cast<std::size_t>(k + half_width())]; }
};

// Throws std::invalid_argument if the support covers fewer than 2 cells.
Mollifier make_mollifier(int scale, double spacing);

// Periodic discrete convolution (phi_m * u)_i = sum_k phi_k u_{i-k} d.
State mollify(const State& u, const Mollifier& mol);

// Discrete energy under the weight alpha + delta.
double regularized_energy(const State& u, const Weight& w, double delta);

struct ScaleEntry {
  int scale = 0;
  double weighted_energy = 0.0;  // E_alpha(u_m)
  double viscosity_term = 0.0;   // (1/m) * 1/2 sum |Delta^+ u_m|^2 d
  double total_energy = 0.0;     // E^m(u_m) = weighted + viscosity
};

struct GammaReport {
  std::vector<ScaleEntry> entries;
  double limit_energy = 0.0;  // E_alpha(u) on the fine grid
  bool liminf_ok = false;     // E_alpha(u_m) <= E^m(u_m) at every scale
  ExponentFit viscosity_rate;
  ExponentFit weighted_rate;
};

// Mollifies u at each scale, evaluates the weighted and viscous parts of the
// regularised energy, and fits both against the scale. Scales must be
// strictly increasing and the grid must satisfy m >= 8 * max scale.
GammaReport recovery_sequence_report(const State& u, const Weight& w, const std::vector<int>& scales);

struct ViscosityRow {
  double delta = 0.0;
  double error = 0.0;  // |u_delta(t) - u_0(t)| in the weighted norm
};

// Evolves u0 under alpha + delta for each delta and compares with the
// undamped flow at time t.
std::vector<ViscosityRow> viscosity_flow_compare(const State& u0, const Weight& w, const std::vector<double>& deltas,
                                                 double t);

// max_i alpha_i (phi_m * 1/alpha)_i. Needs a weight without zeros.
double weight_mollifier_bound(const Weight& w, int scale);

}  // namespace degenflow
