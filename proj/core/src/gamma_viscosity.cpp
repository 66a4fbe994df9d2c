#include "degenflow/gamma_viscosity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace degenflow {

Mollifier make_mollifier(int scale, double spacing) {
  if (scale < 1 || !(spacing > 0.0)) throw std::invalid_argument("mollifier: scale and spacing must be positive");
  const double reach = 1.0 / (scale * spacing);  // support radius in cells
  const int half = static_cast<int>(std::floor(reach + 1e-12));
  if (half < 2) {
    throw std::invalid_argument("mollifier: scale " + std::to_string(scale) + " is under-resolved");
  }
  Mollifier mol;
  mol.scale = scale;
  mol.spacing = spacing;
  mol.samples.resize(static_cast<std::size_t>(2 * half + 1));
  double mass = 0.0;
  for (int k = -half; k <= half; ++k) {
    const double s = k / reach;
    const double v = std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0;
    mol.samples[static_cast<std::size_t>(k + half)] = v;
    mass += v * spacing;
  }
  for (double& v : mol.samples) v /= mass;
  return mol;
}

State mollify(const State& u, const Mollifier& mol) {
  const Grid1D& g = u.grid();
  if (std::abs(mol.spacing - g.spacing()) > 1e-15) throw std::invalid_argument("mollify: spacing mismatch");
  const int half = mol.half_width();
  if (2 * half + 1 > static_cast<int>(g.size())) throw std::invalid_argument("mollify: support wraps the torus");
  State out(g);
  const double d = g.spacing();
  for (std::size_t i = 0; i < g.size(); ++i) {
    double acc = 0.0;
    for (int k = -half; k <= half; ++k) acc += mol.at(k) * u[g.wrap(static_cast<long>(i) - k)];
    out[i] = acc * d;
  }
  return out;
}

double regularized_energy(const State& u, const Weight& w, double delta) {
  if (!(delta >= 0.0)) throw std::invalid_argument("regularized_energy: delta must be nonnegative");
  return discrete_energy(u, w.with_viscosity(delta));
}

GammaReport recovery_sequence_report(const State& u, const Weight& w, const std::vector<int>& scales) {
  require_same_grid(u.grid(), w.grid, "recovery_sequence_report");
  if (scales.size() < 2) throw std::invalid_argument("gamma report: need at least two scales");
  for (std::size_t k = 1; k < scales.size(); ++k) {
    if (scales[k] <= scales[k - 1]) throw std::invalid_argument("gamma report: scales must increase");
  }
  const Grid1D& g = u.grid();
  if (g.m() < 8 * scales.back()) {
    throw std::invalid_argument("gamma report: grid m=" + std::to_string(g.m()) + " does not resolve scale " +
                                std::to_string(scales.back()));
  }
  const double d = g.spacing();

  GammaReport rep;
  rep.limit_energy = discrete_energy(u, w);
  rep.liminf_ok = true;
  std::vector<double> ms, visc, weighted;
  for (int s : scales) {
    const State um = mollify(u, make_mollifier(s, d));
    ScaleEntry e;
    e.scale = s;
    e.weighted_energy = discrete_energy(um, w);
    e.viscosity_term = 0.5 * delta_plus(um).values().squaredNorm() * d / s;
    e.total_energy = regularized_energy(um, w, 1.0 / s);
    rep.liminf_ok = rep.liminf_ok && e.weighted_energy <= e.total_energy;
    rep.entries.push_back(e);
    ms.push_back(s);
    visc.push_back(e.viscosity_term);
    weighted.push_back(e.weighted_energy);
  }
  rep.viscosity_rate = fit_log_log(ms, visc);
  rep.weighted_rate = fit_log_log(ms, weighted);
  return rep;
}

std::vector<ViscosityRow> viscosity_flow_compare(const State& u0, const Weight& w, const std::vector<double>& deltas,
                                                 double t) {
  require_same_grid(u0.grid(), w.grid, "viscosity_flow_compare");
  if (!(t > 0.0)) throw std::invalid_argument("viscosity_flow_compare: t must be positive");
  const FlowKind kind = w.kind == WeightClass::Strong ? FlowKind::Strong : FlowKind::T1;
  const State reference = FlowPropagator(kind, w).evolve(u0, t);
  std::vector<ViscosityRow> rows;
  rows.reserve(deltas.size());
  for (double delta : deltas) {
    const State ud = FlowPropagator(kind, w.with_viscosity(delta)).evolve(u0, t);
    rows.push_back({delta, norm(ud - reference)});
  }
  return rows;
}

double weight_mollifier_bound(const Weight& w, int scale) {
  if ((w.samples.array() <= 0.0).any()) throw std::domain_error("weight_mollifier_bound: weight vanishes on a node");
  State inv(w.grid, w.samples.cwiseInverse());
  const State smooth = mollify(inv, make_mollifier(scale, w.grid.spacing()));
  return (w.samples.array() * smooth.values().array()).maxCoeff();
}

}  // namespace degenflow
