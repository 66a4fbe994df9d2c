#include "degenflow/weights.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace degenflow {
namespace {

Weight distance_power(const Grid1D& grid, const GammaSet& gamma, double exponent) {
  Weight w{grid, Eigen::VectorXd(static_cast<Eigen::Index>(grid.size()))};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double d = torus_distance_to_gamma(grid.node(j), gamma);
    // pow(0, 0) == 1: sigma = 0 is the non-degenerate constant weight.
    w.samples[static_cast<Eigen::Index>(j)] = std::pow(d, exponent);
  }
  return w;
}

}  // namespace

Weight Weight::with_viscosity(double delta) const {
  if (!(delta >= 0.0)) throw std::invalid_argument("weight: viscosity must be nonnegative");
  Weight out = *this;
  out.samples.array() += delta;
  return out;
}

std::size_t Weight::zero_count() const { return static_cast<std::size_t>((samples.array() == 0.0).count()); }

Weight power_weight(const Grid1D& grid, const GammaSet& gamma, double sigma) {
  if (!(sigma >= 0.0 && sigma < 1.0)) {
    throw std::invalid_argument("power_weight: sigma must lie in [0,1), got " + std::to_string(sigma));
  }
  Weight w = distance_power(grid, gamma, sigma);
  w.sigma = sigma;
  w.kind = WeightClass::Weak;
  return w;
}

Weight strong_weight(const Grid1D& grid, const GammaSet& gamma, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("strong_weight: sigma must be positive, got " + std::to_string(sigma));
  }
  Weight w = distance_power(grid, gamma, 1.0 + sigma);
  w.sigma = sigma;
  w.kind = WeightClass::Strong;
  return w;
}

State forward_gradient_magnitude(const State& u) {
  const Grid1D& g = u.grid();
  State out(g);
  const double inv = 1.0 / g.spacing();
  for (std::size_t j = 0; j < g.size(); ++j) {
    out[j] = std::abs(u[g.wrap(static_cast<long>(j) + 1)] - u[j]) * inv;
  }
  return out;
}

Weight edge_diffusivity(const State& u0, const MultiplierSpec& frac) {
  if (!(frac.eps > 0.0 && frac.eps < 1.0)) {
    throw std::invalid_argument("edge_diffusivity: eps must lie in (0,1)");
  }
  if (frac.dimension != 1) throw std::invalid_argument("edge_diffusivity: 1D multiplier required");
  const State n = apply_multiplier(forward_gradient_magnitude(u0), frac);
  Weight w{u0.grid(), (1.0 + n.values().array().square()).inverse().matrix()};
  w.sigma = 2.0 - 2.0 * frac.eps;
  w.kind = WeightClass::EdgeDetector;
  w.eps = frac.eps;
  return w;
}

ExponentFit fit_diffusivity_exponent(const Weight& edge, const GammaSet& gamma, FitWindow window) {
  State n(edge.grid);
  for (std::size_t j = 0; j < edge.grid.size(); ++j) {
    const double a = edge[j];
    n[j] = a > 0.0 ? std::sqrt(std::max(0.0, 1.0 / a - 1.0)) : 0.0;
  }
  ExponentFit fit = fit_singularity_exponent(n, gamma, window);
  // alpha ~ (A r^p)^{-2} near Gamma.
  fit.slope = -2.0 * fit.slope;
  fit.intercept = -2.0 * fit.intercept;
  return fit;
}

}  // namespace degenflow
