#pragma once

#include "degenflow/frac_kernel.hpp"
#include "degenflow/grid.hpp"
#include "degenflow/state.hpp"

namespace degenflow {

enum class WeightClass {
  Weak,          // alpha ~ d(x,Gamma)^sigma, sigma in [0,1): 1/alpha integrable
  Strong,        // alpha ~ d(x,Gamma)^(1+sigma), sigma > 0: 1/alpha not integrable
  EdgeDetector,  // alpha = 1 / (1 + N_eps(|grad u0|)^2)
};

// Diffusivity sampled pointwise at the nodes: alpha_i = alpha(x_i).
struct Weight {
  Grid1D grid;
  Eigen::VectorXd samples;
  // Exponent of the power law (Weak/Strong) or the predicted exponent
  // 2 - 2 eps near Gamma (EdgeDetector).
  double sigma = 0.0;
  WeightClass kind = WeightClass::Weak;
  double eps = 0.0;  // EdgeDetector only

  double operator[](std::size_t j) const { return samples[static_cast<Eigen::Index>(j)]; }
  // alpha + delta, same class; the regularised diffusivity of the viscosity limit.
  Weight with_viscosity(double delta) const;
  std::size_t zero_count() const;
};

// alpha_i = d(x_i, Gamma)^sigma. Throws std::invalid_argument for sigma
// outside [0,1).
Weight power_weight(const Grid1D& grid, const GammaSet& gamma, double sigma);

// alpha_i = d(x_i, Gamma)^(1+sigma). Throws for sigma <= 0.
Weight strong_weight(const Grid1D& grid, const GammaSet& gamma, double sigma);

// |Delta^+ u|: a sampled jump becomes a one-node spike of height jump/d_m.
State forward_gradient_magnitude(const State& u);

// alpha_i = 1 / (1 + N_eps(|Delta^+ u0|)_i^2). The multiplier must be 1D.
Weight edge_diffusivity(const State& u0, const MultiplierSpec& frac);

// Leading exponent of an edge diffusivity near Gamma. The kernel term is
// recovered exactly as N = sqrt(1/alpha - 1), fitted as A r^p + B, and the
// exponent of alpha ~ N^{-2} is reported as -2p.
ExponentFit fit_diffusivity_exponent(const Weight& edge, const GammaSet& gamma, FitWindow window);

}  // namespace degenflow
