#pragma once

#include <cstddef>
#include <span>

#include "degenflow/grid.hpp"
#include "degenflow/state.hpp"

namespace degenflow {

// Symbol |k|^{-eps} on Z^n \ {0}, modes e^{i pi k.x} on the period-2 box.
// The zero mode is annihilated.
struct MultiplierSpec {
  double eps;
  int dimension;

  // Throws std::invalid_argument unless eps in (0,1) and dimension in {1,2}.
  static MultiplierSpec make(double eps, int dimension);
  double symbol(double abs_k) const;
};

// F^{-1} diag(|k|^{-eps}) F v. Throws std::invalid_argument on dimension
// mismatch and std::runtime_error if the inverse transform leaves an
// imaginary part above 1e-10 (relative).
State apply_multiplier(const State& v, const MultiplierSpec& spec);
Field2D apply_multiplier(const Field2D& v, const MultiplierSpec& spec);

// Discrete kernel: the multiplier applied to a unit-mass delta at x = 0.
// Requires m >= 64.
State kernel_samples(const MultiplierSpec& spec, const Grid1D& grid);
Field2D kernel_samples(const MultiplierSpec& spec, const Grid2D& grid);

struct FitWindow {
  double r_min;
  double r_max;
};

// samples ~ exp(intercept) * r^slope + offset on the window. `offset`
// absorbs the value of a smooth remainder at the singular set; it is zero for
// exact power laws.
struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double offset = 0.0;
  double r_squared = 0.0;
  FitWindow window{0.0, 0.0};
  std::size_t points = 0;
};

inline constexpr std::size_t kMinFitPoints = 8;

// Least-squares fit of values = A r^p + B (variable projection over p,
// linear in A and B). Needs >= kMinFitPoints, r > 0, and A > 0 at the optimum.
ExponentFit fit_power_law(std::span<const double> r, std::span<const double> values);

// Plain log-log regression of log(values) on log(r); no offset.
ExponentFit fit_log_log(std::span<const double> r, std::span<const double> values);

// Singularity exponent of 1D samples near Gamma = {+-1/2}, using every node
// whose torus distance to Gamma lies in the window. The window must sit in
// (2 * spacing, 0.25). Throws std::domain_error if a sample in the window is
// not strictly positive.
ExponentFit fit_singularity_exponent(const State& samples, const GammaSet& gamma, FitWindow window);
// Same, with distance measured to a single point (the kernel origin).
ExponentFit fit_singularity_exponent(const State& samples, double origin, FitWindow window);
// Same for a circle in 2D, along the lattice row through the circle centre,
// on both sides of the circle.
ExponentFit fit_singularity_exponent(const Field2D& samples, const GammaSet& circle,
                                     FitWindow window);

// Smeared line measure of a circle: hat profile of half-width one lattice
// cell across Gamma, so its lattice integral approximates the circumference.
// Requires radius > 4 * spacing.
Field2D circle_line_delta(const Grid2D& grid, const GammaSet& circle);

// Lattice integral sum(values) * spacing^2.
double lattice_integral(const Field2D& f);

}  // namespace degenflow
