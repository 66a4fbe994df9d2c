#pragma once

#include <cstdint>
#include <span>

#include "degenflow/disc_ops.hpp"

namespace degenflow {

// Eigenpairs of a DiscreteOperator, eigenvalues ascending, eigenvectors
// orthonormal in the d_m-weighted inner product. Eigenvalues below the kernel
// tolerance are stored as exact zeros and the kernel basis starts with the
// normalised constant 1/sqrt(2).
struct SpectralDecomposition {
  Grid1D grid;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // column k is phi_k
  std::size_t kernel_dim = 0;
  double kernel_tolerance = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(eigenvalues.size()); }
  double eigenvalue(std::size_t k) const { return eigenvalues[static_cast<Eigen::Index>(k)]; }
  State mode(std::size_t k) const;
  // Coefficients <u, phi_k>.
  Eigen::VectorXd coefficients(const State& u) const;
  State synthesize(const Eigen::VectorXd& coefficients) const;
  // Smallest eigenvalue above the kernel. Throws if every mode is in the kernel.
  double spectral_gap() const;
};

// Relative kernel threshold: eigenvalues below 1e-10 * mu_max count as zero.
inline constexpr double kKernelRelTol = 1e-10;

// Throws std::invalid_argument if A is not symmetric to 1e-12 (relative).
SpectralDecomposition eigendecompose(const DiscreteOperator& op);

// sum_k exp(-mu_k t) <u0, phi_k> phi_k. Throws for t < 0.
State semigroup_apply(const SpectralDecomposition& dec, double t, const State& u0);

// 1 / mu_{kernel_dim}: the discrete Poincare constant on the orthogonal
// complement of the kernel.
double poincare_constant(const SpectralDecomposition& dec);

// max over t in t_grid and over `samples` random unit u0 of
// ||t A exp(-tA) u0||. Bounded by sup s e^{-s} = 1/e.
double analyticity_bound(const SpectralDecomposition& dec, std::span<const double> t_grid,
                         std::size_t samples = 32, std::uint64_t seed = 1);

// Diagnostics used by the acceptance suite and the runner.
double max_eigen_residual(const SpectralDecomposition& dec, const DiscreteOperator& op);
double orthonormality_defect(const SpectralDecomposition& dec);

}  // namespace degenflow
