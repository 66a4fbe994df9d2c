#include "degenflow/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace degenflow {

State SpectralDecomposition::mode(std::size_t k) const {
  return State(grid, eigenvectors.col(static_cast<Eigen::Index>(k)));
}

Eigen::VectorXd SpectralDecomposition::coefficients(const State& u) const {
  require_same_grid(u.grid(), grid, "spectral coefficients");
  return eigenvectors.transpose() * u.values() * grid.spacing();
}

State SpectralDecomposition::synthesize(const Eigen::VectorXd& c) const {
  return State(grid, eigenvectors * c);
}

double SpectralDecomposition::spectral_gap() const {
  if (kernel_dim >= size()) throw std::domain_error("spectral: operator is entirely degenerate");
  return eigenvalue(kernel_dim);
}

SpectralDecomposition eigendecompose(const DiscreteOperator& op) {
  const Eigen::MatrixXd& a = op.matrix();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("eigendecompose: operator is not symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecompose: solver failed");

  SpectralDecomposition dec{op.grid(), solver.eigenvalues(), solver.eigenvectors()};
  const double d = op.grid().spacing();
  // Euclidean-orthonormal -> d_m-weighted orthonormal.
  dec.eigenvectors /= std::sqrt(d);

  const auto n = dec.eigenvalues.size();
  dec.kernel_tolerance = kKernelRelTol * std::max(dec.eigenvalues[n - 1], 0.0);
  Eigen::Index kdim = 0;
  while (kdim < n && dec.eigenvalues[kdim] <= dec.kernel_tolerance) {
    dec.eigenvalues[kdim] = 0.0;
    ++kdim;
  }
  dec.kernel_dim = static_cast<std::size_t>(kdim);

  // Rotate the kernel basis so phi_0 is the normalised constant. Constants
  // always lie in the kernel (zero row sums).
  if (kdim > 0) {
    Eigen::MatrixXd basis = dec.eigenvectors.leftCols(kdim);
    const Eigen::VectorXd one = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(2.0));
    Eigen::MatrixXd rotated(n, kdim);
    rotated.col(0) = one;
    for (Eigen::Index k = 1; k < kdim; ++k) rotated.col(k).setZero();
    // Gram-Schmidt the remaining kernel vectors against the constant.
    Eigen::Index filled = 1;
    for (Eigen::Index k = 0; k < kdim && filled < kdim; ++k) {
      Eigen::VectorXd v = basis.col(k);
      for (Eigen::Index j = 0; j < filled; ++j) v -= (rotated.col(j).dot(v) * d) * rotated.col(j);
      const double nv = std::sqrt(v.squaredNorm() * d);
      if (nv > 1e-6) rotated.col(filled++) = v / nv;
    }
    dec.eigenvectors.leftCols(kdim) = rotated;
  }
  return dec;
}

State semigroup_apply(const SpectralDecomposition& dec, double t, const State& u0) {
  if (!(t >= 0.0)) throw std::invalid_argument("semigroup_apply: t must be nonnegative");
  Eigen::VectorXd c = dec.coefficients(u0);
  c.array() *= (-t * dec.eigenvalues.array()).exp();
  return dec.synthesize(c);
}

double poincare_constant(const SpectralDecomposition& dec) { return 1.0 / dec.spectral_gap(); }

double analyticity_bound(const SpectralDecomposition& dec, std::span<const double> t_grid,
                         std::size_t samples, std::uint64_t seed) {
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    State u = random_state(dec.grid, seed + s);
    u *= 1.0 / norm(u);
    const Eigen::VectorXd c = dec.coefficients(u);
    for (double t : t_grid) {
      if (!(t > 0.0)) throw std::invalid_argument("analyticity_bound: times must be positive");
      const Eigen::ArrayXd s_mu = t * dec.eigenvalues.array();
      const Eigen::ArrayXd damped = s_mu * (-s_mu).exp() * c.array();
      // Parseval in the weighted inner product.
      worst = std::max(worst, std::sqrt(damped.square().sum()));
    }
  }
  return worst;
}

double max_eigen_residual(const SpectralDecomposition& dec, const DiscreteOperator& op) {
  double worst = 0.0;
  for (std::size_t k = 0; k < dec.size(); ++k) {
    const State phi = dec.mode(k);
    const State r = op.apply(phi) - dec.eigenvalue(k) * phi;
    worst = std::max(worst, norm(r) / std::max(1.0, dec.eigenvalue(k)));
  }
  return worst;
}

double orthonormality_defect(const SpectralDecomposition& dec) {
  const Eigen::MatrixXd gram = dec.eigenvectors.transpose() * dec.eigenvectors * dec.grid.spacing();
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace degenflow
