#pragma once

#include <Eigen/Core>

#include "degenflow/state.hpp"
#include "degenflow/weights.hpp"

namespace degenflow {

// (Delta^+ u)_i = (u_{i+1} - u_i) / d_m, indices mod 2m.
State delta_plus(const State& u);
// (Delta^- u)_i = (u_i - u_{i-1}) / d_m, indices mod 2m.
State delta_minus(const State& u);

// E(u) = 1/2 sum_i alpha_i (Delta^+ u)_i^2 d_m.
double discrete_energy(const State& u, const Weight& w);

// Gradient of E in the d_m-weighted inner product: -Delta^-(alpha Delta^+ u).
// The semi-discrete flow is du/dt = -energy_gradient(u).
State energy_gradient(const State& u, const Weight& w);

// Dense matrix A with (Au)_i = -Delta^-_i(alpha Delta^+ u). Symmetric,
// positive semidefinite, zero row sums.
class DiscreteOperator {
 public:
  DiscreteOperator(Weight weight, Eigen::MatrixXd matrix);

  const Grid1D& grid() const { return weight_.grid; }
  const Weight& weight() const { return weight_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  std::size_t size() const { return grid().size(); }

  State apply(const State& u) const;

 private:
  Weight weight_;
  Eigen::MatrixXd matrix_;
};

// Throws std::invalid_argument if the weight lives on another grid.
DiscreteOperator assemble_operator(const Weight& w, const Grid1D& grid);

// Centered-difference energy 1/2 sum alpha_i ((u_{i+1} - u_{i-1}) / 2d_m)^2 d_m.
double centered_energy(const State& u, const Weight& w);

}  // namespace degenflow
