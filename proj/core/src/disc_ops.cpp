#include "degenflow/disc_ops.hpp"

#include <stdexcept>

namespace degenflow {

State delta_plus(const State& u) {
  const Grid1D& g = u.grid();
  State out(g);
  const double inv = 1.0 / g.spacing();
  for (std::size_t j = 0; j < g.size(); ++j) {
    out[j] = (u[g.wrap(static_cast<long>(j) + 1)] - u[j]) * inv;
  }
  return out;
}

State delta_minus(const State& u) {
  const Grid1D& g = u.grid();
  State out(g);
  const double inv = 1.0 / g.spacing();
  for (std::size_t j = 0; j < g.size(); ++j) {
    out[j] = (u[j] - u[g.wrap(static_cast<long>(j) - 1)]) * inv;
  }
  return out;
}

double discrete_energy(const State& u, const Weight& w) {
  require_same_grid(u.grid(), w.grid, "discrete_energy");
  const State du = delta_plus(u);
  return 0.5 * (w.samples.array() * du.values().array().square()).sum() * u.grid().spacing();
}

State energy_gradient(const State& u, const Weight& w) {
  require_same_grid(u.grid(), w.grid, "energy_gradient");
  State flux = delta_plus(u);
  flux.values().array() *= w.samples.array();
  State out = delta_minus(flux);
  out *= -1.0;
  return out;
}

DiscreteOperator::DiscreteOperator(Weight weight, Eigen::MatrixXd matrix)
    : weight_(std::move(weight)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(weight_.grid.size());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw std::invalid_argument("operator: matrix size does not match grid");
  }
}

State DiscreteOperator::apply(const State& u) const {
  require_same_grid(u.grid(), grid(), "operator apply");
  return State(grid(), matrix_ * u.values());
}

DiscreteOperator assemble_operator(const Weight& w, const Grid1D& grid) {
  require_same_grid(w.grid, grid, "assemble_operator");
  const auto n = static_cast<Eigen::Index>(grid.size());
  const double inv2 = 1.0 / (grid.spacing() * grid.spacing());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  // Edge (j, j+1) carries alpha_j.
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto p = static_cast<Eigen::Index>(j);
    const auto q = static_cast<Eigen::Index>(grid.wrap(static_cast<long>(j) + 1));
    const double c = w[j] * inv2;
    a(p, p) += c;
    a(q, q) += c;
    a(p, q) -= c;
    a(q, p) -= c;
  }
  return DiscreteOperator(w, std::move(a));
}

double centered_energy(const State& u, const Weight& w) {
  require_same_grid(u.grid(), w.grid, "centered_energy");
  const Grid1D& g = u.grid();
  const double d = g.spacing();
  double sum = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double c = (u[g.wrap(static_cast<long>(j) + 1)] - u[g.wrap(static_cast<long>(j) - 1)]) / (2.0 * d);
    sum += w[j] * c * c;
  }
  return 0.5 * sum * d;
}

}  // namespace degenflow
