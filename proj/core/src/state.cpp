#include "degenflow/state.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace degenflow {

State::State(const Grid1D& grid)
    : grid_(grid), values_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.size()))) {}

State::State(const Grid1D& grid, Eigen::VectorXd values) : grid_(grid), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != grid_.size()) {
    throw std::invalid_argument("state: expected " + std::to_string(grid_.size()) +
                                " samples, got " + std::to_string(values_.size()));
  }
  if (!values_.allFinite()) throw std::invalid_argument("state: non-finite sample");
}

State State::sample(const Grid1D& grid, const std::function<double(double)>& f) {
  State u(grid);
  for (std::size_t j = 0; j < grid.size(); ++j) u[j] = f(grid.node(j));
  return u;
}

State State::constant(const Grid1D& grid, double value) {
  return State(grid, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(grid.size()), value));
}

State& State::operator+=(const State& other) {
  require_same_grid(grid_, other.grid_, "state +=");
  values_ += other.values_;
  return *this;
}

State& State::operator-=(const State& other) {
  require_same_grid(grid_, other.grid_, "state -=");
  values_ -= other.values_;
  return *this;
}

State& State::operator*=(double s) {
  values_ *= s;
  return *this;
}

State operator+(State a, const State& b) { return a += b; }
State operator-(State a, const State& b) { return a -= b; }
State operator*(double s, State a) { return a *= s; }

void require_same_grid(const Grid1D& a, const Grid1D& b, const char* what) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(what) + ": grid mismatch (m=" + std::to_string(a.m()) +
                                " vs m=" + std::to_string(b.m()) + ")");
  }
}

double inner(const State& u, const State& v) {
  require_same_grid(u.grid(), v.grid(), "inner");
  return u.values().dot(v.values()) * u.grid().spacing();
}

double norm(const State& u) { return std::sqrt(inner(u, u)); }

double average(const State& u) { return 0.5 * u.values().sum() * u.grid().spacing(); }

Field2D::Field2D(const Grid2D& grid)
    : grid_(grid), values_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.size()))) {}

Field2D::Field2D(const Grid2D& grid, Eigen::VectorXd values) : grid_(grid), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != grid_.size()) {
    throw std::invalid_argument("field: sample count does not match grid");
  }
}

State random_state(const Grid1D& grid, std::uint64_t seed, bool mean_zero) {
  std::mt19937_64 rng(seed);
  State u(grid);
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    u[j] = 2.0 * unit - 1.0;
  }
  if (mean_zero) u.values().array() -= average(u);
  return u;
}

}  // namespace degenflow
