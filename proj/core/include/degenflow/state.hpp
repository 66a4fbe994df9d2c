#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>

#include "degenflow/grid.hpp"

namespace degenflow {

// Periodic sample vector u_i, i = -m..m-1, tied to a Grid1D.
class State {
 public:
  explicit State(const Grid1D& grid);
  State(const Grid1D& grid, Eigen::VectorXd values);

  // Samples f at every node.
  static State sample(const Grid1D& grid, const std::function<double(double)>& f);
  static State constant(const Grid1D& grid, double value);

  const Grid1D& grid() const { return grid_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }

  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  double operator[](std::size_t j) const { return values_[static_cast<Eigen::Index>(j)]; }
  double& operator[](std::size_t j) { return values_[static_cast<Eigen::Index>(j)]; }
  // Value at node label i (wrapped).
  double at_label(long i) const { return (*this)[grid_.index(i)]; }

  State& operator+=(const State& other);
  State& operator-=(const State& other);
  State& operator*=(double s);

 private:
  Grid1D grid_;
  Eigen::VectorXd values_;
};

State operator+(State a, const State& b);
State operator-(State a, const State& b);
State operator*(double s, State a);

// Throws std::invalid_argument if the grids differ.
void require_same_grid(const Grid1D& a, const Grid1D& b, const char* what);

// d_m-weighted inner product <u,v> = sum u_i v_i d_m; <1,1> = 2.
double inner(const State& u, const State& v);
double norm(const State& u);
// avg(u) = (1/2) sum u_i d_m, the mean over B.
double average(const State& u);

// Seeded uniform samples in [-1,1] from mt19937_64 (53-bit mantissa taken
// directly, so the values do not depend on the standard library). With
// mean_zero the average is subtracted afterwards.
State random_state(const Grid1D& grid, std::uint64_t seed, bool mean_zero = false);

// Samples on a Grid2D, row-major in (ix, iy).
class Field2D {
 public:
  explicit Field2D(const Grid2D& grid);
  Field2D(const Grid2D& grid, Eigen::VectorXd values);

  const Grid2D& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  double operator()(std::size_t ix, std::size_t iy) const {
    return values_[static_cast<Eigen::Index>(grid_.flat(ix, iy))];
  }
  double& operator()(std::size_t ix, std::size_t iy) {
    return values_[static_cast<Eigen::Index>(grid_.flat(ix, iy))];
  }

 private:
  Grid2D grid_;
  Eigen::VectorXd values_;
};

}  // namespace degenflow
