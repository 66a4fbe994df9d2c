#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace degenflow {

// Periodic lattice on B = [-1,1) with nodes x_i = i/m, i = -m..m-1.
// Storage index j = i + m runs over 0..2m-1; all indexing wraps modulo 2m.
class Grid1D {
 public:
  explicit Grid1D(int m);

  int m() const { return m_; }
  std::size_t size() const { return 2 * static_cast<std::size_t>(m_); }
  double spacing() const { return 1.0 / m_; }

  // Node label i in -m..m-1 for storage index j.
  int label(std::size_t j) const { return static_cast<int>(j) - m_; }
  // Storage index of (possibly out of range) label i, wrapped periodically.
  std::size_t index(long label) const;
  std::size_t wrap(long j) const;

  double node(std::size_t j) const { return static_cast<double>(label(j)) / m_; }
  std::vector<double> nodes() const;

  bool is_even() const { return m_ % 2 == 0; }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  int m_;
};

// Tensor product of two Grid1D node sets on [-1,1)^2.
class Grid2D {
 public:
  explicit Grid2D(int m);

  int m() const { return axis_.m(); }
  std::size_t side() const { return axis_.size(); }
  std::size_t size() const { return side() * side(); }
  double spacing() const { return axis_.spacing(); }
  const Grid1D& axis() const { return axis_; }

  std::size_t flat(std::size_t ix, std::size_t iy) const { return ix * side() + iy; }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  Grid1D axis_;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Degeneration set {-1/2, +1/2} of the periodic interval.
struct PairGamma {};

// Circle strictly inside [-1,1)^2.
struct CircleGamma {
  Point2 center{};
  double radius = 0.5;
};

class GammaSet {
 public:
  static GammaSet one_d() { return GammaSet(PairGamma{}); }
  // Throws std::invalid_argument unless the closed disk lies in the open box.
  static GammaSet circle(Point2 center = {}, double radius = 0.5);

  bool is_one_d() const { return std::holds_alternative<PairGamma>(shape_); }
  bool is_circle() const { return std::holds_alternative<CircleGamma>(shape_); }
  const CircleGamma& as_circle() const;

 private:
  explicit GammaSet(std::variant<PairGamma, CircleGamma> shape) : shape_(shape) {}
  std::variant<PairGamma, CircleGamma> shape_;
};

Grid1D make_grid_1d(int m);
Grid2D make_grid_2d(int m);

// Maps x into the fundamental cell [-1,1).
double wrap_to_box(double x);

// Periodic distance between two points of the circle R/2Z.
double torus_distance(double a, double b);
double torus_distance(Point2 a, Point2 b);

// Distance to Gamma on the torus. The scalar overload requires the 1D set,
// the planar overload requires a circle.
double torus_distance_to_gamma(double x, const GammaSet& gamma);
double torus_distance_to_gamma(Point2 p, const GammaSet& gamma);

}  // namespace degenflow
