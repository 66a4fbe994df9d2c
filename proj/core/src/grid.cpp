#include "degenflow/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace degenflow {

Grid1D::Grid1D(int m) : m_(m) {
  if (m < 1) {
    throw std::invalid_argument("grid: m must be >= 1, got " + std::to_string(m));
  }
}

std::size_t Grid1D::wrap(long j) const {
  const long n = static_cast<long>(size());
  long r = j % n;
  if (r < 0) r += n;
  return static_cast<std::size_t>(r);
}

std::size_t Grid1D::index(long label) const { return wrap(label + m_); }

std::vector<double> Grid1D::nodes() const {
  std::vector<double> x(size());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = node(j);
  return x;
}

Grid2D::Grid2D(int m) : axis_(m) {}

GammaSet GammaSet::circle(Point2 center, double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("gamma: circle radius must be positive");
  }
  const bool inside = center.x - radius > -1.0 && center.x + radius < 1.0 &&
                      center.y - radius > -1.0 && center.y + radius < 1.0;
  if (!inside) {
    throw std::invalid_argument("gamma: circle must lie strictly inside [-1,1)^2");
  }
  return GammaSet(CircleGamma{center, radius});
}

const CircleGamma& GammaSet::as_circle() const {
  if (!is_circle()) throw std::logic_error("gamma: not a circle");
  return std::get<CircleGamma>(shape_);
}

Grid1D make_grid_1d(int m) { return Grid1D(m); }
Grid2D make_grid_2d(int m) { return Grid2D(m); }

double wrap_to_box(double x) { return x - 2.0 * std::floor((x + 1.0) / 2.0); }

double torus_distance(double a, double b) { return std::abs(wrap_to_box(a - b)); }

double torus_distance(Point2 a, Point2 b) {
  return std::hypot(wrap_to_box(a.x - b.x), wrap_to_box(a.y - b.y));
}

double torus_distance_to_gamma(double x, const GammaSet& gamma) {
  if (!gamma.is_one_d()) {
    throw std::invalid_argument("gamma: scalar distance needs the 1D degeneration set");
  }
  return std::min(torus_distance(x, 0.5), torus_distance(x, -0.5));
}

double torus_distance_to_gamma(Point2 p, const GammaSet& gamma) {
  if (!gamma.is_circle()) throw std::invalid_argument("gamma: planar distance needs a circle");
  const auto& c = gamma.as_circle();
  return std::abs(torus_distance(p, c.center) - c.radius);
}

}  // namespace degenflow
