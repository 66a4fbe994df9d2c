#include "degenflow/frac_kernel.hpp"

#include <fftw3.h>

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace degenflow {
namespace {

// The FFTW planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

ComplexBuffer allocate(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw std::bad_alloc();
  return ComplexBuffer(p);
}

// Signed frequency of DFT bin j on n points; the Nyquist bin maps to +n/2.
double frequency(std::size_t j, std::size_t n) {
  return j <= n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
}

// Applies the multiplier on a rank-1 or rank-2 periodic lattice of `side`
// points per axis. `values` is real, row-major.
Eigen::VectorXd transform(const Eigen::VectorXd& values, std::size_t side, int rank,
                          const MultiplierSpec& spec) {
  const std::size_t n = values.size();
  auto buf = allocate(n);
  for (std::size_t j = 0; j < n; ++j) {
    buf[j][0] = values[static_cast<Eigen::Index>(j)];
    buf[j][1] = 0.0;
  }

  Plan forward, backward;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    const int s = static_cast<int>(side);
    if (rank == 1) {
      forward.reset(fftw_plan_dft_1d(s, buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE));
      backward.reset(fftw_plan_dft_1d(s, buf.get(), buf.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
    } else {
      forward.reset(fftw_plan_dft_2d(s, s, buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE));
      backward.reset(fftw_plan_dft_2d(s, s, buf.get(), buf.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
    }
  }
  if (!forward || !backward) throw std::runtime_error("multiplier: FFTW planning failed");

  fftw_execute(forward.get());
  if (rank == 1) {
    for (std::size_t j = 0; j < side; ++j) {
      const double s = spec.symbol(std::abs(frequency(j, side)));
      buf[j][0] *= s;
      buf[j][1] *= s;
    }
  } else {
    for (std::size_t jx = 0; jx < side; ++jx) {
      const double kx = frequency(jx, side);
      for (std::size_t jy = 0; jy < side; ++jy) {
        const double ky = frequency(jy, side);
        const double s = spec.symbol(std::hypot(kx, ky));
        const std::size_t f = jx * side + jy;
        buf[f][0] *= s;
        buf[f][1] *= s;
      }
    }
  }
  fftw_execute(backward.get());

  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  const double scale = 1.0 / static_cast<double>(n);
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out[static_cast<Eigen::Index>(j)] = buf[j][0] * scale;
    max_re = std::max(max_re, std::abs(buf[j][0] * scale));
    max_im = std::max(max_im, std::abs(buf[j][1] * scale));
  }
  if (max_im > 1e-10 * std::max(1.0, max_re)) {
    throw std::runtime_error("multiplier: imaginary residue " + std::to_string(max_im));
  }
  return out;
}

void check_window(FitWindow w, double spacing) {
  if (!(w.r_min < w.r_max)) throw std::invalid_argument("fit: window needs r_min < r_max");
  if (!(w.r_min > 2.0 * spacing) || !(w.r_max < 0.25)) {
    throw std::invalid_argument("fit: window must lie inside (2*spacing, 0.25)");
  }
}

ExponentFit fit_collected(const std::vector<double>& r, const std::vector<double>& v, FitWindow w) {
  for (double x : v) {
    if (!(x > 0.0)) {
      throw std::domain_error(
          "fit: nonpositive sample in window; the smooth remainder dominates, refine the grid");
    }
  }
  ExponentFit fit = fit_power_law(r, v);
  fit.window = w;
  return fit;
}

struct Projection {
  double amplitude;
  double offset;
  double residual;
};

Projection project(std::span<const double> r, std::span<const double> v, double p) {
  const Eigen::Index n = static_cast<Eigen::Index>(r.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = std::pow(r[static_cast<std::size_t>(i)], p);
    design(i, 1) = 1.0;
    rhs[i] = v[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d c = design.colPivHouseholderQr().solve(rhs);
  return {c[0], c[1], (design * c - rhs).squaredNorm()};
}

void check_fit_input(std::span<const double> r, std::span<const double> v) {
  if (r.size() != v.size()) throw std::invalid_argument("fit: size mismatch");
  if (r.size() < kMinFitPoints) {
    throw std::invalid_argument("fit: need at least " + std::to_string(kMinFitPoints) +
                                " points, got " + std::to_string(r.size()));
  }
  for (double x : r) {
    if (!(x > 0.0)) throw std::invalid_argument("fit: distances must be positive");
  }
}

}  // namespace

MultiplierSpec MultiplierSpec::make(double eps, int dimension) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("multiplier: eps must lie in (0,1), got " + std::to_string(eps));
  }
  if (dimension != 1 && dimension != 2) {
    throw std::invalid_argument("multiplier: dimension must be 1 or 2");
  }
  return MultiplierSpec{eps, dimension};
}

double MultiplierSpec::symbol(double abs_k) const {
  return abs_k == 0.0 ? 0.0 : std::pow(abs_k, -eps);
}

State apply_multiplier(const State& v, const MultiplierSpec& spec) {
  if (spec.dimension != 1) throw std::invalid_argument("multiplier: 2D spec applied to 1D state");
  return State(v.grid(), transform(v.values(), v.size(), 1, spec));
}

Field2D apply_multiplier(const Field2D& v, const MultiplierSpec& spec) {
  if (spec.dimension != 2) throw std::invalid_argument("multiplier: 1D spec applied to 2D field");
  return Field2D(v.grid(), transform(v.values(), v.grid().side(), 2, spec));
}

State kernel_samples(const MultiplierSpec& spec, const Grid1D& grid) {
  if (grid.m() < 64) throw std::invalid_argument("kernel: resolution m >= 64 required");
  State delta(grid);
  delta[grid.index(0)] = 1.0 / grid.spacing();
  return apply_multiplier(delta, spec);
}

Field2D kernel_samples(const MultiplierSpec& spec, const Grid2D& grid) {
  if (grid.m() < 64) throw std::invalid_argument("kernel: resolution m >= 64 required");
  Field2D delta(grid);
  const std::size_t o = grid.axis().index(0);
  delta(o, o) = 1.0 / (grid.spacing() * grid.spacing());
  return apply_multiplier(delta, spec);
}

ExponentFit fit_power_law(std::span<const double> r, std::span<const double> v) {
  check_fit_input(r, v);

  // Coarse scan, then golden-section refinement around the best bracket.
  constexpr double lo = -3.0, hi = 3.0, step = 0.01;
  double best_p = lo;
  double best_res = std::numeric_limits<double>::infinity();
  for (double p = lo; p <= hi + 0.5 * step; p += step) {
    const double res = project(r, v, p).residual;
    if (res < best_res) {
      best_res = res;
      best_p = p;
    }
  }
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = best_p - step, b = best_p + step;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = project(r, v, c).residual, fd = project(r, v, d).residual;
  while (b - a > 1e-12) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = project(r, v, c).residual;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = project(r, v, d).residual;
    }
  }
  double p = 0.5 * (a + b);
  Projection proj = project(r, v, p);
  if (best_res < proj.residual) {
    p = best_p;
    proj = project(r, v, p);
  }
  if (!(proj.amplitude > 0.0)) throw std::domain_error("fit: nonpositive power-law amplitude");

  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double total = 0.0;
  for (double x : v) total += (x - mean) * (x - mean);

  ExponentFit fit;
  fit.slope = p;
  fit.intercept = std::log(proj.amplitude);
  fit.offset = proj.offset;
  fit.r_squared = total > 0.0 ? 1.0 - proj.residual / total : 1.0;
  fit.points = r.size();
  const auto [rmin, rmax] = std::minmax_element(r.begin(), r.end());
  fit.window = {*rmin, *rmax};
  return fit;
}

ExponentFit fit_log_log(std::span<const double> r, std::span<const double> v) {
  if (r.size() != v.size() || r.size() < 2) throw std::invalid_argument("fit: need >= 2 points");
  const Eigen::Index n = static_cast<Eigen::Index>(r.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!(r[k] > 0.0) || !(v[k] > 0.0)) throw std::domain_error("fit: log of nonpositive value");
    design(i, 0) = std::log(r[k]);
    design(i, 1) = 1.0;
    rhs[i] = std::log(v[k]);
  }
  const Eigen::Vector2d c = design.colPivHouseholderQr().solve(rhs);
  const double res = (design * c - rhs).squaredNorm();
  const double total = (rhs.array() - rhs.mean()).square().sum();

  ExponentFit fit;
  fit.slope = c[0];
  fit.intercept = c[1];
  fit.r_squared = total > 0.0 ? 1.0 - res / total : 1.0;
  fit.points = r.size();
  const auto [rmin, rmax] = std::minmax_element(r.begin(), r.end());
  fit.window = {*rmin, *rmax};
  return fit;
}

ExponentFit fit_singularity_exponent(const State& samples, const GammaSet& gamma, FitWindow window) {
  const Grid1D& g = samples.grid();
  check_window(window, g.spacing());
  std::vector<double> r, v;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double dist = torus_distance_to_gamma(g.node(j), gamma);
    if (dist >= window.r_min && dist <= window.r_max) {
      r.push_back(dist);
      v.push_back(samples[j]);
    }
  }
  return fit_collected(r, v, window);
}

ExponentFit fit_singularity_exponent(const State& samples, double origin, FitWindow window) {
  const Grid1D& g = samples.grid();
  check_window(window, g.spacing());
  std::vector<double> r, v;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double dist = torus_distance(g.node(j), origin);
    if (dist >= window.r_min && dist <= window.r_max) {
      r.push_back(dist);
      v.push_back(samples[j]);
    }
  }
  return fit_collected(r, v, window);
}

ExponentFit fit_singularity_exponent(const Field2D& samples, const GammaSet& circle, FitWindow window) {
  const Grid2D& g = samples.grid();
  check_window(window, g.spacing());
  const CircleGamma& c = circle.as_circle();
  const Grid1D& axis = g.axis();
  const auto row = axis.wrap(std::lround((wrap_to_box(c.center.y) + 1.0) * axis.m()));
  const double y = axis.node(row);
  std::vector<double> r, v;
  for (std::size_t ix = 0; ix < g.side(); ++ix) {
    const double dist = torus_distance_to_gamma(Point2{axis.node(ix), y}, circle);
    if (dist >= window.r_min && dist <= window.r_max) {
      r.push_back(dist);
      v.push_back(samples(ix, row));
    }
  }
  return fit_collected(r, v, window);
}

Field2D circle_line_delta(const Grid2D& grid, const GammaSet& circle) {
  const CircleGamma& c = circle.as_circle();
  const double h = grid.spacing();
  if (!(c.radius > 4.0 * h)) {
    throw std::invalid_argument("circle delta: radius must exceed four lattice cells");
  }
  Field2D out(grid);
  const Grid1D& axis = grid.axis();
  for (std::size_t ix = 0; ix < grid.side(); ++ix) {
    for (std::size_t iy = 0; iy < grid.side(); ++iy) {
      const double rho = torus_distance(Point2{axis.node(ix), axis.node(iy)}, c.center) - c.radius;
      out(ix, iy) = std::max(0.0, 1.0 - std::abs(rho) / h) / h;
    }
  }
  return out;
}

double lattice_integral(const Field2D& f) {
  const double h = f.grid().spacing();
  return f.values().sum() * h * h;
}

}  // namespace degenflow
