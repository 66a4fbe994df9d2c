#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "degenflow/frac_kernel.hpp"
#include "gen.hpp"

using namespace degenflow;

namespace {

// Direct cosine sum of the 1D kernel: the oracle for the FFT path.
double kernel_1d_direct(double x, int m, double eps) {
  double s = 0.0;
  for (int k = 1; k < m; ++k) s += std::pow(k, -eps) * std::cos(M_PI * k * x);
  return s + 0.5 * std::pow(m, -eps) * std::cos(M_PI * m * x);
}

// 2D: (1/4) sum over bins k in {-m+1..m}^2 \ {0}.
double kernel_2d_direct(double x, double y, int m, double eps) {
  double s = 0.0;
  for (int a = -m + 1; a <= m; ++a) {
    for (int b = -m + 1; b <= m; ++b) {
      if (a == 0 && b == 0) continue;
      s += std::pow(std::hypot(a, b), -eps) * std::cos(M_PI * (a * x + b * y));
    }
  }
  return 0.25 * s;
}

State shift(const State& u, long by) {
  State out(u.grid());
  for (std::size_t j = 0; j < u.size(); ++j) out[u.grid().wrap(static_cast<long>(j) + by)] = u[j];
  return out;
}

}  // namespace

TEST(Multiplier, SingleModes) {
  const Grid1D g(32);
  const auto spec = MultiplierSpec::make(0.5, 1);
  const State c1 = State::sample(g, [](double x) { return std::cos(M_PI * x); });
  const State c2 = State::sample(g, [](double x) { return std::cos(2 * M_PI * x); });
  EXPECT_LT((apply_multiplier(c1, spec) - c1).values().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((apply_multiplier(c2, spec) - std::pow(2.0, -0.5) * c2).values().cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(apply_multiplier(State::constant(g, 4.0), spec).values().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Multiplier, SpecValidation) {
  EXPECT_THROW(MultiplierSpec::make(0.0, 1), std::invalid_argument);
  EXPECT_THROW(MultiplierSpec::make(1.0, 1), std::invalid_argument);
  EXPECT_THROW(MultiplierSpec::make(0.5, 3), std::invalid_argument);
  EXPECT_THROW(apply_multiplier(State(Grid1D(8)), MultiplierSpec::make(0.5, 2)), std::invalid_argument);
  EXPECT_THROW(apply_multiplier(Field2D(Grid2D(8)), MultiplierSpec::make(0.5, 1)), std::invalid_argument);
  EXPECT_THROW(kernel_samples(MultiplierSpec::make(0.5, 1), Grid1D(32)), std::invalid_argument);
}

TEST(Multiplier, MatchesDirectCosineSum1D) {
  for (int m : {64, 256}) {
    for (double eps : {0.25, 0.5, 0.75}) {
      const Grid1D g(m);
      const State k = kernel_samples(MultiplierSpec::make(eps, 1), g);
      for (long i : {0L, 1L, 3L, 17L, static_cast<long>(m / 2), static_cast<long>(-m + 5)}) {
        const double want = kernel_1d_direct(static_cast<double>(i) / m, m, eps);
        EXPECT_NEAR(k.at_label(i), want, 1e-10 * std::max(1.0, std::abs(want))) << m << " " << eps << " " << i;
      }
    }
  }
}

TEST(Multiplier, MatchesDirectCosineSum2D) {
  const int m = 64;
  const Grid2D g(m);
  const Field2D k = kernel_samples(MultiplierSpec::make(0.5, 2), g);
  const auto& ax = g.axis();
  for (auto [i, j] : std::vector<std::pair<long, long>>{{1, 0}, {0, 3}, {5, -7}, {32, 32}, {-64, 11}}) {
    const double want = kernel_2d_direct(static_cast<double>(i) / m, static_cast<double>(j) / m, m, 0.5);
    EXPECT_NEAR(k(ax.index(i), ax.index(j)), want, 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST(Multiplier, KernelSymmetry) {
  const Grid1D g(128);
  const State k = kernel_samples(MultiplierSpec::make(0.5, 1), g);
  for (long i = 1; i < 128; ++i) EXPECT_NEAR(k.at_label(i), k.at_label(-i), 1e-12);
  EXPECT_GT(k.at_label(1), k.at_label(2));
  EXPECT_GT(k.at_label(2), 0.0);

  const Grid2D g2(64);
  const Field2D k2 = kernel_samples(MultiplierSpec::make(0.5, 2), g2);
  const auto& ax = g2.axis();
  for (long r = 1; r < 20; ++r) {
    EXPECT_NEAR(k2(ax.index(r), ax.index(0)), k2(ax.index(0), ax.index(r)), 1e-10);
    EXPECT_NEAR(k2(ax.index(r), ax.index(0)), k2(ax.index(-r), ax.index(0)), 1e-10);
  }
}

TEST(Multiplier, SelfAdjointTranslationInvariantComposable) {
  proptest::Gen gen(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Grid1D g(gen.integer(8, 96));
    const double e1 = gen.uniform(0.05, 0.45), e2 = gen.uniform(0.05, 0.45);
    const auto s1 = MultiplierSpec::make(e1, 1), s2 = MultiplierSpec::make(e2, 1);
    const auto s12 = MultiplierSpec::make(e1 + e2, 1);
    const State u = gen.state(g), v = gen.state(g);

    EXPECT_NEAR(inner(apply_multiplier(u, s1), v), inner(u, apply_multiplier(v, s1)), 1e-10);
    const long by = gen.integer(1, static_cast<int>(g.size()) - 1);
    EXPECT_LT((apply_multiplier(shift(u, by), s1) - shift(apply_multiplier(u, s1), by)).values().cwiseAbs().maxCoeff(),
              1e-12);
    EXPECT_LT((apply_multiplier(apply_multiplier(u, s1), s2) - apply_multiplier(u, s12)).values().cwiseAbs().maxCoeff(),
              1e-10);
  }
}

TEST(ExponentFitting, PurePowerLaw) {
  const Grid1D g(2048);
  const State p = State::sample(g, [](double x) { return std::pow(torus_distance_to_gamma(x, GammaSet::one_d()), 0.3); });
  const ExponentFit f = fit_singularity_exponent(p, GammaSet::one_d(), {0.01, 0.2});
  EXPECT_NEAR(f.slope, 0.3, 1e-6);
  EXPECT_NEAR(f.offset, 0.0, 1e-6);
  EXPECT_GE(f.points, kMinFitPoints);
  EXPECT_GT(f.r_squared, 1.0 - 1e-12);
}

TEST(ExponentFitting, OffsetModelRecoversShiftedPower) {
  std::vector<double> r, v;
  for (int i = 0; i < 40; ++i) {
    r.push_back(0.005 * std::pow(1.07, i));
    v.push_back(2.0 * std::pow(r.back(), -0.7) - 3.0);
  }
  const ExponentFit f = fit_power_law(r, v);
  EXPECT_NEAR(f.slope, -0.7, 1e-8);
  EXPECT_NEAR(f.offset, -3.0, 1e-6);
  EXPECT_NEAR(std::exp(f.intercept), 2.0, 1e-6);

  const ExponentFit naive = fit_log_log(std::vector<double>{1, 2, 4}, std::vector<double>{3, 12, 48});
  EXPECT_NEAR(naive.slope, 2.0, 1e-12);
}

TEST(ExponentFitting, Errors) {
  const Grid1D g(256);
  const State k = kernel_samples(MultiplierSpec::make(0.5, 1), g);
  EXPECT_THROW(fit_singularity_exponent(k, 0.0, {0.005, 0.05}), std::invalid_argument);  // below 2 cells
  EXPECT_THROW(fit_singularity_exponent(k, 0.0, {0.05, 0.3}), std::invalid_argument);
  EXPECT_THROW(fit_singularity_exponent(k, 0.0, {0.1, 0.05}), std::invalid_argument);
  const State neg = -1.0 * k;
  EXPECT_THROW(fit_singularity_exponent(neg, 0.0, {0.01, 0.1}), std::domain_error);
  EXPECT_THROW(fit_power_law(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}), std::invalid_argument);
}

TEST(ExponentFitting, KernelExponentHalf) {
  const State k = kernel_samples(MultiplierSpec::make(0.5, 1), Grid1D(4096));
  EXPECT_NEAR(fit_singularity_exponent(k, 0.0, {0.005, 0.05}).slope, -0.5, 0.05);
}

TEST(ExponentFitting, DeviationShrinksWithResolution) {
  double prev = 1.0;
  for (int m : {1024, 2048, 4096}) {
    const State k = kernel_samples(MultiplierSpec::make(0.5, 1), Grid1D(m));
    const double dev = std::abs(fit_singularity_exponent(k, 0.0, {0.005, 0.05}).slope + 0.5);
    EXPECT_LT(dev, prev) << m;
    prev = dev;
  }
}

TEST(CircleDelta, MassSupportAndShift) {
  const Grid2D g(128);
  const GammaSet c = GammaSet::circle();
  const Field2D d = circle_line_delta(g, c);
  EXPECT_NEAR(lattice_integral(d), M_PI, 0.01 * M_PI);
  EXPECT_GE(d.values().minCoeff(), 0.0);
  const auto& ax = g.axis();
  for (std::size_t ix = 0; ix < g.side(); ++ix) {
    for (std::size_t iy = 0; iy < g.side(); ++iy) {
      if (d(ix, iy) > 0.0) {
        EXPECT_LE(torus_distance_to_gamma(Point2{ax.node(ix), ax.node(iy)}, c), g.spacing());
      }
    }
  }
  const Field2D moved = circle_line_delta(g, GammaSet::circle({g.spacing(), 0.0}, 0.5));
  for (std::size_t ix = 0; ix < g.side(); ++ix) {
    for (std::size_t iy = 0; iy < g.side(); ++iy) {
      EXPECT_NEAR(moved(ax.wrap(static_cast<long>(ix) + 1), iy), d(ix, iy), 1e-9);
    }
  }
  EXPECT_THROW(circle_line_delta(Grid2D(8), GammaSet::circle({0, 0}, 0.4)), std::invalid_argument);
}

TEST(CircleDelta, SmoothedExponent) {
  const Grid2D g(512);
  const GammaSet c = GammaSet::circle();
  const Field2D n = apply_multiplier(circle_line_delta(g, c), MultiplierSpec::make(0.5, 2));
  EXPECT_NEAR(fit_singularity_exponent(n, c, {0.005, 0.05}).slope, -0.5, 0.1);
}
