#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "degenflow/spectral.hpp"
#include "gen.hpp"

using namespace degenflow;

namespace {

const GammaSet kGamma = GammaSet::one_d();

SpectralDecomposition decompose(int m, double sigma) {
  const Grid1D g(m);
  return eigendecompose(assemble_operator(power_weight(g, kGamma, sigma), g));
}

}  // namespace

TEST(Spectrum, HandBlocksForMTwo) {
  const SpectralDecomposition dec = decompose(2, 0.5);
  const double top = 8.0 * std::sqrt(0.5);
  const Eigen::Vector4d want(0, 0, top, top);
  EXPECT_LT((dec.eigenvalues - want).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_EQ(dec.kernel_dim, 2u);
}

TEST(Spectrum, PeriodicLaplacianClosedForm) {
  for (int m : {3, 4, 10, 33}) {
    const SpectralDecomposition dec = decompose(m, 0.0);
    const double d = 1.0 / m;
    std::vector<double> want;
    for (int k = 0; k < 2 * m; ++k) want.push_back(2.0 / (d * d) * (1.0 - std::cos(M_PI * k * d)));
    std::sort(want.begin(), want.end());
    for (std::size_t k = 0; k < want.size(); ++k) {
      EXPECT_NEAR(dec.eigenvalue(k), want[k], 1e-9 * want.back()) << m << " " << k;
    }
    EXPECT_EQ(dec.kernel_dim, 1u);
  }
}

TEST(Spectrum, KernelDimensionTracksParity) {
  for (int m : {5, 6, 15, 16, 33, 64}) EXPECT_EQ(decompose(m, 0.5).kernel_dim, m % 2 == 0 ? 2u : 1u) << m;
}

TEST(Spectrum, FirstModeIsNormalisedConstant) {
  for (int m : {7, 8}) {
    const SpectralDecomposition dec = decompose(m, 0.5);
    const State phi0 = dec.mode(0);
    EXPECT_LT((phi0.values().array() - 1.0 / std::sqrt(2.0)).abs().maxCoeff(), 1e-14);
  }
}

TEST(Spectrum, ResidualOrthonormalityParseval) {
  proptest::Gen gen(2);
  for (int m : {4, 15, 32}) {
    const Grid1D g(m);
    const DiscreteOperator op = assemble_operator(power_weight(g, kGamma, 0.5), g);
    const SpectralDecomposition dec = eigendecompose(op);
    EXPECT_LE(max_eigen_residual(dec, op), 1e-8);
    EXPECT_LE(orthonormality_defect(dec), 1e-10);

    const State u = gen.state(g);
    const Eigen::VectorXd c = dec.coefficients(u);
    EXPECT_NEAR(c.squaredNorm(), inner(u, u), 1e-10);
    Eigen::VectorXd mu_c = c.cwiseProduct(dec.eigenvalues);
    EXPECT_LE((dec.synthesize(mu_c) - op.apply(u)).values().cwiseAbs().maxCoeff(), 1e-8 * dec.eigenvalues.maxCoeff());
  }
}

TEST(Semigroup, IdentityContractionAndGroupLaw) {
  proptest::Gen gen(9);
  for (int t = 0; t < 10; ++t) {
    const Grid1D g(gen.integer(3, 40));
    const SpectralDecomposition dec = eigendecompose(assemble_operator(power_weight(g, kGamma, 0.5), g));
    const State u = gen.state(g);
    EXPECT_LE((semigroup_apply(dec, 0.0, u) - u).values().cwiseAbs().maxCoeff(), 1e-10);
    const double s = gen.uniform(0.0, 0.05), r = gen.uniform(0.0, 0.05);
    EXPECT_LE(norm(semigroup_apply(dec, s, u)), norm(u) + 1e-12);
    const State two = semigroup_apply(dec, s, semigroup_apply(dec, r, u));
    EXPECT_LE((two - semigroup_apply(dec, s + r, u)).values().cwiseAbs().maxCoeff(), 1e-9);
  }
  EXPECT_THROW(semigroup_apply(decompose(3, 0.5), -1.0, State(Grid1D(3))), std::invalid_argument);
}

TEST(Semigroup, OddGridDecaysToAverage) {
  proptest::Gen gen(10);
  const Grid1D g(21);
  const SpectralDecomposition dec = eigendecompose(assemble_operator(power_weight(g, kGamma, 0.5), g));
  const State u = gen.state(g);
  const State end = semigroup_apply(dec, 1e6 / dec.spectral_gap(), u);
  EXPECT_LT((end.values().array() - average(u)).abs().maxCoeff(), 1e-12);
}

TEST(Poincare, ClosedFormAndTrends) {
  const double d = 0.25;
  EXPECT_NEAR(poincare_constant(decompose(4, 0.0)), d * d / (2 * (1 - std::cos(M_PI * d))), 1e-12);

  // Odd grid: the Poincare constant grows with the degeneracy exponent.
  double prev = 0.0;
  for (double s : {0.0, 0.25, 0.5, 0.75}) {
    const double c = poincare_constant(decompose(33, s));
    EXPECT_GT(c, prev) << s;
    EXPECT_TRUE(std::isfinite(c));
    prev = c;
  }
  const SpectralDecomposition even = decompose(16, 0.5);
  EXPECT_DOUBLE_EQ(poincare_constant(even), 1.0 / even.eigenvalue(2));
}

TEST(Analyticity, BoundedByInverseE) {
  const SpectralDecomposition dec = decompose(17, 0.5);
  std::vector<double> ts;
  for (int k = 0; k < 20; ++k) ts.push_back(std::pow(10.0, -6 + 0.35 * k));
  EXPECT_LE(analyticity_bound(dec, ts), 1.0 / M_E + 1e-9);

  // A single mode at t = 1/mu attains the bound.
  const std::size_t k = 5;
  const State phi = dec.mode(k);
  const double t = 1.0 / dec.eigenvalue(k);
  const State image = t * assemble_operator(power_weight(Grid1D(17), kGamma, 0.5), Grid1D(17))
                              .apply(semigroup_apply(dec, t, phi));
  EXPECT_NEAR(norm(image), 1.0 / M_E, 1e-10);

  const std::vector<double> tiny{1e-12};
  EXPECT_LT(analyticity_bound(dec, tiny), 1e-6);
  EXPECT_THROW(analyticity_bound(dec, std::vector<double>{0.0}), std::invalid_argument);
}
