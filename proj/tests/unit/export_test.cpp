#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "degenflow/export.hpp"

using namespace degenflow;

namespace {
std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }
}  // namespace

TEST(Export, RealFormattingRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 12345.678901234567}) {
    EXPECT_EQ(std::strtod(format_real(x).c_str(), nullptr), x);
  }
}

TEST(Export, StateAndTrajectoryRowCounts) {
  const Grid1D g(5);
  const State u = State::sample(g, [](double x) { return x * x; });
  const std::string s = state_csv(u);
  EXPECT_EQ(s.substr(0, s.find('\n')), "node,x,value");
  EXPECT_EQ(lines(s), 1 + g.size());
  EXPECT_NE(s.find("\n-5,-1,1\n"), std::string::npos);

  const std::string t = trajectory_csv({{0.0, u}, {0.5, u}});
  EXPECT_EQ(lines(t), 1 + 2 * g.size());
}

TEST(Export, SpectrumGammaViscosityFits) {
  const Grid1D g(3);
  const SpectralDecomposition dec = eigendecompose(assemble_operator(power_weight(g, GammaSet::one_d(), 0.5), g));
  EXPECT_EQ(lines(spectrum_csv(dec)), 7u);
  GammaReport rep;
  rep.entries.push_back({8, 1.0, 2.0, 3.0});
  EXPECT_EQ(gamma_csv(rep), "scale,weighted,viscosity,total\n8,1,2,3\n");
  EXPECT_EQ(viscosity_csv({{0.5, 0.25}}), "delta,error\n0.5,0.25\n");
  ExponentFit f;
  f.slope = -0.5;
  f.points = 9;
  f.window = {0.01, 0.1};
  EXPECT_EQ(fit_csv({{"k", f}}),
            "name,slope,intercept,offset,r_squared,r_min,r_max,points\nk,-0.5,0,0,0,0.01,0.10000000000000001,9\n");
}
