#pragma once

#include <string>
#include <utility>
#include <vector>

#include "degenflow/gamma_viscosity.hpp"
#include "degenflow/spectral.hpp"

namespace degenflow {

// Shortest-roundtrip-safe text for a double: printf "%.17g".
std::string format_real(double x);

// CSV tables, header line first, '\n' line endings.
std::string state_csv(const State& u);                          // node,x,value
std::string spectrum_csv(const SpectralDecomposition& dec);     // k,mu
std::string trajectory_csv(const std::vector<std::pair<double, State>>& snapshots);  // t,node,value
std::string gamma_csv(const GammaReport& report);               // scale,weighted,viscosity,total
std::string viscosity_csv(const std::vector<ViscosityRow>& rows);  // delta,error
std::string fit_csv(const std::vector<std::pair<std::string, ExponentFit>>& fits);  // name,slope,intercept,offset,r_squared,r_min,r_max,points

}  // namespace degenflow
