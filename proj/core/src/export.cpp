#include "degenflow/export.hpp"

#include <cstdio>

namespace degenflow {

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string state_csv(const State& u) {
  std::string out = "node,x,value\n";
  const Grid1D& g = u.grid();
  for (std::size_t j = 0; j < g.size(); ++j) {
    out += std::to_string(g.label(j)) + ',' + format_real(g.node(j)) + ',' + format_real(u[j]) + '\n';
  }
  return out;
}

std::string spectrum_csv(const SpectralDecomposition& dec) {
  std::string out = "k,mu\n";
  for (Eigen::Index k = 0; k < dec.eigenvalues.size(); ++k) {
    out += std::to_string(k) + ',' + format_real(dec.eigenvalues[k]) + '\n';
  }
  return out;
}

std::string trajectory_csv(const std::vector<std::pair<double, State>>& snapshots) {
  std::string out = "t,node,value\n";
  for (const auto& [t, u] : snapshots) {
    const std::string ts = format_real(t);
    for (std::size_t j = 0; j < u.size(); ++j) {
      out += ts + ',' + std::to_string(u.grid().label(j)) + ',' + format_real(u[j]) + '\n';
    }
  }
  return out;
}

std::string gamma_csv(const GammaReport& report) {
  std::string out = "scale,weighted,viscosity,total\n";
  for (const ScaleEntry& e : report.entries) {
    out += std::to_string(e.scale) + ',' + format_real(e.weighted_energy) + ',' + format_real(e.viscosity_term) +
           ',' + format_real(e.total_energy) + '\n';
  }
  return out;
}

std::string viscosity_csv(const std::vector<ViscosityRow>& rows) {
  std::string out = "delta,error\n";
  for (const ViscosityRow& r : rows) out += format_real(r.delta) + ',' + format_real(r.error) + '\n';
  return out;
}

std::string fit_csv(const std::vector<std::pair<std::string, ExponentFit>>& fits) {
  std::string out = "name,slope,intercept,offset,r_squared,r_min,r_max,points\n";
  for (const auto& [name, f] : fits) {
    out += name + ',' + format_real(f.slope) + ',' + format_real(f.intercept) + ',' + format_real(f.offset) + ',' +
           format_real(f.r_squared) + ',' + format_real(f.window.r_min) + ',' + format_real(f.window.r_max) + ',' +
           std::to_string(f.points) + '\n';
  }
  return out;
}

}  // namespace degenflow
