#pragma once

#include <cstdint>
#include <random>

#include "degenflow/state.hpp"

namespace degenflow::proptest {

// Seeded generator for property tests. Every draw goes through the raw
// 64-bit engine so sequences are identical across standard libraries.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  State state(const Grid1D& g, double amplitude = 1.0) {
    State u(g);
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = uniform(-amplitude, amplitude);
    return u;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace degenflow::proptest
