#pragma once

#include <vector>

#include "degenflow/disc_ops.hpp"
#include "degenflow/spectral.hpp"

namespace degenflow {

enum class FlowKind {
  T1,      // regularising semigroup exp(-tA)
  T2,      // singular: the h-component is frozen, the rest evolves under T1
           // compressed to the complement of h
  T3,      // split: Omega_i and Omega_o evolve independently
  Strong,  // T1 with a strongly degenerate weight
};

const char* to_string(FlowKind kind);

// Normalised jump mode h = (chi_{Omega_i} - chi_{Omega_o}) / sqrt(2).
// Even m: +1/sqrt(2) on labels -m/2 < i <= m/2 so the jumps sit at the
// zero-weight nodes. Odd m: pointwise samples of h.
State make_h(const Grid1D& grid);

// Index sets of Omega_i = {-m/2 < i <= m/2} and its complement. Even m only.
struct SplitBlocks {
  std::vector<std::size_t> inner;
  std::vector<std::size_t> outer;
};
SplitBlocks split_blocks(const Grid1D& grid);

// Connected components of the graph whose edges (j, j+1) carry alpha_j > 0.
// The kernel of the assembled operator is the set of states constant on
// each component.
std::vector<std::vector<std::size_t>> weight_components(const Weight& w);

// Replaces u by its averages over the given index sets.
State block_averages(const State& u, const std::vector<std::vector<std::size_t>>& blocks);

// avg(u0) 1 + (d_m/2) (H . u0) H with H = H^m(1,-1): the long-time limit of
// the even-grid scheme.
State even_grid_limit(const State& u0);

// Precomputed propagator for one flow and weight. Throws std::invalid_argument
// for incompatible kind/weight (Strong needs a Strong weight, the others a
// non-Strong one) and for T3 on an odd grid.
class FlowPropagator {
 public:
  FlowPropagator(FlowKind kind, const Weight& w);

  FlowKind kind() const { return kind_; }
  const Weight& weight() const { return weight_; }
  State evolve(const State& u0, double t) const;
  // Closed-form t -> infinity limit.
  State steady_state(const State& u0) const;
  // Smallest nonzero decay rate of the evolving part.
  double gap() const;

 private:
  struct Block {
    std::vector<std::size_t> index;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;  // Euclidean-orthonormal within the block
  };

  FlowKind kind_;
  Weight weight_;
  State h_;
  std::vector<Block> blocks_;  // one block (full grid) unless T3
  std::vector<std::vector<std::size_t>> limit_blocks_;
};

State evolve(FlowKind kind, const State& u0, const Weight& w, double t);
State steady_state(FlowKind kind, const State& u0, const Weight& w);

// Solves (I + h A) v = u: the minimiser of E(v) + |v - u|^2 / (2h).
State implicit_euler_step(const State& u, const DiscreteOperator& op, double h_step);

// floor(t_final / h_step) implicit Euler steps from u0.
State minimizing_movement(const State& u0, const DiscreteOperator& op, double h_step, double t_final);

}  // namespace degenflow
