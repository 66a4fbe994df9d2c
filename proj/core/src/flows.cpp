#include "degenflow/flows.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>
#include <algorithm>
#include <stdexcept>

namespace degenflow {
namespace {

// Components of the ring 0..n-1 whose edges (j, j+1) are alive.
std::vector<std::vector<std::size_t>> ring_components(const Grid1D& grid, const std::vector<bool>& alive) {
  const std::size_t n = grid.size();
  std::size_t start = n;
  for (std::size_t j = 0; j < n; ++j) {
    if (!alive[j]) {
      start = j;
      break;
    }
  }
  if (start == n) {
    std::vector<std::size_t> all(n);
    for (std::size_t j = 0; j < n; ++j) all[j] = j;
    return {all};
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  // Walk once around the ring beginning just after a dead edge.
  for (std::size_t step = 1; step <= n; ++step) {
    const std::size_t j = (start + step) % n;
    current.push_back(j);
    if (!alive[j]) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  return out;
}

std::vector<bool> alive_edges(const Weight& w) {
  std::vector<bool> alive(w.grid.size());
  for (std::size_t j = 0; j < alive.size(); ++j) alive[j] = w[j] > 0.0;
  return alive;
}

}  // namespace

const char* to_string(FlowKind kind) {
  switch (kind) {
    case FlowKind::T1: return "T1";
    case FlowKind::T2: return "T2";
    case FlowKind::T3: return "T3";
    case FlowKind::Strong: return "Strong";
  }
  return "?";
}

State make_h(const Grid1D& grid) {
  const double v = 1.0 / std::sqrt(2.0);
  State h(grid);
  const int m = grid.m();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const int i = grid.label(j);
    bool inside;
    if (grid.is_even()) {
      inside = 2 * i > -m && 2 * i <= m;
    } else {
      inside = std::abs(grid.node(j)) <= 0.5;
    }
    h[j] = inside ? v : -v;
  }
  return h;
}

SplitBlocks split_blocks(const Grid1D& grid) {
  if (!grid.is_even()) throw std::invalid_argument("split: Gamma nodes exist only on even grids");
  SplitBlocks b;
  const int m = grid.m();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const int i = grid.label(j);
    (2 * i > -m && 2 * i <= m ? b.inner : b.outer).push_back(j);
  }
  return b;
}

std::vector<std::vector<std::size_t>> weight_components(const Weight& w) {
  return ring_components(w.grid, alive_edges(w));
}

State block_averages(const State& u, const std::vector<std::vector<std::size_t>>& blocks) {
  State out(u.grid());
  for (const auto& block : blocks) {
    double s = 0.0;
    for (std::size_t j : block) s += u[j];
    s /= static_cast<double>(block.size());
    for (std::size_t j : block) out[j] = s;
  }
  return out;
}

State even_grid_limit(const State& u0) {
  const Grid1D& g = u0.grid();
  if (!g.is_even()) throw std::invalid_argument("even_grid_limit: odd grid");
  State big_h = make_h(g);
  big_h *= std::sqrt(2.0);  // H^m(1,-1)
  const double proj = 0.5 * g.spacing() * big_h.values().dot(u0.values());
  return State::constant(g, average(u0)) + proj * big_h;
}

FlowPropagator::FlowPropagator(FlowKind kind, const Weight& w)
    : kind_(kind), weight_(w), h_(make_h(w.grid)) {
  const bool strong = w.kind == WeightClass::Strong;
  if (kind == FlowKind::Strong && !strong) {
    throw std::invalid_argument("flow: Strong flow needs a strongly degenerate weight");
  }
  if (kind != FlowKind::Strong && strong) {
    throw std::invalid_argument(std::string("flow: ") + to_string(kind) +
                                " needs a weakly degenerate or edge-detector weight");
  }

  const Grid1D& g = w.grid;
  std::vector<bool> alive = alive_edges(w);
  std::vector<std::vector<std::size_t>> index_sets;
  if (kind == FlowKind::T3) {
    const SplitBlocks sb = split_blocks(g);  // throws on odd grids
    // Sever the two edges crossing Gamma: (m/2, m/2+1) and (-m/2, -m/2+1).
    alive[g.index(g.m() / 2)] = false;
    alive[g.index(-g.m() / 2)] = false;
    index_sets = {sb.inner, sb.outer};
  } else {
    std::vector<std::size_t> all(g.size());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    index_sets = {all};
  }
  limit_blocks_ = ring_components(g, alive);

  const double inv2 = 1.0 / (g.spacing() * g.spacing());
  for (auto& idx : index_sets) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    std::vector<long> local(g.size(), -1);
    for (std::size_t k = 0; k < idx.size(); ++k) local[idx[k]] = static_cast<long>(k);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const std::size_t q = g.wrap(static_cast<long>(j) + 1);
      if (!alive[j] || local[j] < 0 || local[q] < 0) continue;
      const double c = w[j] * inv2;
      const auto lp = local[j], lq = local[q];
      a(lp, lp) += c;
      a(lq, lq) += c;
      a(lp, lq) -= c;
      a(lq, lp) -= c;
    }
    if (kind == FlowKind::T2) {
      // Compress to the complement of h. On even grids h is already in the
      // kernel and this changes nothing; on odd grids it keeps <u, h> frozen.
      const Eigen::VectorXd e = h_.values() * std::sqrt(g.spacing());
      const Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n) - e * e.transpose();
      a = p * a * p;
      a = 0.5 * (a + a.transpose()).eval();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) throw std::runtime_error("flow: eigen-solver failed");
    Block b{std::move(idx), solver.eigenvalues(), solver.eigenvectors()};
    const double tol = kKernelRelTol * std::max(0.0, b.eigenvalues.maxCoeff());
    for (Eigen::Index k = 0; k < b.eigenvalues.size(); ++k) {
      if (b.eigenvalues[k] <= tol) b.eigenvalues[k] = 0.0;
    }
    blocks_.push_back(std::move(b));
  }
}

State FlowPropagator::evolve(const State& u0, double t) const {
  require_same_grid(u0.grid(), weight_.grid, "flow evolve");
  if (!(t >= 0.0)) throw std::invalid_argument("flow: t must be nonnegative");
  double c = 0.0;
  State v = u0;
  if (kind_ == FlowKind::T2) {
    c = inner(u0, h_);
    v -= c * h_;
  }
  State out(u0.grid());
  for (const Block& b : blocks_) {
    const auto n = static_cast<Eigen::Index>(b.index.size());
    Eigen::VectorXd local(n);
    for (Eigen::Index k = 0; k < n; ++k) local[k] = v[b.index[static_cast<std::size_t>(k)]];
    Eigen::VectorXd coef = b.eigenvectors.transpose() * local;
    coef.array() *= (-t * b.eigenvalues.array()).exp();
    local = b.eigenvectors * coef;
    for (Eigen::Index k = 0; k < n; ++k) out[b.index[static_cast<std::size_t>(k)]] = local[k];
  }
  if (kind_ == FlowKind::T2) out += c * h_;
  return out;
}

State FlowPropagator::steady_state(const State& u0) const {
  require_same_grid(u0.grid(), weight_.grid, "flow steady_state");
  if (kind_ == FlowKind::T2) {
    const double c = inner(u0, h_);
    return block_averages(u0 - c * h_, limit_blocks_) + c * h_;
  }
  return block_averages(u0, limit_blocks_);
}

double FlowPropagator::gap() const {
  double g = std::numeric_limits<double>::infinity();
  for (const Block& b : blocks_) {
    for (Eigen::Index k = 0; k < b.eigenvalues.size(); ++k) {
      if (b.eigenvalues[k] > 0.0) g = std::min(g, b.eigenvalues[k]);
    }
  }
  if (!std::isfinite(g)) throw std::domain_error("flow: no decaying mode");
  return g;
}

State evolve(FlowKind kind, const State& u0, const Weight& w, double t) {
  return FlowPropagator(kind, w).evolve(u0, t);
}

State steady_state(FlowKind kind, const State& u0, const Weight& w) {
  return FlowPropagator(kind, w).steady_state(u0);
}

namespace {

Eigen::LLT<Eigen::MatrixXd> resolvent_factor(const DiscreteOperator& op, double h_step) {
  if (!(h_step > 0.0)) throw std::invalid_argument("implicit Euler: step must be positive");
  const auto n = static_cast<Eigen::Index>(op.size());
  Eigen::LLT<Eigen::MatrixXd> llt(Eigen::MatrixXd::Identity(n, n) + h_step * op.matrix());
  if (llt.info() != Eigen::Success) throw std::runtime_error("implicit Euler: factorisation failed");
  return llt;
}

}  // namespace

State implicit_euler_step(const State& u, const DiscreteOperator& op, double h_step) {
  require_same_grid(u.grid(), op.grid(), "implicit_euler_step");
  return State(u.grid(), resolvent_factor(op, h_step).solve(u.values()));
}

State minimizing_movement(const State& u0, const DiscreteOperator& op, double h_step, double t_final) {
  require_same_grid(u0.grid(), op.grid(), "minimizing_movement");
  if (!(t_final >= 0.0)) throw std::invalid_argument("minimizing_movement: t_final must be nonnegative");
  const auto llt = resolvent_factor(op, h_step);
  // Guard against t/h landing a hair below an integer.
  const auto steps = static_cast<long>(std::floor(t_final / h_step * (1.0 + 1e-12)));
  Eigen::VectorXd v = u0.values();
  for (long k = 0; k < steps; ++k) v = llt.solve(v);
  return State(u0.grid(), std::move(v));
}

}  // namespace degenflow
