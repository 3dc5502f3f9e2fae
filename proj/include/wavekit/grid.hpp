#pragma once

#include "wavekit/vorticity.hpp"

#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace wavekit {

/// Weight attached to the p-node j of a fixed column.
struct NodeWeight {
  int j;
  double w;
};
using PStencil = std::vector<NodeWeight>;

/// Uniform tensor grid on [-pi,pi) x [-1,0]. q_i = -pi + i dq (periodic,
/// contains q = 0 at i = Nq/2), p_j = -1 + j/Np. Every vorticity breakpoint
/// must coincide with a p-node; those nodes split the column into layers and
/// no p-stencil built here reaches across a layer boundary.
class Grid {
 public:
  Grid(int nq, int np, std::span<const double> jump_points);
  Grid(int nq, int np, const VorticityFunction& v) : Grid(nq, np, v.jump_points()) {}

  int nq() const { return nq_; }
  int np() const { return np_; }
  double dq() const { return 2.0 * std::numbers::pi / nq_; }
  double dp() const { return 1.0 / np_; }
  double q(int i) const { return -std::numbers::pi + i * dq(); }
  double p(int j) const { return -1.0 + static_cast<double>(j) / np_; }
  double p_half(int m) const { return -1.0 + (m + 0.5) / np_; }

  int wrap(int i) const { return ((i % nq_) + nq_) % nq_; }
  /// Index of the even-symmetry representative, k in [0, Nq/2], q = k dq.
  int fold(int i) const;
  /// Full column index of representative k.
  int column_of(int k) const { return wrap(nq_ / 2 + k); }
  int half_columns() const { return nq_ / 2 + 1; }

  const std::vector<int>& jump_nodes() const { return jump_nodes_; }
  bool is_jump_node(int j) const;
  /// Node range [first, last] of the layer containing cell [p_m, p_{m+1}].
  std::pair<int, int> layer_of_cell(int m) const;

  /// h_p at p_{m+1/2}: up to `points` consecutive nodes of the cell's layer.
  PStencil half_node_dp(int m, int points = 4) const;
  /// Second-order h_p at node j: central inside a layer, mean of the two
  /// one-sided 3-point formulas at a jump node, one-sided at bed/surface.
  PStencil node_dp(int j) const;
  /// One-sided h_p at the surface node from the top layer.
  PStencil surface_dp(int points = 5) const;

 private:
  PStencil one_sided(int j, int first, int last, int points) const;

  int nq_;
  int np_;
  std::vector<int> jump_nodes_;
  std::vector<int> bounds_;  // 0, jump nodes..., np
};

}  // namespace wavekit
