#pragma once

#include <span>
#include <vector>

namespace wavekit {

/// Finite-difference weights for the `order`-th derivative at x0 from values at
/// `nodes` (Fornberg's recursion). Exact for polynomials of degree < nodes.size().
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

/// Gauss-Legendre rule on [-1,1] with n points (1 <= n <= 8).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

}  // namespace wavekit
