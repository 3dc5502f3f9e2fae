#pragma once

#include <span>
#include <vector>

namespace wavekit {

/// Fourier differentiation and interpolation for samples on the periodic grid
/// q_i = -pi + 2 pi i / n, n even. The Nyquist mode is dropped from derivatives.
class PeriodicSpectral {
 public:
  explicit PeriodicSpectral(int n);

  int size() const { return n_; }
  /// Derivative at the nodes (circulant cot-kernel, O(n^2)).
  std::vector<double> derivative(std::span<const double> f) const;
  /// Trigonometric interpolant at arbitrary x; exact at the nodes.
  double interpolate(std::span<const double> f, double x) const;
  /// Interpolation weights at x (sum to 1), reusable across rows.
  std::vector<double> weights(double x) const;
  /// Node index if x coincides with a node (to 1e-13), else -1.
  int node_at(double x) const;

 private:
  int n_;
  std::vector<double> kernel_;  // kernel_[m] = d/dq weight for offset m
};

}  // namespace wavekit
