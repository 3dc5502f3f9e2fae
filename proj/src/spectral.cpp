#include "wavekit/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wavekit {

PeriodicSpectral::PeriodicSpectral(int n) : n_(n), kernel_(n, 0.0) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("spectral: n must be even");
  const double h = 2.0 * std::numbers::pi / n;
  for (int m = 1; m < n; ++m) kernel_[m] = 0.5 * (m % 2 == 0 ? 1.0 : -1.0) / std::tan(m * h / 2.0);
}

std::vector<double> PeriodicSpectral::derivative(std::span<const double> f) const {
  if (static_cast<int>(f.size()) != n_) throw std::invalid_argument("spectral: size mismatch");
  std::vector<double> out(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n_; ++j) {
      const int m = ((i - j) % n_ + n_) % n_;
      acc += kernel_[m] * f[j];
    }
    out[i] = acc;
  }
  return out;
}

int PeriodicSpectral::node_at(double x) const {
  const double h = 2.0 * std::numbers::pi / n_;
  const double s = (x + std::numbers::pi) / h;
  const double r = std::round(s);
  if (std::abs(s - r) * h > 1e-13) return -1;
  return ((static_cast<long>(r) % n_) + n_) % n_;
}

std::vector<double> PeriodicSpectral::weights(double x) const {
  std::vector<double> w(n_, 0.0);
  const int node = node_at(x);
  if (node >= 0) {
    w[node] = 1.0;
    return w;
  }
  const double h = 2.0 * std::numbers::pi / n_;
  for (int j = 0; j < n_; ++j) {
    const double t = x - (-std::numbers::pi + j * h);
    // even-n periodic cardinal function
    w[j] = std::sin(n_ * t / 2.0) / (n_ * std::tan(t / 2.0));
  }
  return w;
}

double PeriodicSpectral::interpolate(std::span<const double> f, double x) const {
  const auto w = weights(x);
  double acc = 0.0;
  for (int j = 0; j < n_; ++j) acc += w[j] * f[j];
  return acc;
}

}  // namespace wavekit
