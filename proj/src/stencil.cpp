#include "wavekit/stencil.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <stdexcept>

namespace wavekit {

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order) {
  const int n = static_cast<int>(nodes.size());
  if (n == 0 || order < 0 || order >= n) throw std::invalid_argument("fd_weights: need order < number of nodes");
  // c[j][k]: weight of node j for the k-th derivative
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][order];
  return w;
}

namespace {

template <int N>
GaussRule expand_boost_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  GaussRule rule;
  // boost stores the non-negative half; the zero node (odd N) comes first
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] == 0.0) continue;
    rule.nodes.push_back(-a[k]);
    rule.weights.push_back(w[k]);
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    rule.nodes.push_back(a[k]);
    rule.weights.push_back(w[k]);
  }
  return rule;
}

}  // namespace

GaussRule gauss_legendre(int n) {
  switch (n) {
    case 1: return GaussRule{{0.0}, {2.0}};
    case 2: return expand_boost_rule<2>();
    case 3: return expand_boost_rule<3>();
    case 4: return expand_boost_rule<4>();
    case 5: return expand_boost_rule<5>();
    case 6: return expand_boost_rule<6>();
    case 7: return expand_boost_rule<7>();
    case 8: return expand_boost_rule<8>();
    default: throw std::invalid_argument("gauss_legendre: supported orders are 1..8");
  }
}

}  // namespace wavekit
