#include "wavekit/mollify.hpp"

#include "wavekit/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wavekit {

namespace {

std::vector<double> kernel(double eps, double h) {
  const int half = static_cast<int>(std::ceil(eps / h));
  std::vector<double> k(2 * half + 1);
  double sum = 0.0;
  for (int m = -half; m <= half; ++m) {
    k[m + half] = bump(m * h / eps);
    sum += k[m + half];
  }
  for (double& w : k) w /= sum;
  return k;
}

}  // namespace

double field_spacing(const Grid& grid, const FlowParameters& params) {
  return std::max(grid.dq(), params.d * grid.dp());
}

MollificationReport mollification_rate(const HeightSampler& field, const VorticityFunction& v,
                                       const FlowParameters& params, const TestFunction& phi,
                                       const std::vector<double>& eps_list, double min_spacing) {
  if (phi.domain() != TestFunction::Domain::Fluid) throw std::invalid_argument("mollify: fluid-domain bump required");
  if (eps_list.size() < 2) throw std::invalid_argument("mollify: need at least two eps values");
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    if (!(eps_list[k] >= 2.0 * min_spacing)) {
      std::ostringstream os;
      os << "mollify: eps = " << eps_list[k] << " below two grid spacings (" << 2.0 * min_spacing << ")";
      throw std::invalid_argument(os.str());
    }
    if (k > 0 && !(eps_list[k] < eps_list[k - 1])) throw std::invalid_argument("mollify: eps list must be decreasing");
  }
  const double eps_max = eps_list.front();
  const double h = eps_list.back() / 6.0;
  const double x0 = phi.center1();
  const double y0 = phi.center2();
  const double rx = phi.radius1();
  const double ry = phi.radius2();

  // patch = support of phi widened by eps_max, snapped to the spacing
  const int ix = static_cast<int>(std::ceil(rx / h));
  const int iy = static_cast<int>(std::ceil(ry / h));
  const int ex = static_cast<int>(std::ceil(eps_max / h)) + 1;
  const int nx = 2 * (ix + ex) + 1;
  const int ny = 2 * (iy + ex) + 1;
  const double xa = x0 - (ix + ex) * h;
  const double ya = y0 - (iy + ex) * h;
  if (!(ya > -params.d)) throw DomainError("mollify: patch reaches the bed; shrink the bump or eps");

  std::vector<double> F(static_cast<std::size_t>(nx) * ny), px(F.size()), py(F.size());
  auto at = [ny](int i, int j) { return static_cast<std::size_t>(i) * ny + j; };
  for (int i = 0; i < nx; ++i) {
    const double x = xa + i * h;
    const double eta = params.d * field.sample(x, 0.0).h;
    if (!(ya + (ny - 1) * h < eta)) throw DomainError("mollify: patch reaches the surface; shrink the bump or eps");
    for (int j = 0; j < ny; ++j) {
      const double y = ya + j * h;
      const double p = invert_sampler(field, params, x, y);
      const auto st = flow_state(field.sample(x, p), v, params);
      F[at(i, j)] = st.P + 0.5 * (st.psi_x * st.psi_x + st.psi_y * st.psi_y) + params.g * st.y;
      px[at(i, j)] = st.psi_x;
      py[at(i, j)] = st.psi_y;
    }
  }

  MollificationReport rep;
  rep.spacing = h;
  rep.eps = eps_list;
  // inner nodes: the support of phi
  const int i_lo = ex, i_hi = ex + 2 * ix;
  const int j_lo = ex, j_hi = ex + 2 * iy;
  for (double eps : eps_list) {
    const auto k = kernel(eps, h);
    const int half = static_cast<int>(k.size() / 2);
    // x-pass on rows needed by the y-pass, then y-pass on inner nodes
    auto smooth = [&](const std::vector<double>& f) {
      std::vector<double> tmp(f.size(), 0.0);
      for (int i = i_lo; i <= i_hi; ++i)
        for (int j = j_lo - half; j <= j_hi + half; ++j) {
          double acc = 0.0;
          for (int m = -half; m <= half; ++m) acc += k[m + half] * f[at(i + m, j)];
          tmp[at(i, j)] = acc;
        }
      std::vector<double> out(f.size(), 0.0);
      for (int i = i_lo; i <= i_hi; ++i)
        for (int j = j_lo; j <= j_hi; ++j) {
          double acc = 0.0;
          for (int m = -half; m <= half; ++m) acc += k[m + half] * tmp[at(i, j + m)];
          out[at(i, j)] = acc;
        }
      return out;
    };
    const auto Fe = smooth(F);
    const auto pxe = smooth(px);
    const auto pye = smooth(py);
    double T = 0.0;
    for (int i = i_lo; i <= i_hi; ++i)
      for (int j = j_lo; j <= j_hi; ++j) {
        const auto t = phi.eval(xa + i * h, ya + j * h);
        if (t.d1 == 0.0 && t.d2 == 0.0) continue;
        const auto n = at(i, j);
        T += ((F[n] * py[n] - Fe[n] * pye[n]) * t.d1 - (F[n] * px[n] - Fe[n] * pxe[n]) * t.d2) * h * h;
      }
    rep.commutator.push_back(std::abs(T));
  }
  bool positive = true;
  for (double c : rep.commutator) positive = positive && c > 0.0;
  if (positive) {
    rep.fitted_slope = loglog_slope(rep.eps, rep.commutator);
    rep.alpha_hat = std::min(rep.fitted_slope, 1.0);
    rep.threshold_met = 3.0 * rep.alpha_hat - 1.0 > 0.0;
  }
  return rep;
}

}  // namespace wavekit
