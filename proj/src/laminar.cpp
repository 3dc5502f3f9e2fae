#include "wavekit/laminar.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

namespace wavekit {

namespace {

// Breakpoints of [a,b] (a < b) including vorticity jump points inside.
std::vector<double> panels(const VorticityFunction& v, double a, double b) {
  std::vector<double> pts{a};
  for (double j : v.jump_points())
    if (j > a && j < b) pts.push_back(j);
  pts.push_back(b);
  return pts;
}

// GK's error estimate is pessimistic and floors well above eps, so asking for
// eps-level tolerance just recurses to full depth. 1e-10 is reached in one or
// two levels on a smooth panel while the 31-point result is accurate to
// round-off. Depth is bounded for lambda near its lower limit.
template <class F>
double integrate_panels(const VorticityFunction& v, double a, double b, F&& f, unsigned depth = 15) {
  using boost::math::quadrature::gauss_kronrod;
  if (a == b) return 0.0;
  const double sign = a < b ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const auto pts = panels(v, lo, hi);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    total += gauss_kronrod<double, 31>::integrate(f, pts[k], pts[k + 1], depth, 1e-10);
  }
  return sign * total;
}

}  // namespace

double lambda_lower_limit(const VorticityFunction& v, const FlowParameters& params) {
  // Gamma = (2 d^2 / p0) * I with p0 < 0, so min Gamma comes from max I
  const double imax = v.integral_bounds().second;
  return -(2.0 * params.d * params.d / params.p0) * imax;
}

namespace {

double normalization(const VorticityFunction& v, const FlowParameters& params, double lambda, unsigned depth) {
  const double lmin = lambda_lower_limit(v, params);
  if (!(lambda > lmin)) {
    std::ostringstream os;
    os << "laminar: lambda = " << lambda << " not above admissibility limit " << lmin;
    throw DomainError(os.str());
  }
  auto f = [&](double p) {
    const double s = lambda + gamma_cap(v, params, p);
    return s > 0.0 ? 1.0 / std::sqrt(s) : 0.0;
  };
  return integrate_panels(v, -1.0, 0.0, f, depth);
}

}  // namespace

double normalization_integral(const VorticityFunction& v, const FlowParameters& params, double lambda) {
  return normalization(v, params, lambda, 15);
}

double solve_lambda(const VorticityFunction& v, const FlowParameters& params) {
  params.validate();
  const double lmin = lambda_lower_limit(v, params);
  const double scale = std::max(1.0, std::abs(lmin));

  // Normalization is strictly decreasing in lambda, unbounded as lambda -> +inf
  // towards 0. Find hi with N(hi) < 1.
  double hi = lmin + scale;
  while (normalization_integral(v, params, hi) >= 1.0) hi = lmin + 2.0 * (hi - lmin);

  double lo_gap = 1e-14 * scale;
  // only the sign of N - 1 matters here, a shallow rule is enough
  const double n_lo = normalization(v, params, lmin + lo_gap, 8);
  if (!(n_lo > 1.0)) {
    std::ostringstream os;
    os << "laminar: no lambda normalizes the profile; attainable normalization range is (0, " << n_lo << "]";
    throw NoBracketError(os.str(), lmin, n_lo);
  }
  double lo = lmin + lo_gap;
  for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (normalization_integral(v, params, mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  // secant polish between the final bracket ends
  const double flo = normalization_integral(v, params, lo) - 1.0;
  const double fhi = normalization_integral(v, params, hi) - 1.0;
  double lam = 0.5 * (lo + hi);
  if (flo != fhi) {
    const double s = lo - flo * (hi - lo) / (fhi - flo);
    if (s >= lo && s <= hi) lam = s;
  }
  return lam;
}

std::vector<double> laminar_height(double lambda, const VorticityFunction& v, const FlowParameters& params,
                                   std::span<const double> p_grid) {
  const double lmin = lambda_lower_limit(v, params);
  if (!(lambda > lmin)) throw DomainError("laminar: lambda below admissibility limit");
  auto f = [&](double p) { return 1.0 / std::sqrt(lambda + gamma_cap(v, params, p)) - 1.0; };
  std::vector<double> h(p_grid.size());
  double prev_p = -1.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < p_grid.size(); ++k) {
    const double p = p_grid[k];
    if (!(p >= -1.0 && p <= 0.0)) throw DomainError("laminar: grid point outside [-1,0]");
    acc += integrate_panels(v, prev_p, p, f);
    prev_p = p;
    h[k] = acc;
  }
  return h;
}

double laminar_Q(double lambda, const FlowParameters& params) {
  return 2.0 * params.g * params.d + params.p0 * params.p0 * lambda / (params.d * params.d);
}

LaminarFlow solve_laminar(const VorticityFunction& v, const FlowParameters& params, std::span<const double> p_grid) {
  LaminarFlow out;
  out.lambda = solve_lambda(v, params);
  out.Q = laminar_Q(out.lambda, params);
  out.p.assign(p_grid.begin(), p_grid.end());
  out.h = laminar_height(out.lambda, v, params, p_grid);
  out.hp.resize(p_grid.size());
  for (std::size_t k = 0; k < p_grid.size(); ++k) {
    out.hp[k] = 1.0 / std::sqrt(out.lambda + gamma_cap(v, params, p_grid[k])) - 1.0;
  }
  return out;
}

}  // namespace wavekit
