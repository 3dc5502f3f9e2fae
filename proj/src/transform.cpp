#include "wavekit/transform.hpp"

#include "wavekit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace wavekit {

FlowState flow_state(const FieldSample& s, const VorticityFunction& v, const FlowParameters& params) {
  const double d = params.d;
  const double one_hp = 1.0 + s.hp;
  FlowState st{};
  st.x = s.q;
  st.y = d * (s.h + s.p);
  st.psi = params.p0 * s.p;
  st.psi_x = -params.p0 * s.hq / one_hp;
  st.psi_y = params.p0 / (d * one_hp);
  st.u = params.c + st.psi_y;
  st.v = -st.psi_x;
  st.P = params.P_atm + params.Q / 2.0 - 0.5 * (st.psi_x * st.psi_x + st.psi_y * st.psi_y) - params.g * (st.y + d) +
         gamma_tilde(v, params, s.p);
  return st;
}

StreamGradient stream_gradient(double hq, double hp, const FlowParameters& params) {
  return {-params.p0 * hq / (hp + 1.0), params.p0 / (params.d * (hp + 1.0))};
}

std::pair<double, double> height_gradient(double psi_x, double psi_y, const FlowParameters& params) {
  return {-psi_x / (params.d * psi_y), params.p0 / (params.d * psi_y) - 1.0};
}

NodeDerivatives node_derivatives(const HeightField& hf, const Grid& grid) {
  const int nq = grid.nq();
  const int np = grid.np();
  NodeDerivatives out;
  out.nq = nq;
  out.np = np;
  out.hq.assign(hf.values().size(), 0.0);
  out.hp.assign(hf.values().size(), 0.0);
  const PeriodicSpectral spec(nq);
  std::vector<double> row(nq);
  for (int j = 0; j <= np; ++j) {
    for (int i = 0; i < nq; ++i) row[i] = hf(i, j);
    const auto dq = spec.derivative(row);
    for (int i = 0; i < nq; ++i) out.hq[static_cast<std::size_t>(i) * (np + 1) + j] = dq[i];
  }
  for (int j = 0; j <= np; ++j) {
    // surface row: the solver's own one-sided stencil, so P = P_atm carries over
    const auto st = j == np ? grid.surface_dp() : grid.node_dp(j);
    for (int i = 0; i < nq; ++i) {
      double acc = 0.0;
      for (auto [jj, w] : st) acc += w * hf(i, jj);
      out.hp[static_cast<std::size_t>(i) * (np + 1) + j] = acc;
    }
  }
  return out;
}

CurvilinearGrid physical_map(const HeightField& hf, const Grid& grid, const FlowParameters& params) {
  const int nq = grid.nq();
  const int np = grid.np();
  CurvilinearGrid out;
  out.y.resize(hf.values().size());
  for (int i = 0; i < nq; ++i) {
    out.x.push_back(grid.q(i));
    for (int j = 0; j <= np; ++j) {
      const double y = params.d * (hf(i, j) + grid.p(j));
      if (j > 0 && !(y > out.y[static_cast<std::size_t>(i) * (np + 1) + j - 1])) {
        std::ostringstream os;
        os << "physical map: y not increasing in p at q = " << grid.q(i) << ", p = " << grid.p(j);
        throw StagnationError(os.str());
      }
      out.y[static_cast<std::size_t>(i) * (np + 1) + j] = y;
    }
    out.eta.push_back(params.d * hf(i, np));
  }
  return out;
}

double invert_height(const HeightField& hf, const Grid& grid, const FlowParameters& params, double x, double y) {
  const int nq = grid.nq();
  const int np = grid.np();
  // wrap x into [-pi, pi)
  const double two_pi = 2.0 * std::numbers::pi;
  x = x - two_pi * std::floor((x + std::numbers::pi) / two_pi);

  std::vector<double> col(np + 1);
  const PeriodicSpectral spec(nq);
  const int node = spec.node_at(x);
  if (node >= 0) {
    for (int j = 0; j <= np; ++j) col[j] = hf(node, j);
  } else {
    const auto w = spec.weights(x);
    for (int j = 0; j <= np; ++j) {
      double acc = 0.0;
      for (int i = 0; i < nq; ++i) acc += w[i] * hf(i, j);
      col[j] = acc;
    }
  }
  std::vector<double> ys(np + 1);
  for (int j = 0; j <= np; ++j) {
    ys[j] = params.d * (col[j] + grid.p(j));
    if (j > 0 && !(ys[j] > ys[j - 1])) throw StagnationError("invert_height: map not monotone in p");
  }
  const double tol = 1e-13 * params.d;
  if (y < ys.front() - tol || y > ys.back() + tol) {
    std::ostringstream os;
    os << "invert_height: y = " << y << " outside [" << ys.front() << ", " << ys.back() << "] at x = " << x;
    throw DomainError(os.str());
  }
  if (y <= ys.front()) return -1.0;
  if (y >= ys.back()) return 0.0;
  const auto it = std::upper_bound(ys.begin(), ys.end(), y);
  const int j = static_cast<int>(it - ys.begin()) - 1;
  const double t = (y - ys[j]) / (ys[j + 1] - ys[j]);
  return grid.p(j) + t * grid.dp();
}

PhysicalFields reconstruct_stream(const HeightField& hf, const Grid& grid, const FlowParameters& params) {
  const auto map = physical_map(hf, grid, params);
  const auto der = node_derivatives(hf, grid);
  PhysicalFields f;
  f.nq = grid.nq();
  f.np = grid.np();
  f.Q = hf.Q;
  f.sigma = hf.sigma;
  f.x = map.x;
  f.eta = map.eta;
  f.y = map.y;
  f.h = hf.values();
  f.hq = der.hq;
  f.hp = der.hp;
  const std::size_t n = f.y.size();
  f.p.resize(n);
  f.psi.resize(n);
  f.psi_x.resize(n);
  f.psi_y.resize(n);
  for (int i = 0; i < f.nq; ++i) {
    for (int j = 0; j <= f.np; ++j) {
      const auto k = f.index(i, j);
      if (!(1.0 + f.hp[k] > 0.0)) throw StagnationError("reconstruct_stream: 1 + h_p <= 0 at a node");
      f.p[k] = grid.p(j);
      f.psi[k] = params.p0 * grid.p(j);
      const auto g = stream_gradient(f.hq[k], f.hp[k], params);
      f.psi_x[k] = g.psi_x;
      f.psi_y[k] = g.psi_y;
    }
  }
  return f;
}

void reconstruct_velocity(PhysicalFields& f, const FlowParameters& params) {
  f.u.resize(f.psi_y.size());
  f.v.resize(f.psi_x.size());
  for (std::size_t k = 0; k < f.u.size(); ++k) {
    f.u[k] = params.c + f.psi_y[k];
    f.v[k] = -f.psi_x[k];
  }
}

void reconstruct_pressure(PhysicalFields& f, const VorticityFunction& v, const FlowParameters& params) {
  FlowParameters pr = params;
  pr.Q = f.Q;
  f.P.resize(f.y.size());
  for (std::size_t k = 0; k < f.P.size(); ++k) {
    const double grad2 = f.psi_x[k] * f.psi_x[k] + f.psi_y[k] * f.psi_y[k];
    f.P[k] = pr.P_atm + pr.Q / 2.0 - 0.5 * grad2 - pr.g * (f.y[k] + pr.d) + gamma_tilde(v, pr, f.p[k]);
  }
}

PhysicalFields reconstruct(const HeightField& hf, const Grid& grid, const VorticityFunction& v,
                           const FlowParameters& params) {
  auto f = reconstruct_stream(hf, grid, params);
  reconstruct_velocity(f, params);
  reconstruct_pressure(f, v, params);
  return f;
}

BernoulliReport bernoulli_function(const PhysicalFields& f, const VorticityFunction& v,
                                   const FlowParameters& params) {
  BernoulliReport rep;
  rep.F.resize(f.P.size());
  for (std::size_t k = 0; k < f.P.size(); ++k)
    rep.F[k] = f.P[k] + 0.5 * (f.psi_x[k] * f.psi_x[k] + f.psi_y[k] * f.psi_y[k]) + params.g * f.y[k];
  double acc = 0.0;
  for (int i = 0; i < f.nq; ++i) acc += rep.F[f.index(i, f.np)] - gamma_tilde(v, params, 0.0);
  rep.F0 = acc / f.nq;
  for (int j = 0; j <= f.np; ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < f.nq; ++i) {
      const auto k = f.index(i, j);
      const double F = rep.F[k];
      rep.collapse_error = std::max(rep.collapse_error, std::abs(F - gamma_tilde(v, params, f.psi[k] / params.p0) - rep.F0));
      lo = std::min(lo, F);
      hi = std::max(hi, F);
    }
    rep.max_x_variation = std::max(rep.max_x_variation, hi - lo);
  }
  return rep;
}

TransformSummary summarize(const PhysicalFields& f, const VorticityFunction& v, const FlowParameters& params) {
  TransformSummary s;
  s.max_u_minus_c = -std::numeric_limits<double>::infinity();
  for (double u : f.u) s.max_u_minus_c = std::max(s.max_u_minus_c, u - params.c);
  for (int i = 0; i < f.nq; ++i)
    s.surface_pressure_dev = std::max(s.surface_pressure_dev, std::abs(f.P[f.index(i, f.np)] - params.P_atm));
  s.bernoulli_collapse_err = bernoulli_function(f, v, params).collapse_error;
  return s;
}

}  // namespace wavekit
