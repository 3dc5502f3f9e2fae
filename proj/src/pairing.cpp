#include "wavekit/pairing.hpp"

#include "wavekit/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wavekit {

namespace {

// Breakpoints of [lo, hi] at the vorticity jumps strictly inside.
std::vector<double> p_breaks(const VorticityFunction& v, double lo, double hi) {
  std::vector<double> pts{lo};
  for (double j : v.jump_points())
    if (j > lo && j < hi) pts.push_back(j);
  pts.push_back(hi);
  return pts;
}

// Composite Gauss nodes on [a, b] with n equal panels.
void composite(double a, double b, int n, const GaussRule& g, std::vector<double>& x, std::vector<double>& w) {
  const double h = (b - a) / n;
  for (int k = 0; k < n; ++k) {
    const double mid = a + (k + 0.5) * h;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      x.push_back(mid + 0.5 * h * g.nodes[i]);
      w.push_back(0.5 * h * g.weights[i]);
    }
  }
}

// Panels for a sub-range proportional to its share of the full range.
int share(int panels, double part, double whole) {
  return std::max(1, static_cast<int>(std::lround(panels * part / whole)));
}

double pressure_of(const FlowState& st, const FieldDefect& defect) {
  return st.P + defect.pressure_x * st.x + defect.pressure_y * st.y;
}

}  // namespace

PairingRule grid_rule(const GridHeightSampler& field, const TestFunction& tf, const FlowParameters& params,
                      int subdivide) {
  if (tf.domain() != TestFunction::Domain::Rectangle) throw std::invalid_argument("grid rule: rectangle bump required");
  if (subdivide < 1) throw std::invalid_argument("grid rule: subdivide must be >= 1");
  const Grid& grid = field.grid();
  const double lo = tf.center2() - tf.radius2();
  const double hi = tf.center2() + tf.radius2();
  PairingRule rule;
  for (int i = 0; i < grid.nq(); ++i) {
    const double q = grid.q(i);
    if (!(std::abs(tf.offset1(q)) < tf.radius1())) continue;
    for (int m = 0; m < grid.np(); ++m) {
      if (grid.p(m + 1) <= lo || grid.p(m) >= hi) continue;
      for (int k = 0; k < subdivide; ++k) {
        const double t = (k + 0.5) / subdivide;
        const auto s = field.sample_cell(q, m, t);
        const double w = grid.dq() * grid.dp() / subdivide;
        rule.push_back({s, w, w * params.d * (1.0 + s.hp)});
      }
    }
  }
  return rule;
}

PairingRule qp_rule(const HeightSampler& field, const TestFunction& tf, const VorticityFunction& v,
                    const FlowParameters& params, int panels, int order) {
  if (tf.domain() != TestFunction::Domain::Rectangle) throw std::invalid_argument("qp rule: rectangle bump required");
  const auto g = gauss_legendre(order);
  std::vector<double> qx, qw;
  const auto [qa, qb] = tf.support1();
  composite(qa, qb, panels, g, qx, qw);
  std::vector<double> px, pw;
  const auto [pa, pb] = tf.support2();
  const auto br = p_breaks(v, pa, pb);
  for (std::size_t k = 0; k + 1 < br.size(); ++k)
    composite(br[k], br[k + 1], share(panels, br[k + 1] - br[k], pb - pa), g, px, pw);
  PairingRule rule;
  rule.reserve(qx.size() * px.size());
  for (std::size_t i = 0; i < qx.size(); ++i) {
    for (std::size_t j = 0; j < px.size(); ++j) {
      const auto s = field.sample(qx[i], px[j]);
      const double w = qw[i] * pw[j];
      rule.push_back({s, w, w * params.d * (1.0 + s.hp)});
    }
  }
  return rule;
}

PairingRule xy_rule(const HeightSampler& field, const TestFunction& tf, const VorticityFunction& v,
                    const FlowParameters& params, int panels, int order) {
  if (tf.domain() != TestFunction::Domain::Rectangle) throw std::invalid_argument("xy rule: rectangle bump required");
  const double d = params.d;
  const auto g = gauss_legendre(order);
  std::vector<double> xs, xw;
  const auto [xa, xb] = tf.support1();
  composite(xa, xb, panels, g, xs, xw);
  const auto [pa, pb] = tf.support2();
  const auto br = p_breaks(v, pa, pb);
  PairingRule rule;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    for (std::size_t k = 0; k + 1 < br.size(); ++k) {
      const double ya = d * (field.sample(x, br[k]).h + br[k]);
      const double yb = d * (field.sample(x, br[k + 1]).h + br[k + 1]);
      std::vector<double> ys, yw;
      composite(ya, yb, share(panels, br[k + 1] - br[k], pb - pa), g, ys, yw);
      for (std::size_t j = 0; j < ys.size(); ++j) {
        const double p = invert_sampler(field, params, x, ys[j], br[k], br[k + 1]);
        const auto s = field.sample(x, p);
        const double w = xw[i] * yw[j];
        rule.push_back({s, w / (d * (1.0 + s.hp)), w});
      }
    }
  }
  return rule;
}

double pair_height(const PairingRule& rule, const TestFunction& tf, const VorticityFunction& v,
                   const FlowParameters& params) {
  const double d2 = params.d * params.d;
  double acc = 0.0;
  for (const auto& pt : rule) {
    const auto& s = pt.s;
    const auto phi = tf.eval(s.q, s.p);
    if (phi.d1 == 0.0 && phi.d2 == 0.0) continue;
    const double one_hp = 1.0 + s.hp;
    const double A = -(1.0 + d2 * s.hq * s.hq) / (2.0 * d2 * one_hp * one_hp) + gamma_cap(v, params, s.p) / (2.0 * d2);
    const double B = s.hq / one_hp;
    acc += pt.w_qp * (A * phi.d2 + B * phi.d1);
  }
  return acc;
}

double pair_stream(const PairingRule& rule, const TestFunction& tf, const VorticityFunction& v,
                   const FlowParameters& params) {
  double acc = 0.0;
  for (const auto& pt : rule) {
    const auto phi = tf.pushforward(pt.s, params);
    if (phi.phi_x == 0.0 && phi.phi_y == 0.0) continue;
    const auto g = stream_gradient(pt.s.hq, pt.s.hp, params);
    const double gt = gamma_tilde(v, params, pt.s.p);
    acc += pt.w_xy * (gt * phi.phi_y - g.psi_x * g.psi_y * phi.phi_x +
                      0.5 * (g.psi_x * g.psi_x - g.psi_y * g.psi_y) * phi.phi_y);
  }
  return acc;
}

EulerPairing pair_euler(const PairingRule& rule, const TestFunction& tf, const VorticityFunction& v,
                        const FlowParameters& params, const FieldDefect& defect) {
  const double c = params.c;
  EulerPairing out;
  for (const auto& pt : rule) {
    const auto phi = tf.pushforward(pt.s, params);
    if (phi.phi == 0.0 && phi.phi_x == 0.0 && phi.phi_y == 0.0) continue;
    const auto st = flow_state(pt.s, v, params);
    const double P = pressure_of(st, defect);
    const double u = st.u;
    const double vv = st.v + defect.kinematic * (st.y + params.d) * std::cos(st.x);
    out.R1 += pt.w_xy * ((u * u - c * u + P) * phi.phi_x + u * vv * phi.phi_y);
    out.R2 += pt.w_xy * ((u * vv - c * vv) * phi.phi_x + (vv * vv + P) * phi.phi_y - params.g * phi.phi);
    out.R3 += pt.w_xy * (u * phi.phi_x + vv * phi.phi_y);
  }
  return out;
}

double gradient_norm_qp(const PairingRule& rule, const TestFunction& tf) {
  double acc = 0.0;
  for (const auto& pt : rule) {
    const auto phi = tf.eval(pt.s.q, pt.s.p);
    acc += pt.w_qp * std::hypot(phi.d1, phi.d2);
  }
  return acc;
}

double gradient_norm_xy(const PairingRule& rule, const TestFunction& tf, const FlowParameters& params) {
  double acc = 0.0;
  for (const auto& pt : rule) {
    const auto phi = tf.pushforward(pt.s, params);
    acc += pt.w_xy * std::hypot(phi.phi_x, phi.phi_y);
  }
  return acc;
}

CrossIdentity cross_identity(const PairingRule& height_rule, const PairingRule& stream_rule, const TestFunction& tf,
                             const VorticityFunction& v, const FlowParameters& params) {
  CrossIdentity out;
  out.lhs = params.p0 * params.p0 * pair_height(height_rule, tf, v, params);
  out.rhs = pair_stream(stream_rule, tf, v, params);
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

SurfaceIdentityReport surface_identity(const std::vector<FieldSample>& surface, const FlowParameters& params,
                                       double sigma) {
  const double d = params.d;
  const double p02 = params.p0 * params.p0;
  SurfaceIdentityReport rep;
  for (const auto& s : surface) {
    const double one_hp = 1.0 + s.hp;
    const double lhs = (1.0 / (d * d) + s.hq * s.hq) * p02 / (one_hp * one_hp) + 2.0 * params.g * d * (1.0 + s.h + s.p);
    const auto g = stream_gradient(s.hq, s.hp, params);
    const double y = d * (s.h + s.p);
    const double mid = g.psi_x * g.psi_x + g.psi_y * g.psi_y + 2.0 * params.g * (y + d);
    rep.lhs.push_back(lhs);
    rep.mid.push_back(mid);
    const double scale = std::max(std::abs(lhs), std::abs(mid));
    if (scale > 0.0) rep.max_gap_rel = std::max(rep.max_gap_rel, std::abs(lhs - mid) / scale);
    rep.max_condition_residual =
        std::max(rep.max_condition_residual, std::abs(lhs - params.Q + 2.0 * sigma * std::cos(s.q)));
  }
  return rep;
}

std::vector<FieldSample> solver_surface_samples(const HeightOperator& op, const HeightField& hf) {
  const auto sd = op.surface_derivatives(hf);
  std::vector<FieldSample> out;
  for (int i = 0; i < op.grid().nq(); ++i) out.push_back({op.grid().q(i), 0.0, sd.h[i], sd.hq[i], sd.hp[i]});
  return out;
}

HeightField restrict_field(const HeightField& hf, int factor) {
  if (factor < 1 || hf.nq() % factor != 0 || hf.np() % factor != 0)
    throw std::invalid_argument("restrict: factor must divide Nq and Np");
  HeightField out(hf.nq() / factor, hf.np() / factor, hf.Q);
  out.sigma = hf.sigma;
  for (int i = 0; i < out.nq(); ++i)
    for (int j = 0; j <= out.np(); ++j) out(i, j) = hf(i * factor, j * factor);
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 matching points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<PairingReport> verify_grid_field(const HeightField& hf, const Grid& grid, const VorticityFunction& v,
                                             const FlowParameters& params_in, const std::vector<TestFunction>& family,
                                             int levels, const FieldDefect& defect) {
  if (family.empty()) throw std::invalid_argument("verify: test-function family is empty");
  if (levels < 1) throw std::invalid_argument("verify: levels must be >= 1");
  FlowParameters params = params_in;
  params.Q = hf.Q;

  // finest first, then coarser restrictions as long as they are valid grids
  std::vector<std::pair<HeightField, Grid>> fields{{hf, grid}};
  for (int k = 1; k < levels; ++k) {
    const int f = 1 << k;
    if (grid.nq() % f != 0 || grid.np() % f != 0 || grid.nq() / f < 8) break;
    try {
      Grid g(grid.nq() / f, grid.np() / f, v);
      fields.emplace_back(restrict_field(hf, f), g);
    } catch (const std::invalid_argument&) {
      break;
    }
  }
  std::reverse(fields.begin(), fields.end());

  const char* names[] = {"height", "stream", "euler_R1", "euler_R2", "euler_R3", "cross_identity"};
  std::vector<PairingReport> reports(6);
  for (int r = 0; r < 6; ++r) reports[r].formulation = names[r];

  for (const auto& [f, g] : fields) {
    const GridHeightSampler sampler(f, g);
    double mx[6] = {0, 0, 0, 0, 0, 0};
    const bool finest = &f == &fields.back().first;
    for (const auto& tf : family) {
      const auto rule = grid_rule(sampler, tf, params);
      const double nh = gradient_norm_qp(rule, tf);
      const double nx = gradient_norm_xy(rule, tf, params);
      const double ih = pair_height(rule, tf, v, params);
      const double is = pair_stream(rule, tf, v, params);
      const auto eu = pair_euler(rule, tf, v, params, defect);
      const double cross = std::abs(params.p0 * params.p0 * ih - is);
      const double vals[6] = {ih, is, eu.R1, eu.R2, eu.R3, cross};
      const double norms[6] = {nh, nx, nx, nx, nx, std::max(1.0, std::abs(is))};
      for (int r = 0; r < 6; ++r) {
        mx[r] = std::max(mx[r], std::abs(vals[r]) / norms[r]);
        if (finest)
          reports[r].per_testfn.push_back(
              {tf.center1(), tf.center2(), tf.radius1(), tf.radius2(), vals[r], norms[r]});
      }
    }
    for (int r = 0; r < 6; ++r) reports[r].refinement.push_back({g.np(), mx[r]});
  }
  for (auto& rep : reports) {
    for (std::size_t k = 1; k < rep.refinement.size(); ++k) {
      const double a = rep.refinement[k - 1].max_abs;
      const double b = rep.refinement[k].max_abs;
      rep.fitted_rates.push_back(a > 0.0 && b > 0.0 ? std::log2(a / b) : 0.0);
    }
  }
  return reports;
}

}  // namespace wavekit
