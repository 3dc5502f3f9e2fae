#include "wavekit/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace wavekit {

GridHeightSampler::GridHeightSampler(const HeightField& hf, const Grid& grid)
    : hf_(hf), grid_(grid), der_(node_derivatives(hf, grid)), spec_(grid.nq()) {
  if (hf.nq() != grid.nq() || hf.np() != grid.np()) throw std::invalid_argument("sampler: field does not match grid");
}

GridHeightSampler::Column GridHeightSampler::column(double x) const {
  const int nq = grid_.nq();
  const int np = grid_.np();
  Column c;
  c.h.assign(np + 1, 0.0);
  c.hq.assign(np + 1, 0.0);
  const int node = spec_.node_at(x);
  if (node >= 0) {
    for (int j = 0; j <= np; ++j) {
      c.h[j] = hf_(node, j);
      c.hq[j] = der_.hq[static_cast<std::size_t>(node) * (np + 1) + j];
    }
    return c;
  }
  const auto w = spec_.weights(x);
  for (int i = 0; i < nq; ++i) {
    const double wi = w[i];
    const std::size_t base = static_cast<std::size_t>(i) * (np + 1);
    for (int j = 0; j <= np; ++j) {
      c.h[j] += wi * hf_.values()[base + j];
      c.hq[j] += wi * der_.hq[base + j];
    }
  }
  return c;
}

FieldSample GridHeightSampler::sample_cell(double q, int cell, double t) const {
  const int np = grid_.np();
  if (cell < 0 || cell >= np) throw DomainError("sampler: cell index out of range");
  const int node = spec_.node_at(q);
  double h0, h1, g0, g1;
  if (node >= 0) {
    h0 = hf_(node, cell);
    h1 = hf_(node, cell + 1);
    g0 = der_.hq[static_cast<std::size_t>(node) * (np + 1) + cell];
    g1 = der_.hq[static_cast<std::size_t>(node) * (np + 1) + cell + 1];
  } else {
    const auto w = spec_.weights(q);
    h0 = h1 = g0 = g1 = 0.0;
    for (int i = 0; i < grid_.nq(); ++i) {
      const std::size_t base = static_cast<std::size_t>(i) * (np + 1) + cell;
      h0 += w[i] * hf_.values()[base];
      h1 += w[i] * hf_.values()[base + 1];
      g0 += w[i] * der_.hq[base];
      g1 += w[i] * der_.hq[base + 1];
    }
  }
  FieldSample s;
  s.q = q;
  s.p = grid_.p(cell) + t * grid_.dp();
  s.h = (1.0 - t) * h0 + t * h1;
  s.hq = (1.0 - t) * g0 + t * g1;
  s.hp = (h1 - h0) / grid_.dp();
  return s;
}

FieldSample GridHeightSampler::sample(double q, double p) const {
  if (!(p >= -1.0 && p <= 0.0)) throw DomainError("sampler: p outside [-1,0]");
  const int np = grid_.np();
  int cell = std::min(static_cast<int>(std::floor((p + 1.0) * np)), np - 1);
  cell = std::max(cell, 0);
  const double t = (p - grid_.p(cell)) / grid_.dp();
  auto s = sample_cell(q, cell, t);
  s.p = p;
  return s;
}

SyntheticHeight::SyntheticHeight(std::vector<std::vector<double>> coeffs) : a_(std::move(coeffs)) {
  if (!a_.empty() && !a_[0].empty() && a_[0][0] != 0.0)
    throw std::invalid_argument("synthetic height: a_00 must vanish (zero-mean surface)");
}

SyntheticHeight SyntheticHeight::random(std::uint64_t seed, int modes, int degree, double max_slope) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<std::vector<double>> a(modes + 1, std::vector<double>(degree, 0.0));
  double bound = 0.0;
  for (int k = 0; k <= modes; ++k) {
    for (int m = 0; m < degree; ++m) {
      if (k == 0 && m == 0) continue;
      a[k][m] = unif(rng) / (1.0 + k);
      // |d/dp [(1+p) p^m]| <= 1 + 2m on [-1,0]
      bound += std::abs(a[k][m]) * (1.0 + 2.0 * m);
    }
  }
  if (bound > 0.0)
    for (auto& row : a)
      for (double& c : row) c *= max_slope / bound;
  return SyntheticHeight(std::move(a));
}

FieldSample SyntheticHeight::sample(double q, double p) const {
  FieldSample s{q, p, 0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < a_.size(); ++k) {
    double poly = 0.0;
    double dpoly = 0.0;
    for (std::size_t m = a_[k].size(); m-- > 0;) {
      dpoly = dpoly * p + poly;
      poly = poly * p + a_[k][m];
    }
    const double ck = std::cos(static_cast<double>(k) * q);
    const double sk = std::sin(static_cast<double>(k) * q);
    s.h += ck * (1.0 + p) * poly;
    s.hq += -static_cast<double>(k) * sk * (1.0 + p) * poly;
    s.hp += ck * (poly + (1.0 + p) * dpoly);
  }
  return s;
}

HeightField SyntheticHeight::to_grid(const Grid& grid, double Q) const {
  HeightField hf(grid.nq(), grid.np(), Q);
  for (int i = 0; i < grid.nq(); ++i)
    for (int j = 0; j <= grid.np(); ++j) hf(i, j) = j == 0 ? 0.0 : sample(grid.q(i), grid.p(j)).h;
  return hf;
}

double invert_sampler(const HeightSampler& s, const FlowParameters& params, double x, double y, double p_lo,
                      double p_hi) {
  const double d = params.d;
  auto Y = [&](double p) { return d * (s.sample(x, p).h + p); };
  double a = p_lo;
  double b = p_hi;
  double ya = Y(a) - y;
  double yb = Y(b) - y;
  const double tol = 1e-14 * d;
  if (std::abs(ya) <= tol) return a;
  if (std::abs(yb) <= tol) return b;
  if (ya > 0.0 || yb < 0.0) {
    std::ostringstream os;
    os << "invert: y = " << y << " outside the image of [" << p_lo << ", " << p_hi << "] at x = " << x;
    throw DomainError(os.str());
  }
  double p = a + (b - a) * (-ya) / (yb - ya);
  for (int it = 0; it < 100; ++it) {
    const auto sm = s.sample(x, p);
    const double r = d * (sm.h + p) - y;
    if (std::abs(r) <= tol) return p;
    if (r < 0.0)
      a = p;
    else
      b = p;
    double next = p - r / (d * (1.0 + sm.hp));
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (b - a <= 1e-16) return 0.5 * (a + b);
    p = next;
  }
  return p;
}

}  // namespace wavekit
