#include "wavekit/vorticity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace wavekit {

void FlowParameters::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(d) || d <= 0.0) throw std::invalid_argument("physics.d must be > 0");
  if (!finite(g) || g <= 0.0) throw std::invalid_argument("physics.g must be > 0");
  if (!finite(c) || c <= 0.0) throw std::invalid_argument("physics.c must be > 0");
  if (!finite(p0) || p0 >= 0.0) throw std::invalid_argument("physics.p0 must be < 0");
  if (!finite(P_atm)) throw std::invalid_argument("physics.P_atm must be finite");
  if (!finite(Q)) throw std::invalid_argument("Q must be finite");
}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double p) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * p + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> out(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(out));
}

std::vector<double> Polynomial::real_roots_in(double lo, double hi) const {
  std::vector<double> roots;
  const int n = degree();
  if (n <= 0) return roots;
  if (n == 1) {
    roots.push_back(-coeffs_[0] / coeffs_[1]);
  } else {
    // companion matrix of the monic polynomial
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -coeffs_[i] / coeffs_[n];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < n; ++i) {
      const auto z = es.eigenvalues()[i];
      if (std::abs(z.imag()) <= 1e-10 * std::max(1.0, std::abs(z.real()))) roots.push_back(z.real());
    }
  }
  std::erase_if(roots, [&](double r) { return !(r >= lo && r <= hi); });
  std::sort(roots.begin(), roots.end());
  return roots;
}

VorticityFunction::VorticityFunction()
    : VorticityFunction(std::vector<VorticityPiece>{{-1.0, 0.0, Polynomial({0.0})}}) {}

VorticityFunction::VorticityFunction(std::vector<VorticityPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw std::invalid_argument("vorticity: at least one piece required");
  std::sort(pieces_.begin(), pieces_.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  if (pieces_.front().lo != -1.0) throw std::invalid_argument("vorticity: pieces must start at p = -1");
  if (pieces_.back().hi != 0.0) throw std::invalid_argument("vorticity: pieces must end at p = 0");
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const auto& pc = pieces_[k];
    if (!(pc.lo < pc.hi)) throw std::invalid_argument("vorticity: piece interval must satisfy lo < hi");
    if (k > 0 && pieces_[k - 1].hi != pc.lo)
      throw std::invalid_argument("vorticity: pieces must partition [-1,0] without gaps or overlap");
    for (double c : pc.poly.coeffs())
      if (!std::isfinite(c)) throw std::invalid_argument("vorticity: coefficients must be finite");
  }
  for (std::size_t k = 1; k < pieces_.size(); ++k) jumps_.push_back(pieces_[k].lo);

  // integral_from_zero(p) = offset_[k] + F_k(p) on piece k, with offset of the
  // last piece exactly 0 so that the value at p = 0 is exactly 0.
  antiderivs_.reserve(pieces_.size());
  for (const auto& pc : pieces_) antiderivs_.push_back(pc.poly.antiderivative());
  offset_.assign(pieces_.size(), 0.0);
  for (std::size_t k = pieces_.size() - 1; k-- > 0;) {
    const double at_break = offset_[k + 1] + antiderivs_[k + 1](pieces_[k].hi);
    offset_[k] = at_break - antiderivs_[k](pieces_[k].hi);
  }
}

VorticityFunction VorticityFunction::constant(double value) {
  return VorticityFunction(std::vector<VorticityPiece>{{-1.0, 0.0, Polynomial({value})}});
}

VorticityFunction VorticityFunction::two_layer(double p_jump, double lower, double upper) {
  return VorticityFunction(std::vector<VorticityPiece>{{-1.0, p_jump, Polynomial({lower})},
                                                       {p_jump, 0.0, Polynomial({upper})}});
}

std::size_t VorticityFunction::piece_index(double p, Side side) const {
  if (!(p >= -1.0 && p <= 0.0)) throw DomainError("vorticity: p = " + std::to_string(p) + " outside [-1,0]");
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const auto& pc = pieces_[k];
    if (side == Side::Left) {
      if (p <= pc.hi && (p > pc.lo || k == 0)) return k;
    } else {
      if (p >= pc.lo && (p < pc.hi || k + 1 == pieces_.size())) return k;
    }
  }
  return pieces_.size() - 1;
}

double VorticityFunction::gamma(double p, Side side) const {
  return pieces_[piece_index(p, side)].poly(p);
}

double VorticityFunction::integral_from_zero(double p) const {
  const std::size_t k = piece_index(p, Side::Right);
  return offset_[k] + antiderivs_[k](p);
}

std::pair<double, double> VorticityFunction::bounds() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& pc : pieces_) {
    std::vector<double> pts = pc.poly.derivative().real_roots_in(pc.lo, pc.hi);
    pts.push_back(pc.lo);
    pts.push_back(pc.hi);
    for (double p : pts) {
      const double val = pc.poly(p);
      lo = std::min(lo, val);
      hi = std::max(hi, val);
    }
  }
  return {lo, hi};
}

std::pair<double, double> VorticityFunction::integral_bounds() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const auto& pc = pieces_[k];
    std::vector<double> pts = pc.poly.real_roots_in(pc.lo, pc.hi);
    pts.push_back(pc.lo);
    pts.push_back(pc.hi);
    for (double p : pts) {
      const double val = offset_[k] + antiderivs_[k](p);
      lo = std::min(lo, val);
      hi = std::max(hi, val);
    }
  }
  return {lo, hi};
}

double gamma_tilde(const VorticityFunction& v, const FlowParameters& params, double p) {
  return params.p0 * v.integral_from_zero(p);
}

double gamma_cap(const VorticityFunction& v, const FlowParameters& params, double p) {
  return 2.0 * params.d * params.d / params.p0 * v.integral_from_zero(p);
}

std::pair<double, double> bound_gamma(const VorticityFunction& v) { return v.bounds(); }

}  // namespace wavekit
