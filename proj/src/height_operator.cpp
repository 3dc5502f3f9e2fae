#include "wavekit/height_operator.hpp"

#include <cmath>
#include <sstream>

namespace wavekit {

SystemLayout::SystemLayout(const Grid& grid, Symmetry sym, SolveMode mode) : grid_(&grid), sym_(sym), mode_(mode) {
  if (sym == Symmetry::Even) {
    for (int k = 0; k < grid.half_columns(); ++k) row_columns_.push_back(grid.column_of(k));
  } else {
    for (int i = 0; i < grid.nq(); ++i) row_columns_.push_back(i);
  }
  n_h_ = static_cast<int>(row_columns_.size()) * grid.np();
}

int SystemLayout::unknown(int i, int j) const {
  if (j == 0) return -1;
  const int col = sym_ == Symmetry::Even ? grid_->fold(i) : grid_->wrap(i);
  return col * grid_->np() + (j - 1);
}

HeightOperator::HeightOperator(Grid grid, VorticityFunction vort, FlowParameters params, double eps_stag)
    : grid_(std::move(grid)), vort_(std::move(vort)), params_(params), eps_stag_(eps_stag) {
  params_.validate();
  const int np = grid_.np();
  for (double pj : vort_.jump_points()) {
    // the grid must have been built for this vorticity
    if (!grid_.is_jump_node(static_cast<int>(std::lround((pj + 1.0) * np))))
      throw std::invalid_argument("height operator: grid not aligned with vorticity breakpoints");
  }
  for (int m = 0; m < np; ++m) {
    gamma_half_.push_back(gamma_cap(vort_, params_, grid_.p_half(m)));
    half_dp_.push_back(grid_.half_node_dp(m));
  }
  for (int j = 0; j <= np; ++j) node_dp_.push_back(grid_.node_dp(j));
  surface_dp_ = grid_.surface_dp();
}

void HeightOperator::check_stagnation(double one_plus_hp, int i, double p) const {
  if (!(one_plus_hp > eps_stag_)) {
    std::ostringstream os;
    os << "degenerate cell: 1 + h_p = " << one_plus_hp << " at q = " << grid_.q(i) << ", p = " << p;
    throw DegenerateCellError(os.str());
  }
}

template <class Sink>
double HeightOperator::flux_vertical(const HeightField& hf, int i, int m, double scale, Sink&& sink) const {
  const double d2 = params_.d * params_.d;
  const int ip = grid_.wrap(i + 1);
  const int im = grid_.wrap(i - 1);
  const double cq = 1.0 / (4.0 * grid_.dq());
  double hp = 0.0;
  for (auto [j, w] : half_dp_[m]) hp += w * hf(i, j);
  const double hq = cq * (hf(ip, m) - hf(im, m) + hf(ip, m + 1) - hf(im, m + 1));
  const double s = 1.0 + hp;
  check_stagnation(s, i, grid_.p_half(m));
  const double num = 1.0 + d2 * hq * hq;
  const double value = -num / (2.0 * d2 * s * s) + gamma_half_[m] / (2.0 * d2);
  const double dhp = scale * num / (d2 * s * s * s);
  const double dhq = scale * (-hq / (s * s));
  for (auto [j, w] : half_dp_[m]) sink(i, j, dhp * w);
  sink(ip, m, dhq * cq);
  sink(im, m, -dhq * cq);
  sink(ip, m + 1, dhq * cq);
  sink(im, m + 1, -dhq * cq);
  return value;
}

template <class Sink>
double HeightOperator::flux_horizontal(const HeightField& hf, int i, int j, double scale, Sink&& sink) const {
  const int ip = grid_.wrap(i + 1);
  const double inv_dq = 1.0 / grid_.dq();
  const double hq = inv_dq * (hf(ip, j) - hf(i, j));
  double hp = 0.0;
  for (auto [jj, w] : node_dp_[j]) hp += 0.5 * w * (hf(i, jj) + hf(ip, jj));
  const double s = 1.0 + hp;
  check_stagnation(s, i, grid_.p(j));
  const double value = hq / s;
  const double dhq = scale / s;
  const double dhp = scale * (-hq / (s * s));
  sink(ip, j, dhq * inv_dq);
  sink(i, j, -dhq * inv_dq);
  for (auto [jj, w] : node_dp_[j]) {
    sink(i, jj, 0.5 * dhp * w);
    sink(ip, jj, 0.5 * dhp * w);
  }
  return value;
}

template <class Sink>
double HeightOperator::interior_row(const HeightField& hf, int i, int j, Sink&& sink) const {
  const double inv_dp = 1.0 / grid_.dp();
  const double inv_dq = 1.0 / grid_.dq();
  const double a_up = flux_vertical(hf, i, j, inv_dp, sink);
  const double a_dn = flux_vertical(hf, i, j - 1, -inv_dp, sink);
  const double b_rt = flux_horizontal(hf, i, j, inv_dq, sink);
  const double b_lt = flux_horizontal(hf, grid_.wrap(i - 1), j, -inv_dq, sink);
  return (a_up - a_dn) * inv_dp + (b_rt - b_lt) * inv_dq;
}

template <class Sink>
double HeightOperator::surface_row(const HeightField& hf, int i, bool forcing, Sink&& sink) const {
  const int np = grid_.np();
  const double d = params_.d;
  const double d2 = d * d;
  const double p02 = params_.p0 * params_.p0;
  const int ip = grid_.wrap(i + 1);
  const int im = grid_.wrap(i - 1);
  const double cq = 1.0 / (2.0 * grid_.dq());
  double hp = 0.0;
  for (auto [j, w] : surface_dp_) hp += w * hf(i, j);
  const double hq = cq * (hf(ip, np) - hf(im, np));
  const double h = hf(i, np);
  const double s = 1.0 + hp;
  check_stagnation(s, i, 0.0);
  const double num = 1.0 + d2 * hq * hq;
  double value = -num / (2.0 * d2 * s * s) - params_.g * d * (h + 1.0) / p02 + hf.Q / (2.0 * p02);
  if (forcing) value -= hf.sigma * std::cos(grid_.q(i)) / p02;
  const double dhp = num / (d2 * s * s * s);
  const double dhq = -hq / (s * s);
  for (auto [j, w] : surface_dp_) sink(i, j, dhp * w);
  sink(ip, np, dhq * cq);
  sink(im, np, -dhq * cq);
  sink(i, np, -params_.g * d / p02);
  return value;
}

std::vector<double> HeightOperator::residual(const HeightField& hf) const {
  const int nq = grid_.nq();
  const int np = grid_.np();
  auto none = [](int, int, double) {};
  std::vector<double> r(static_cast<std::size_t>(nq) * np);
  for (int i = 0; i < nq; ++i) {
    for (int j = 1; j < np; ++j) r[static_cast<std::size_t>(i) * np + j - 1] = interior_row(hf, i, j, none);
    r[static_cast<std::size_t>(i) * np + np - 1] = surface_row(hf, i, true, none);
  }
  return r;
}

std::vector<double> HeightOperator::surface_residual(const HeightField& hf, bool include_forcing) const {
  auto none = [](int, int, double) {};
  std::vector<double> r(grid_.nq());
  for (int i = 0; i < grid_.nq(); ++i) r[i] = surface_row(hf, i, include_forcing, none);
  return r;
}

HeightOperator::SurfaceDerivatives HeightOperator::surface_derivatives(const HeightField& hf) const {
  const int np = grid_.np();
  SurfaceDerivatives out;
  for (int i = 0; i < grid_.nq(); ++i) {
    double hp = 0.0;
    for (auto [j, w] : surface_dp_) hp += w * hf(i, j);
    out.h.push_back(hf(i, np));
    out.hq.push_back((hf(grid_.wrap(i + 1), np) - hf(grid_.wrap(i - 1), np)) / (2.0 * grid_.dq()));
    out.hp.push_back(hp);
  }
  return out;
}

Eigen::VectorXd HeightOperator::system_residual(const HeightField& hf, const SystemLayout& layout,
                                                 double amplitude) const {
  const int np = grid_.np();
  auto none = [](int, int, double) {};
  Eigen::VectorXd r(layout.size());
  const auto& cols = layout.row_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const int i = cols[k];
    for (int j = 1; j < np; ++j) r[static_cast<Eigen::Index>(k) * np + j - 1] = interior_row(hf, i, j, none);
    r[static_cast<Eigen::Index>(k) * np + np - 1] = surface_row(hf, i, true, none);
  }
  if (layout.mode() == SolveMode::FixedAmplitude) {
    r[layout.q_index()] = hf.surface_mean();
    r[layout.sigma_index()] = hf.amplitude(params_.d) - amplitude;
  }
  return r;
}

Eigen::SparseMatrix<double> HeightOperator::system_jacobian(const HeightField& hf, const SystemLayout& layout) const {
  const int np = grid_.np();
  const int nq = grid_.nq();
  const double p02 = params_.p0 * params_.p0;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(layout.size()) * 24);
  const auto& cols = layout.row_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const int i = cols[k];
    for (int j = 1; j <= np; ++j) {
      const int row = static_cast<int>(k) * np + j - 1;
      auto sink = [&](int ii, int jj, double coef) {
        const int col = layout.unknown(ii, jj);
        if (col >= 0) trip.emplace_back(row, col, coef);
      };
      if (j < np) {
        interior_row(hf, i, j, sink);
      } else {
        surface_row(hf, i, true, sink);
        if (layout.mode() == SolveMode::FixedAmplitude) {
          trip.emplace_back(row, layout.q_index(), 1.0 / (2.0 * p02));
          trip.emplace_back(row, layout.sigma_index(), -std::cos(grid_.q(i)) / p02);
        }
      }
    }
  }
  if (layout.mode() == SolveMode::FixedAmplitude) {
    for (int i = 0; i < nq; ++i) trip.emplace_back(layout.q_index(), layout.unknown(i, np), 1.0 / nq);
    const double half_d = params_.d / 2.0;
    trip.emplace_back(layout.sigma_index(), layout.unknown(nq / 2, np), half_d);
    trip.emplace_back(layout.sigma_index(), layout.unknown(0, np), -half_d);
  }
  Eigen::SparseMatrix<double> J(layout.size(), layout.size());
  J.setFromTriplets(trip.begin(), trip.end());
  J.makeCompressed();
  return J;
}

void HeightOperator::apply_update(HeightField& hf, const SystemLayout& layout, const Eigen::VectorXd& delta,
                                  double step) const {
  const int np = grid_.np();
  for (int i = 0; i < grid_.nq(); ++i)
    for (int j = 1; j <= np; ++j) hf(i, j) += step * delta[layout.unknown(i, j)];
  if (layout.mode() == SolveMode::FixedAmplitude) {
    hf.Q += step * delta[layout.q_index()];
    hf.sigma += step * delta[layout.sigma_index()];
  }
}

}  // namespace wavekit
