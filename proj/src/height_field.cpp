#include "wavekit/height_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wavekit {

HeightField::HeightField(int nq, int np, double Q)
    : Q(Q), nq_(nq), np_(np), h_(static_cast<std::size_t>(nq) * (np + 1), 0.0) {}

HeightField HeightField::zeros(const Grid& grid, double Q) { return HeightField(grid.nq(), grid.np(), Q); }

HeightField HeightField::from_profile(const Grid& grid, std::span<const double> profile, double Q) {
  if (static_cast<int>(profile.size()) != grid.np() + 1)
    throw std::invalid_argument("height field: profile must have Np+1 samples");
  HeightField hf(grid.nq(), grid.np(), Q);
  for (int i = 0; i < grid.nq(); ++i)
    for (int j = 0; j <= grid.np(); ++j) hf(i, j) = profile[j];
  return hf;
}

double HeightField::surface_mean() const {
  double acc = 0.0;
  for (int i = 0; i < nq_; ++i) acc += (*this)(i, np_);
  return acc / nq_;
}

double HeightField::amplitude(double d) const { return d * ((*this)(nq_ / 2, np_) - (*this)(0, np_)) / 2.0; }

double HeightField::evenness_defect() const {
  double worst = 0.0;
  for (int i = 0; i < nq_; ++i) {
    const int mirror = (nq_ - i) % nq_;
    for (int j = 0; j <= np_; ++j) worst = std::max(worst, std::abs((*this)(i, j) - (*this)(mirror, j)));
  }
  return worst;
}

double HeightField::bed_defect() const {
  double worst = 0.0;
  for (int i = 0; i < nq_; ++i) worst = std::max(worst, std::abs((*this)(i, 0)));
  return worst;
}

double HeightField::max_abs() const {
  double worst = 0.0;
  for (double v : h_) worst = std::max(worst, std::abs(v));
  return worst;
}

double HeightField::min_one_plus_hp(const Grid& grid) const {
  if (grid.nq() != nq_ || grid.np() != np_) throw std::invalid_argument("height field: grid mismatch");
  double lo = std::numeric_limits<double>::infinity();
  std::vector<PStencil> stencils;
  for (int m = 0; m < np_; ++m) stencils.push_back(grid.half_node_dp(m));
  for (int i = 0; i < nq_; ++i) {
    for (int m = 0; m < np_; ++m) {
      double hp = 0.0;
      for (auto [j, w] : stencils[m]) hp += w * (*this)(i, j);
      lo = std::min(lo, 1.0 + hp);
    }
  }
  return lo;
}

}  // namespace wavekit
