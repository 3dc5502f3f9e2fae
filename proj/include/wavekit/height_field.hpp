#pragma once

#include "wavekit/grid.hpp"

#include <span>
#include <vector>

namespace wavekit {

/// Samples h(q_i, p_j) on the full periodic grid, i in [0,Nq), j in [0,Np],
/// together with the Bernoulli head Q and the surface-pressure multiplier
/// sigma (P - P_atm = sigma cos q on the surface; 0 for free-surface states).
class HeightField {
 public:
  HeightField() = default;
  HeightField(int nq, int np, double Q = 0.0);

  static HeightField zeros(const Grid& grid, double Q);
  /// q-independent field from a profile sampled at the Np+1 p-nodes.
  static HeightField from_profile(const Grid& grid, std::span<const double> profile, double Q);

  int nq() const { return nq_; }
  int np() const { return np_; }

  double& operator()(int i, int j) { return h_[static_cast<std::size_t>(i) * (np_ + 1) + j]; }
  double operator()(int i, int j) const { return h_[static_cast<std::size_t>(i) * (np_ + 1) + j]; }
  std::span<const double> column(int i) const {
    return {h_.data() + static_cast<std::size_t>(i) * (np_ + 1), static_cast<std::size_t>(np_ + 1)};
  }
  const std::vector<double>& values() const { return h_; }
  std::vector<double>& values() { return h_; }

  double Q = 0.0;
  double sigma = 0.0;

  /// (1/Nq) sum_i h(q_i, 0).
  double surface_mean() const;
  /// d (h(0,0) - h(pi,0)) / 2.
  double amplitude(double d) const;
  /// max |h(q,p) - h(-q,p)|.
  double evenness_defect() const;
  /// max |h(q,-1)|.
  double bed_defect() const;
  double max_abs() const;
  /// Minimum of the discrete 1 + h_p at every half node (vertical flux stencil).
  double min_one_plus_hp(const Grid& grid) const;

 private:
  int nq_ = 0;
  int np_ = 0;
  std::vector<double> h_;
};

}  // namespace wavekit
