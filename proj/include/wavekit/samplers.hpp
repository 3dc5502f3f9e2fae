#pragma once

#include "wavekit/grid.hpp"
#include "wavekit/height_field.hpp"
#include "wavekit/spectral.hpp"
#include "wavekit/transform.hpp"

#include <cstdint>
#include <vector>

namespace wavekit {

/// A height field h(q,p) that can be evaluated with first derivatives anywhere
/// on R. q is taken modulo 2 pi.
class HeightSampler {
 public:
  virtual ~HeightSampler() = default;
  virtual FieldSample sample(double q, double p) const = 0;
};

/// Continuous extension of a grid field: trigonometric in q, linear in p on
/// each cell. h_p is the cell difference and h_q the linear interpolant of the
/// spectral node derivatives. At a node both neighbouring cells agree on h
/// but not on h_p; `upper_cell` picks the side.
class GridHeightSampler : public HeightSampler {
 public:
  GridHeightSampler(const HeightField& hf, const Grid& grid);

  FieldSample sample(double q, double p) const override;
  FieldSample sample_cell(double q, int cell, double t) const;

  /// h and h_q of the column through x, one value per p-node.
  struct Column {
    std::vector<double> h, hq;
  };
  Column column(double x) const;

  const Grid& grid() const { return grid_; }
  const HeightField& field() const { return hf_; }
  const NodeDerivatives& derivatives() const { return der_; }

 private:
  HeightField hf_;
  Grid grid_;
  NodeDerivatives der_;
  PeriodicSpectral spec_;
};

/// Smooth even periodic field with h = 0 on the bed:
///   h(q,p) = sum_k cos(k q) (1+p) sum_m a_km p^m,   a_00 = 0.
class SyntheticHeight : public HeightSampler {
 public:
  /// coeffs[k][m] multiplies cos(k q) (1+p) p^m.
  explicit SyntheticHeight(std::vector<std::vector<double>> coeffs);

  /// Random coefficients (uniform, deterministic in `seed`) scaled so that
  /// |h_p| <= max_slope everywhere by a crude bound.
  static SyntheticHeight random(std::uint64_t seed, int modes = 3, int degree = 3, double max_slope = 0.3);

  FieldSample sample(double q, double p) const override;
  HeightField to_grid(const Grid& grid, double Q = 0.0) const;
  const std::vector<std::vector<double>>& coeffs() const { return a_; }

 private:
  std::vector<std::vector<double>> a_;
};

/// p in [p_lo, p_hi] with d (h(x,p) + p) = y, by safeguarded Newton on the
/// monotone map. Throws DomainError if y is outside the image of [p_lo, p_hi].
double invert_sampler(const HeightSampler& s, const FlowParameters& params, double x, double y, double p_lo = -1.0,
                      double p_hi = 0.0);

}  // namespace wavekit
