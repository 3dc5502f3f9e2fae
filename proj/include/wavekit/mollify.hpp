#pragma once

#include "wavekit/samplers.hpp"
#include "wavekit/test_function.hpp"

#include <vector>

namespace wavekit {

/// Mollification diagnostic for the Bernoulli step of the equivalence
/// argument. On a Cartesian patch around a fluid-domain bump phi the fields
/// F = P + |grad psi|^2/2 + g y, psi_x, psi_y are mollified at scale eps and
/// the commutator
///   T(eps) = int int (F psi_y - F^eps psi_y^eps) phi_x - (F psi_x - F^eps psi_x^eps) phi_y
/// is recorded. A log-log fit of |T| against eps gives the observed decay;
/// alpha_hat = min(slope, 1) and the proof's requirement reads 3 alpha - 1 > 0.
/// Diagnostic only.
struct MollificationReport {
  std::vector<double> eps;
  std::vector<double> commutator;  // |T(eps)|
  double spacing = 0.0;            // Cartesian patch spacing
  double fitted_slope = 0.0;
  double alpha_hat = 0.0;
  bool threshold_met = false;  // 3 alpha_hat - 1 > 0
};

/// `min_spacing` is the grid resolution the eps values are checked against
/// (each eps >= 2 min_spacing, else std::invalid_argument). params.Q must be
/// the field's Bernoulli head.
MollificationReport mollification_rate(const HeightSampler& field, const VorticityFunction& v,
                                       const FlowParameters& params, const TestFunction& phi,
                                       const std::vector<double>& eps_list, double min_spacing);

/// Grid spacing the eps values of a grid field must exceed: max(dq, d dp).
double field_spacing(const Grid& grid, const FlowParameters& params);

}  // namespace wavekit
