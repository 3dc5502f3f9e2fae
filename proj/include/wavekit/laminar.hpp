#pragma once

#include "wavekit/vorticity.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace wavekit {

/// Raised by solve_lambda when no admissible lambda normalizes the profile.
/// `attainable_max` is the normalization integral just above the lower
/// admissibility limit; the attainable range is (0, attainable_max).
class NoBracketError : public std::runtime_error {
 public:
  NoBracketError(const std::string& what, double lambda_min, double attainable_max)
      : std::runtime_error(what), lambda_min(lambda_min), attainable_max(attainable_max) {}
  double lambda_min;
  double attainable_max;
};

/// q-independent (flat-surface) solution of the modified-height system:
/// 1 + h_p = (lambda + Gamma(p))^{-1/2}, h(-1) = h(0) = 0.
struct LaminarFlow {
  double lambda = 1.0;
  double Q = 0.0;
  std::vector<double> p;
  std::vector<double> h;
  std::vector<double> hp;
};

/// Lower admissibility limit -min Gamma.
double lambda_lower_limit(const VorticityFunction& v, const FlowParameters& params);

/// int_{-1}^0 (lambda + Gamma(p))^{-1/2} dp, panels split at vorticity breakpoints.
double normalization_integral(const VorticityFunction& v, const FlowParameters& params, double lambda);

/// Unique lambda with normalization_integral == 1, by bracketed bisection.
double solve_lambda(const VorticityFunction& v, const FlowParameters& params);

/// h(p) = int_{-1}^p [(lambda + Gamma)^{-1/2} - 1] ds at each grid point.
std::vector<double> laminar_height(double lambda, const VorticityFunction& v, const FlowParameters& params,
                                   std::span<const double> p_grid);

/// Bernoulli head of the laminar flow: Q = 2 g d + p0^2 lambda / d^2.
double laminar_Q(double lambda, const FlowParameters& params);

LaminarFlow solve_laminar(const VorticityFunction& v, const FlowParameters& params, std::span<const double> p_grid);

}  // namespace wavekit
