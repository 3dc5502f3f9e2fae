#pragma once

#include "wavekit/height_operator.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavekit {

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 50;
  int max_halvings = 30;
  Symmetry symmetry = Symmetry::Even;
};

struct NewtonReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_history;  // inf-norm, one entry per iterate
  bool stagnation_guard = false;         // a trial step left 1 + h_p > eps_stag and was cut back
  double residual_inf = 0.0;
  double min_one_plus_hp = 0.0;
};

struct NewtonResult {
  HeightField field;
  NewtonReport report;
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, NewtonReport report, HeightField last)
      : std::runtime_error(what), report(std::move(report)), last(std::move(last)) {}
  NewtonReport report;
  HeightField last;
};

/// Damped Newton on the discrete height system. FixedQ keeps hf.Q; FixedAmplitude
/// solves for Q and sigma with the surface-mean and amplitude rows.
/// The initial field is symmetrized (Symmetry::Even) and its bed row zeroed.
NewtonResult newton_solve(const HeightOperator& op, HeightField initial, SolveMode mode, double amplitude = 0.0,
                          const NewtonOptions& opts = {});

struct ContinuationStep {
  double amplitude;
  HeightField field;
  NewtonReport report;
};

struct ContinuationResult {
  std::vector<ContinuationStep> steps;  // converged steps, in schedule order
  std::optional<double> failed_amplitude;
  std::string failure;
  bool completed() const { return !failed_amplitude.has_value(); }
};

/// Sequence of fixed-amplitude solves warm-started from the previous step
/// (secant-extrapolated once two steps exist). Stops at the first failure.
ContinuationResult continuation(const HeightOperator& op, const HeightField& start, std::span<const double> schedule,
                                const NewtonOptions& opts = {});

}  // namespace wavekit
