#include "wavekit/newton.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <sstream>

namespace wavekit {

namespace {

void symmetrize(HeightField& hf) {
  const int nq = hf.nq();
  for (int i = 1; i < nq / 2; ++i) {
    for (int j = 0; j <= hf.np(); ++j) {
      const double avg = 0.5 * (hf(i, j) + hf(nq - i, j));
      hf(i, j) = avg;
      hf(nq - i, j) = avg;
    }
  }
}

}  // namespace

NewtonResult newton_solve(const HeightOperator& op, HeightField initial, SolveMode mode, double amplitude,
                          const NewtonOptions& opts) {
  const Grid& grid = op.grid();
  if (initial.nq() != grid.nq() || initial.np() != grid.np())
    throw std::invalid_argument("newton: initial field does not match the grid");
  HeightField hf = std::move(initial);
  for (int i = 0; i < grid.nq(); ++i) hf(i, 0) = 0.0;
  if (opts.symmetry == Symmetry::Even) symmetrize(hf);
  if (mode == SolveMode::FixedQ) hf.sigma = 0.0;
  if (!(hf.min_one_plus_hp(grid) > op.eps_stag())) throw DegenerateCellError("newton: initial field violates 1 + h_p > 0");

  const SystemLayout layout(grid, opts.symmetry, mode);
  NewtonReport report;
  Eigen::VectorXd r = op.system_residual(hf, layout, amplitude);
  report.residual_history.push_back(r.lpNorm<Eigen::Infinity>());

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  while (true) {
    const double rinf = r.lpNorm<Eigen::Infinity>();
    if (rinf <= opts.tol) {
      report.converged = true;
      break;
    }
    if (report.iterations >= opts.max_iter) break;

    const auto J = op.system_jacobian(hf, layout);
    lu.compute(J);
    if (lu.info() != Eigen::Success) {
      report.residual_inf = rinf;
      throw NonConvergenceError("newton: singular Jacobian (" + lu.lastErrorMessage() + ")", report, hf);
    }
    const Eigen::VectorXd delta = lu.solve(-r);

    const double r2 = r.norm();
    double step = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= opts.max_halvings; ++halving, step *= 0.5) {
      HeightField trial = hf;
      op.apply_update(trial, layout, delta, step);
      if (!(trial.min_one_plus_hp(grid) > op.eps_stag())) {
        report.stagnation_guard = true;
        continue;
      }
      Eigen::VectorXd rt;
      try {
        rt = op.system_residual(trial, layout, amplitude);
      } catch (const DegenerateCellError&) {
        report.stagnation_guard = true;
        continue;
      }
      if (rt.norm() < (1.0 - 1e-4 * step) * r2 || rt.lpNorm<Eigen::Infinity>() <= opts.tol) {
        hf = std::move(trial);
        r = std::move(rt);
        accepted = true;
        break;
      }
    }
    ++report.iterations;
    report.residual_history.push_back(r.lpNorm<Eigen::Infinity>());
    if (!accepted) break;
  }

  report.residual_inf = r.lpNorm<Eigen::Infinity>();
  report.min_one_plus_hp = hf.min_one_plus_hp(grid);
  if (!report.converged) {
    std::ostringstream os;
    os << "newton: no convergence after " << report.iterations << " iterations, residual history:";
    for (double v : report.residual_history) os << ' ' << v;
    throw NonConvergenceError(os.str(), report, hf);
  }
  return {std::move(hf), std::move(report)};
}

ContinuationResult continuation(const HeightOperator& op, const HeightField& start, std::span<const double> schedule,
                                const NewtonOptions& opts) {
  ContinuationResult out;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const double a = schedule[k];
    HeightField guess = out.steps.empty() ? start : out.steps.back().field;
    if (out.steps.size() >= 2) {
      const auto& s1 = out.steps[out.steps.size() - 1];
      const auto& s0 = out.steps[out.steps.size() - 2];
      const double da = s1.amplitude - s0.amplitude;
      if (da != 0.0) {
        const double t = (a - s1.amplitude) / da;
        auto& vals = guess.values();
        for (std::size_t n = 0; n < vals.size(); ++n)
          vals[n] = s1.field.values()[n] + t * (s1.field.values()[n] - s0.field.values()[n]);
        guess.Q = s1.field.Q + t * (s1.field.Q - s0.field.Q);
        guess.sigma = s1.field.sigma + t * (s1.field.sigma - s0.field.sigma);
        if (!(guess.min_one_plus_hp(op.grid()) > op.eps_stag())) guess = s1.field;
      }
    }
    try {
      auto res = newton_solve(op, std::move(guess), SolveMode::FixedAmplitude, a, opts);
      out.steps.push_back({a, std::move(res.field), std::move(res.report)});
    } catch (const std::exception& e) {
      out.failed_amplitude = a;
      out.failure = e.what();
      break;
    }
  }
  return out;
}

}  // namespace wavekit
