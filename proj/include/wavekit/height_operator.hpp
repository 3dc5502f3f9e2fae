#pragma once

#include "wavekit/grid.hpp"
#include "wavekit/height_field.hpp"
#include "wavekit/vorticity.hpp"

#include <Eigen/Sparse>

#include <stdexcept>
#include <vector>

namespace wavekit {

/// 1 + h_p fell to or below the stagnation floor somewhere on the grid.
class DegenerateCellError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SolveMode { FixedQ, FixedAmplitude };
enum class Symmetry { Full, Even };

/// Unknown/row numbering of a Newton system. Field unknowns are h(i,j) for
/// j = 1..Np (the bed row is eliminated); under Symmetry::Even only the
/// representatives q = k dq, k = 0..Nq/2 are kept. FixedAmplitude appends Q
/// and sigma as unknowns and the mean-zero and amplitude rows as equations.
class SystemLayout {
 public:
  SystemLayout(const Grid& grid, Symmetry sym, SolveMode mode);

  Symmetry symmetry() const { return sym_; }
  SolveMode mode() const { return mode_; }
  int field_unknowns() const { return n_h_; }
  int size() const { return n_h_ + (mode_ == SolveMode::FixedAmplitude ? 2 : 0); }
  int q_index() const { return n_h_; }
  int sigma_index() const { return n_h_ + 1; }

  /// Unknown index of node (i, j), -1 for the bed row.
  int unknown(int i, int j) const;
  /// Full column indices that own rows, in row order.
  const std::vector<int>& row_columns() const { return row_columns_; }

 private:
  const Grid* grid_;
  Symmetry sym_;
  SolveMode mode_;
  int n_h_;
  std::vector<int> row_columns_;
};

/// Conservative discretization of the divergence-form height equation
///   { -(1 + d^2 h_q^2) / (2 d^2 (1+h_p)^2) + Gamma(p) / (2 d^2) }_p + { h_q / (1+h_p) }_q = 0
/// with the Bernoulli surface condition on p = 0 and h = 0 on p = -1.
/// Vertical fluxes live on half nodes p_{j+1/2} (Gamma exact there, 4-point h_p
/// inside a vorticity layer); horizontal fluxes on q_{i+1/2}.
class HeightOperator {
 public:
  HeightOperator(Grid grid, VorticityFunction vort, FlowParameters params, double eps_stag = 1e-10);

  const Grid& grid() const { return grid_; }
  const VorticityFunction& vorticity() const { return vort_; }
  const FlowParameters& params() const { return params_; }
  double eps_stag() const { return eps_stag_; }

  /// Interior and surface residuals on the full grid, entry i*Np + (j-1).
  std::vector<double> residual(const HeightField& hf) const;
  /// Surface rows only, by default without the sigma forcing.
  std::vector<double> surface_residual(const HeightField& hf, bool include_forcing = false) const;

  Eigen::VectorXd system_residual(const HeightField& hf, const SystemLayout& layout, double amplitude) const;
  Eigen::SparseMatrix<double> system_jacobian(const HeightField& hf, const SystemLayout& layout) const;
  void apply_update(HeightField& hf, const SystemLayout& layout, const Eigen::VectorXd& delta, double step) const;

  /// h_q, h_p as the surface row sees them (central in q, one-sided in p).
  struct SurfaceDerivatives {
    std::vector<double> h, hq, hp;
  };
  SurfaceDerivatives surface_derivatives(const HeightField& hf) const;

 private:
  template <class Sink>
  double flux_vertical(const HeightField& hf, int i, int m, double scale, Sink&& sink) const;
  template <class Sink>
  double flux_horizontal(const HeightField& hf, int i, int j, double scale, Sink&& sink) const;
  template <class Sink>
  double surface_row(const HeightField& hf, int i, bool forcing, Sink&& sink) const;
  template <class Sink>
  double interior_row(const HeightField& hf, int i, int j, Sink&& sink) const;
  void check_stagnation(double one_plus_hp, int i, double p) const;

  Grid grid_;
  VorticityFunction vort_;
  FlowParameters params_;
  double eps_stag_;
  std::vector<double> gamma_half_;
  std::vector<PStencil> half_dp_;
  std::vector<PStencil> node_dp_;
  PStencil surface_dp_;
};

}  // namespace wavekit
