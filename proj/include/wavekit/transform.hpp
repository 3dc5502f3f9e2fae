#pragma once

#include "wavekit/grid.hpp"
#include "wavekit/height_field.hpp"
#include "wavekit/vorticity.hpp"

#include <stdexcept>
#include <vector>

namespace wavekit {

/// The map (q,p) -> (q, d(h+p)) fails to be strictly monotone in p.
class StagnationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Height and its first derivatives at one point of the rectangle R.
struct FieldSample {
  double q;
  double p;
  double h;
  double hq;
  double hp;
};

/// Physical quantities at the image of a FieldSample (frame moving with the wave).
struct FlowState {
  double x, y;
  double psi, psi_x, psi_y;
  double u, v;
  double P;
};

/// Pointwise semi-hodograph relations:
///   psi = p0 p, psi_x = -p0 h_q / (1+h_p), psi_y = p0 / (d (1+h_p)),
///   u = c + psi_y, v = -psi_x,
///   P = P_atm + Q/2 - |grad psi|^2 / 2 - g (y+d) + Gamma-tilde(p).
FlowState flow_state(const FieldSample& s, const VorticityFunction& v, const FlowParameters& params);

/// Derivative relations in both directions, for the algebraic round trip.
struct StreamGradient {
  double psi_x, psi_y;
};
StreamGradient stream_gradient(double hq, double hp, const FlowParameters& params);
/// Inverse relations: h_q = -psi_x / (d psi_y), h_p = p0 / (d psi_y) - 1.
std::pair<double, double> height_gradient(double psi_x, double psi_y, const FlowParameters& params);

/// Node derivatives of a grid field: h_q spectral in q, h_p second-order in p
/// (never across a vorticity jump; the surface row uses the solver's 5-point
/// one-sided stencil). Layout i*(Np+1)+j.
struct NodeDerivatives {
  int nq = 0, np = 0;
  std::vector<double> hq, hp;
};
NodeDerivatives node_derivatives(const HeightField& hf, const Grid& grid);

struct CurvilinearGrid {
  std::vector<double> x;    // q-nodes
  std::vector<double> eta;  // d h(x, 0)
  std::vector<double> y;    // d (h + p), layout i*(Np+1)+j
};
CurvilinearGrid physical_map(const HeightField& hf, const Grid& grid, const FlowParameters& params);

/// p in [-1,0] with y = d (h(x,p) + p); h trigonometric in q, piecewise linear in p.
double invert_height(const HeightField& hf, const Grid& grid, const FlowParameters& params, double x, double y);

struct PhysicalFields {
  int nq = 0, np = 0;
  double Q = 0.0;
  double sigma = 0.0;
  std::vector<double> x, eta;
  // node arrays, layout i*(Np+1)+j
  std::vector<double> y, p, h, hq, hp;
  std::vector<double> psi, psi_x, psi_y, u, v, P;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * (np + 1) + j; }
};

/// Stream function and its gradient at the curvilinear nodes (psi = p0 p exactly).
PhysicalFields reconstruct_stream(const HeightField& hf, const Grid& grid, const FlowParameters& params);
/// Adds u = c + psi_y, v = -psi_x.
void reconstruct_velocity(PhysicalFields& fields, const FlowParameters& params);
/// Adds the Bernoulli pressure.
void reconstruct_pressure(PhysicalFields& fields, const VorticityFunction& v, const FlowParameters& params);
/// All of the above.
PhysicalFields reconstruct(const HeightField& hf, const Grid& grid, const VorticityFunction& v,
                           const FlowParameters& params);

struct BernoulliReport {
  std::vector<double> F;        // P + |grad psi|^2/2 + g y at each node
  double F0 = 0.0;              // surface constant
  double collapse_error = 0.0;  // max |F - Gamma-tilde(psi/p0) - F0|
  double max_x_variation = 0.0; // max over p-levels of (max_x F - min_x F)
};
BernoulliReport bernoulli_function(const PhysicalFields& fields, const VorticityFunction& v,
                                   const FlowParameters& params);

struct TransformSummary {
  double max_u_minus_c = 0.0;
  double surface_pressure_dev = 0.0;
  double bernoulli_collapse_err = 0.0;
};
TransformSummary summarize(const PhysicalFields& fields, const VorticityFunction& v, const FlowParameters& params);

}  // namespace wavekit
