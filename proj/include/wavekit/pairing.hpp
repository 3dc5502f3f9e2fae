#pragma once

#include "wavekit/height_operator.hpp"
#include "wavekit/samplers.hpp"
#include "wavekit/test_function.hpp"

#include <string>
#include <vector>

namespace wavekit {

/// A quadrature node carrying the height sample there and its weight in both
/// coordinate systems: w_xy = w_qp * d (1 + h_p).
struct PairingPoint {
  FieldSample s;
  double w_qp;
  double w_xy;
};
using PairingRule = std::vector<PairingPoint>;

/// Rule at the resolution of a grid field: periodic trapezoid on the q-nodes,
/// midpoint rule on each p-cell (optionally split into `subdivide` pieces).
/// Only nodes inside the support of the rectangle bump are kept.
PairingRule grid_rule(const GridHeightSampler& field, const TestFunction& tf, const FlowParameters& params,
                      int subdivide = 1);
/// Composite Gauss rule on the (q,p) support box, p-panels split at vorticity jumps.
PairingRule qp_rule(const HeightSampler& field, const TestFunction& tf, const VorticityFunction& v,
                    const FlowParameters& params, int panels, int order = 2);
/// Composite Gauss rule in physical (x,y) over the image of the support: x
/// first, then y between the images of the support's p-limits, with y-panels
/// split at the images of the vorticity jumps. p is recovered by inversion.
PairingRule xy_rule(const HeightSampler& field, const TestFunction& tf, const VorticityFunction& v,
                    const FlowParameters& params, int panels, int order = 2);

/// I_h = int int A phi~_p + B phi~_q dq dp, A = -(1+d^2 h_q^2)/(2 d^2 (1+h_p)^2) + Gamma/(2 d^2), B = h_q/(1+h_p).
double pair_height(const PairingRule& rule, const TestFunction& tf, const VorticityFunction& v,
                   const FlowParameters& params);
/// I_psi = int int Gamma~ phi_y - psi_x psi_y phi_x + (psi_x^2 - psi_y^2) phi_y / 2 dx dy.
double pair_stream(const PairingRule& rule, const TestFunction& tf, const VorticityFunction& v,
                   const FlowParameters& params);

/// Deliberate violations added to reconstructed fields before pairing.
struct FieldDefect {
  double pressure_x = 0.0;  // P += pressure_x * x
  double pressure_y = 0.0;  // P += pressure_y * y
  double kinematic = 0.0;   // v += kinematic * (y + d) cos x
  bool any() const { return pressure_x != 0.0 || pressure_y != 0.0 || kinematic != 0.0; }
};

struct EulerPairing {
  double R1 = 0.0;  // int int (u^2 - c u + P) phi_x + u v phi_y
  double R2 = 0.0;  // int int (u v - c v) phi_x + (v^2 + P) phi_y - g phi
  double R3 = 0.0;  // int int u phi_x + v phi_y
};
/// params.Q must hold the field's Bernoulli head.
EulerPairing pair_euler(const PairingRule& rule, const TestFunction& tf, const VorticityFunction& v,
                        const FlowParameters& params, const FieldDefect& defect = {});

/// ||grad phi~||_L1 over R and ||grad phi||_L1 over the fluid domain.
double gradient_norm_qp(const PairingRule& rule, const TestFunction& tf);
double gradient_norm_xy(const PairingRule& rule, const TestFunction& tf, const FlowParameters& params);

struct CrossIdentity {
  double lhs = 0.0;  // p0^2 I_h
  double rhs = 0.0;  // I_psi of the pushed-forward test function
  double gap = 0.0;  // |lhs - rhs|
};
CrossIdentity cross_identity(const PairingRule& height_rule, const PairingRule& stream_rule, const TestFunction& tf,
                             const VorticityFunction& v, const FlowParameters& params);

/// Surface Bernoulli identity from the same derivatives at each surface sample:
///   lhs = (1/d^2 + h_q^2) p0^2 / (1+h_p)^2 + 2 g d (1 + h + p),
///   mid = |grad psi|^2 + 2 g (y + d).
/// With forcing, the discrete surface condition reads lhs = Q - 2 sigma cos q.
struct SurfaceIdentityReport {
  std::vector<double> lhs, mid;
  double max_gap_rel = 0.0;          // max |lhs - mid| / max(|lhs|, |mid|)
  double max_condition_residual = 0.0;  // max |lhs - Q + 2 sigma cos q|
};
SurfaceIdentityReport surface_identity(const std::vector<FieldSample>& surface, const FlowParameters& params,
                                       double sigma = 0.0);
/// Surface samples with the derivatives the solver's surface row uses.
std::vector<FieldSample> solver_surface_samples(const HeightOperator& op, const HeightField& hf);

struct TestFunctionEntry {
  double center_q, center_p, radius_q, radius_p;
  double value;
  double normalizer;
};
struct RefinementEntry {
  int level;  // Np of the level
  double max_abs;  // max over test functions of |value| / normalizer
};
struct PairingReport {
  std::string formulation;
  std::vector<TestFunctionEntry> per_testfn;  // at the finest level
  std::vector<RefinementEntry> refinement;    // coarse to fine
  std::vector<double> fitted_rates;           // log2 decay between consecutive levels
  double max_normalized() const { return refinement.empty() ? 0.0 : refinement.back().max_abs; }
};

/// Height, stream, Euler R1..R3 and cross-identity reports of a grid field
/// against a test-function family. `levels` >= 1 dyadic restrictions of the
/// field are paired (finest last); restriction stops early when the coarser
/// grid cannot carry the vorticity jumps or drops below Nq = 8.
std::vector<PairingReport> verify_grid_field(const HeightField& hf, const Grid& grid, const VorticityFunction& v,
                                             const FlowParameters& params, const std::vector<TestFunction>& family,
                                             int levels = 1, const FieldDefect& defect = {});

/// Restriction of a field to every `factor`-th node in both directions.
HeightField restrict_field(const HeightField& hf, int factor);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wavekit
