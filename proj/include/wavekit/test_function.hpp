#pragma once

#include "wavekit/samplers.hpp"
#include "wavekit/transform.hpp"

#include <stdexcept>
#include <vector>

namespace wavekit {

/// The test function's support leaves the open domain.
class SupportError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// B(t) = exp(-1/(1-t^2)) for |t| < 1, else 0.
double bump(double t);
double bump_prime(double t);

/// int_{-1}^{1} B.
inline constexpr double kBumpIntegral = 0.44399381616807943;

/// Gradient-carrying value of a test function.
struct TestValue {
  double phi = 0.0;
  double d1 = 0.0;  // derivative in the first coordinate (q or x)
  double d2 = 0.0;  // derivative in the second coordinate (p or y)
};

/// Pushed-forward test function phi(x,y) = phi~(x, psi/p0) with its physical gradient.
struct PhysicalTestValue {
  double phi = 0.0;
  double phi_x = 0.0;
  double phi_y = 0.0;
};

/// Product bump B((a-a0)/r1) B((b-b0)/r2). In the rectangle the first
/// coordinate is periodic.
class TestFunction {
 public:
  enum class Domain { Rectangle, Fluid };

  /// Bump on R in (q,p). Needs -1 < p_c - r_p, p_c + r_p < 0 and 0 < r_q < pi.
  static TestFunction rectangle(double q_c, double p_c, double r_q, double r_p);
  /// Bump on the fluid domain in (x,y); the support must clear the bed and
  /// the surface of the given field.
  static TestFunction fluid(double x_c, double y_c, double r_x, double r_y, const HeightSampler& field,
                            const FlowParameters& params);

  Domain domain() const { return domain_; }
  double center1() const { return c1_; }
  double center2() const { return c2_; }
  double radius1() const { return r1_; }
  double radius2() const { return r2_; }

  TestValue eval(double a, double b) const;
  /// Offset of a from the center, folded into [-pi, pi) for rectangle bumps.
  double offset1(double a) const;
  /// q-interval [lo, hi] covering the support (lo may be below -pi).
  std::pair<double, double> support1() const { return {c1_ - r1_, c1_ + r1_}; }
  std::pair<double, double> support2() const { return {c2_ - r2_, c2_ + r2_}; }

  /// phi(x,y) = phi~(q, p) for a rectangle bump, with the chain rule
  ///   phi_x = phi~_q - h_q/(1+h_p) phi~_p,  phi_y = phi~_p / (d (1+h_p)).
  PhysicalTestValue pushforward(const FieldSample& s, const FlowParameters& params) const;

 private:
  TestFunction(Domain dom, double c1, double c2, double r1, double r2)
      : domain_(dom), c1_(c1), c2_(c2), r1_(r1), r2_(r2) {}

  Domain domain_;
  double c1_, c2_, r1_, r2_;
};

/// Lattice of rectangle bumps, one per (q_c, p_c) pair.
std::vector<TestFunction> bump_lattice(const std::vector<double>& q_centers, const std::vector<double>& p_centers,
                                       double r_q, double r_p);
/// 4 x 3 default: q_c in {-3pi/4, -pi/4, pi/4, 3pi/4}, p_c in {-0.75, -0.5, -0.25}, radii (pi/4, 0.2).
std::vector<TestFunction> default_lattice();

}  // namespace wavekit
