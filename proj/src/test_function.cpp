#include "wavekit/test_function.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace wavekit {

double bump(double t) {
  if (!(std::abs(t) < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

double bump_prime(double t) {
  if (!(std::abs(t) < 1.0)) return 0.0;
  const double s = 1.0 - t * t;
  return bump(t) * (-2.0 * t / (s * s));
}

TestFunction TestFunction::rectangle(double q_c, double p_c, double r_q, double r_p) {
  if (!(r_q > 0.0 && r_p > 0.0)) throw SupportError("test function: radii must be > 0");
  if (!(r_q < std::numbers::pi)) throw SupportError("test function: q-radius must be < pi (support overlaps its periodic image)");
  if (!(p_c - r_p > -1.0 && p_c + r_p < 0.0)) {
    std::ostringstream os;
    os << "test function: p-support [" << p_c - r_p << ", " << p_c + r_p << "] not strictly inside (-1, 0)";
    throw SupportError(os.str());
  }
  return TestFunction(Domain::Rectangle, q_c, p_c, r_q, r_p);
}

TestFunction TestFunction::fluid(double x_c, double y_c, double r_x, double r_y, const HeightSampler& field,
                                 const FlowParameters& params) {
  if (!(r_x > 0.0 && r_y > 0.0)) throw SupportError("test function: radii must be > 0");
  if (!(r_x < std::numbers::pi)) throw SupportError("test function: x-radius must be < pi");
  if (!(y_c - r_y > -params.d)) throw SupportError("test function: support reaches the bed");
  // surface clearance, sampled finely over the x-support
  const int n = 256;
  for (int k = 0; k <= n; ++k) {
    const double x = x_c - r_x + 2.0 * r_x * k / n;
    const double eta = params.d * field.sample(x, 0.0).h;
    if (!(y_c + r_y < eta)) {
      std::ostringstream os;
      os << "test function: support reaches the surface near x = " << x;
      throw SupportError(os.str());
    }
  }
  return TestFunction(Domain::Fluid, x_c, y_c, r_x, r_y);
}

double TestFunction::offset1(double a) const {
  double off = a - c1_;
  if (domain_ == Domain::Rectangle) {
    const double two_pi = 2.0 * std::numbers::pi;
    off -= two_pi * std::floor((off + std::numbers::pi) / two_pi);
  }
  return off;
}

TestValue TestFunction::eval(double a, double b) const {
  const double t1 = offset1(a) / r1_;
  const double t2 = (b - c2_) / r2_;
  TestValue v;
  const double b1 = bump(t1);
  const double b2 = bump(t2);
  if (b1 == 0.0 || b2 == 0.0) return v;
  v.phi = b1 * b2;
  v.d1 = bump_prime(t1) / r1_ * b2;
  v.d2 = b1 * bump_prime(t2) / r2_;
  return v;
}

PhysicalTestValue TestFunction::pushforward(const FieldSample& s, const FlowParameters& params) const {
  if (domain_ != Domain::Rectangle) throw std::logic_error("test function: pushforward needs a rectangle bump");
  const auto v = eval(s.q, s.p);
  const double one_hp = 1.0 + s.hp;
  PhysicalTestValue out;
  out.phi = v.phi;
  out.phi_x = v.d1 - s.hq / one_hp * v.d2;
  out.phi_y = v.d2 / (params.d * one_hp);
  return out;
}

std::vector<TestFunction> bump_lattice(const std::vector<double>& q_centers, const std::vector<double>& p_centers,
                                       double r_q, double r_p) {
  if (q_centers.empty() || p_centers.empty()) throw std::invalid_argument("test-function lattice is empty");
  std::vector<TestFunction> out;
  for (double pc : p_centers)
    for (double qc : q_centers) out.push_back(TestFunction::rectangle(qc, pc, r_q, r_p));
  return out;
}

std::vector<TestFunction> default_lattice() {
  const double pi = std::numbers::pi;
  return bump_lattice({-0.75 * pi, -0.25 * pi, 0.25 * pi, 0.75 * pi}, {-0.75, -0.5, -0.25}, pi / 4.0, 0.2);
}

}  // namespace wavekit
