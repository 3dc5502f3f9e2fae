#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wavekit {

/// Raised when an argument lies outside the mathematical domain of an operation
/// (p outside [-1,0], a point outside the fluid, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Physical constants of a steady wave seen in the frame moving with it.
/// The half-period is fixed at pi, so no length scale for it is stored.
struct FlowParameters {
  double d = 1.0;      // mean depth
  double g = 9.8;      // gravity
  double c = 1.0;      // wave speed
  double p0 = -1.0;    // relative mass flux, negative
  double P_atm = 0.0;  // atmospheric pressure
  double Q = 0.0;      // Bernoulli head, |grad psi|^2 + 2g(y+d) on the surface

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

/// Polynomial in p, coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  double operator()(double p) const;
  Polynomial derivative() const;
  /// Antiderivative vanishing at p = 0.
  Polynomial antiderivative() const;
  /// Real roots in [lo, hi], sorted.
  std::vector<double> real_roots_in(double lo, double hi) const;

  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

 private:
  std::vector<double> coeffs_;
};

struct VorticityPiece {
  double lo;
  double hi;
  Polynomial poly;
};

enum class Side { Left, Right };

/// Piecewise-polynomial vorticity function gamma(p) on [-1,0]. Breakpoints
/// between pieces are the (possible) jump points. Immutable once built.
class VorticityFunction {
 public:
  /// gamma == 0.
  VorticityFunction();
  explicit VorticityFunction(std::vector<VorticityPiece> pieces);

  static VorticityFunction zero() { return VorticityFunction(); }
  static VorticityFunction constant(double value);
  /// value `lower` on [-1, p_jump), `upper` on [p_jump, 0].
  static VorticityFunction two_layer(double p_jump, double lower, double upper);

  /// One-sided value; the side only matters at breakpoints.
  double gamma(double p, Side side = Side::Right) const;
  /// Exact integral of gamma from 0 to p (closed form, continuous in p).
  double integral_from_zero(double p) const;
  /// (inf, sup) of gamma over [-1,0], exact over every piece.
  std::pair<double, double> bounds() const;
  /// (inf, sup) of integral_from_zero over [-1,0].
  std::pair<double, double> integral_bounds() const;

  const std::vector<VorticityPiece>& pieces() const { return pieces_; }
  /// Interior breakpoints, increasing.
  std::span<const double> jump_points() const { return jumps_; }

 private:
  std::size_t piece_index(double p, Side side) const;

  std::vector<VorticityPiece> pieces_;
  std::vector<Polynomial> antiderivs_;
  std::vector<double> offset_;  // integral from 0 to piece lo
  std::vector<double> jumps_;
};

/// Gamma-tilde(p) = p0 * int_0^p gamma.
double gamma_tilde(const VorticityFunction& v, const FlowParameters& params, double p);
/// Gamma(p) = 2 d^2 / p0 * int_0^p gamma.
double gamma_cap(const VorticityFunction& v, const FlowParameters& params, double p);
std::pair<double, double> bound_gamma(const VorticityFunction& v);

}  // namespace wavekit
