#include "wavekit/vorticity.hpp"

#include <doctest.h>

#include <cmath>

using namespace wavekit;

namespace {

const VorticityFunction kTwoLayer = VorticityFunction::two_layer(-0.5, 3.0, 0.0);

// midpoint rule, used as an independent check of the closed-form integrals
double midpoint_integral(const VorticityFunction& v, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += v.gamma(a + (k + 0.5) * h);
  return s * h;
}

}  // namespace

TEST_SUITE("vorticity") {

TEST_CASE("piecewise values and one-sided limits") {
  CHECK(VorticityFunction::zero().gamma(-0.5) == 0.0);
  CHECK(kTwoLayer.gamma(-0.75) == 3.0);
  CHECK(kTwoLayer.gamma(-0.5, Side::Left) == 3.0);
  CHECK(kTwoLayer.gamma(-0.5, Side::Right) == 0.0);
  CHECK(kTwoLayer.gamma(-0.25, Side::Left) == kTwoLayer.gamma(-0.25, Side::Right));
  REQUIRE(kTwoLayer.jump_points().size() == 1);
  CHECK(kTwoLayer.jump_points()[0] == -0.5);
}

TEST_CASE("evaluation outside [-1,0] is a domain error") {
  FlowParameters params;
  CHECK_THROWS_AS(kTwoLayer.gamma(0.1), DomainError);
  CHECK_THROWS_AS(kTwoLayer.gamma(-1.0001), DomainError);
  CHECK_THROWS_AS(gamma_tilde(kTwoLayer, params, -1.5), DomainError);
  CHECK_THROWS_AS(gamma_cap(kTwoLayer, params, 0.5), DomainError);
}

TEST_CASE("gamma-tilde closed forms") {
  FlowParameters params;
  params.p0 = -1.3;
  CHECK(gamma_tilde(VorticityFunction::zero(), params, -0.4) == 0.0);
  const auto c = VorticityFunction::constant(2.5);
  for (double p : {-1.0, -0.6, -0.1, 0.0}) CHECK(gamma_tilde(c, params, p) == doctest::Approx(params.p0 * 2.5 * p).epsilon(1e-15));
  // int_0^{-1} p0 gamma = -p0 A / 2
  CHECK(gamma_tilde(kTwoLayer, params, -1.0) == doctest::Approx(-params.p0 * 3.0 / 2.0).epsilon(1e-15));
  CHECK(gamma_tilde(kTwoLayer, params, 0.0) == 0.0);
  // quadrature oracle
  const double quad = -params.p0 * midpoint_integral(kTwoLayer, -1.0, 0.0, 200000);
  CHECK(gamma_tilde(kTwoLayer, params, -1.0) == doctest::Approx(quad).epsilon(1e-9));
}

TEST_CASE("gamma-cap closed form and scaling against gamma-tilde") {
  FlowParameters params;
  params.d = 1.7;
  params.p0 = -0.8;
  CHECK(gamma_cap(VorticityFunction::zero(), params, -0.3) == 0.0);
  const double expect = -(2.0 * params.d * params.d / params.p0) * 3.0 / 2.0;
  CHECK(gamma_cap(kTwoLayer, params, -1.0) == doctest::Approx(expect).epsilon(1e-15));

  const VorticityFunction cubic({{-1.0, -0.3, Polynomial({1.0, -2.0, 0.5, 4.0})}, {-0.3, 0.0, Polynomial({-1.0, 3.0})}});
  const double scale = params.p0 * params.p0 / (2.0 * params.d * params.d);
  for (int j = 0; j <= 64; ++j) {
    const double p = -1.0 + j / 64.0;
    for (const auto* v : {&kTwoLayer, &cubic})
      CHECK(std::abs(gamma_tilde(*v, params, p) - scale * gamma_cap(*v, params, p)) <= 1e-15);
  }
}

TEST_CASE("integrals are continuous across jumps") {
  FlowParameters params;
  const VorticityFunction v({{-1.0, -0.6, Polynomial({2.0, 1.0})}, {-0.6, -0.2, Polynomial({-4.0})}, {-0.2, 0.0, Polynomial({0.0, 0.0, 7.0})}});
  for (double pj : v.jump_points()) {
    const double e = 1e-12;
    CHECK(std::abs(gamma_tilde(v, params, pj - e) - gamma_tilde(v, params, pj + e)) < 1e-10);
    CHECK(std::abs(gamma_cap(v, params, pj - e) - gamma_cap(v, params, pj + e)) < 1e-10);
  }
}

TEST_CASE("derivative of gamma-tilde is p0 gamma away from jumps") {
  FlowParameters params;
  params.p0 = -2.0;
  const VorticityFunction v({{-1.0, -0.5, Polynomial({1.0, 2.0, -3.0})}, {-0.5, 0.0, Polynomial({0.5, 0.0, 0.0, 6.0})}});
  const double step = 1e-4;
  for (double p : {-0.9, -0.7, -0.3, -0.1}) {
    const double fd = (gamma_tilde(v, params, p + step) - gamma_tilde(v, params, p - step)) / (2.0 * step);
    CHECK(std::abs(fd - params.p0 * v.gamma(p)) < 50.0 * step * step);
  }
}

TEST_CASE("exact bounds over every piece") {
  auto b0 = bound_gamma(VorticityFunction::zero());
  CHECK(b0.first == 0.0);
  CHECK(b0.second == 0.0);
  auto b1 = bound_gamma(kTwoLayer);
  CHECK(b1.first == 0.0);
  CHECK(b1.second == 3.0);
  auto b2 = bound_gamma(VorticityFunction({{-1.0, 0.0, Polynomial({0.0, 1.0})}}));
  CHECK(b2.first == -1.0);
  CHECK(b2.second == 0.0);
  // interior maximum of 1 - 4 (p + 1/2)^2 at p = -1/2
  auto b3 = bound_gamma(VorticityFunction({{-1.0, 0.0, Polynomial({0.0, -4.0, -4.0})}}));
  CHECK(b3.second == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b3.first == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("malformed piece lists are rejected") {
  CHECK_THROWS_AS(VorticityFunction({{-1.0, -0.4, Polynomial({1.0})}, {-0.5, 0.0, Polynomial({1.0})}}), std::invalid_argument);
  CHECK_THROWS_AS(VorticityFunction({{-0.9, 0.0, Polynomial({1.0})}}), std::invalid_argument);
  CHECK_THROWS_AS(VorticityFunction({{-1.0, -0.1, Polynomial({1.0})}}), std::invalid_argument);
}

TEST_CASE("physical constants are validated") {
  FlowParameters p;
  CHECK_NOTHROW(p.validate());
  p.p0 = 0.5;
  CHECK_THROWS_WITH_AS(p.validate(), "physics.p0 must be < 0", std::invalid_argument);
  p = {};
  p.d = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

}  // TEST_SUITE
