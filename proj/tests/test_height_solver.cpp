#include "wavekit/laminar.hpp"
#include "wavekit/newton.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

using namespace wavekit;

namespace {

const VorticityFunction kTwoLayer = VorticityFunction::two_layer(-0.5, 3.0, 0.0);

std::vector<double> nodes(const Grid& g) {
  std::vector<double> p(g.np() + 1);
  for (int j = 0; j <= g.np(); ++j) p[j] = g.p(j);
  return p;
}

HeightField laminar_field(const Grid& g, const VorticityFunction& v, const FlowParameters& params) {
  const auto lf = solve_laminar(v, params, nodes(g));
  return HeightField::from_profile(g, lf.h, lf.Q);
}

double max_diff(const HeightField& a, const HeightField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  return m;
}

// Smooth even perturbation of a base field; bed row untouched.
HeightField perturbed(const HeightField& base, const Grid& g, std::uint64_t seed, double size) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a1 = u(rng), a2 = u(rng), a3 = u(rng);
  HeightField hf = base;
  for (int i = 0; i < g.nq(); ++i)
    for (int j = 1; j <= g.np(); ++j) {
      const double q = g.q(i), p = g.p(j);
      hf(i, j) += size * (1.0 + p) * (a1 * std::cos(q) + a2 * p * std::cos(2.0 * q) + a3 * p * p);
    }
  hf.sigma = 0.01 * u(rng);
  return hf;
}

// max |J delta - central FD| / max |J delta| for one random delta
double jacobian_fd_error(const HeightOperator& op, const HeightField& hf, Symmetry sym, SolveMode mode,
                         std::uint64_t seed) {
  const SystemLayout layout(op.grid(), sym, mode);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd delta(layout.size());
  for (Eigen::Index k = 0; k < delta.size(); ++k) delta[k] = u(rng);
  const double eps = 1e-7;
  HeightField plus = hf, minus = hf;
  op.apply_update(plus, layout, delta, eps);
  op.apply_update(minus, layout, delta, -eps);
  const Eigen::VectorXd fd = (op.system_residual(plus, layout, 0.0) - op.system_residual(minus, layout, 0.0)) / (2.0 * eps);
  const Eigen::VectorXd jd = op.system_jacobian(hf, layout) * delta;
  return (fd - jd).lpNorm<Eigen::Infinity>() / jd.lpNorm<Eigen::Infinity>();
}

}  // namespace

TEST_SUITE("height_solver") {

TEST_CASE("grid construction enforces jump alignment and size rules") {
  CHECK_NOTHROW(Grid(8, 10, kTwoLayer));
  CHECK_THROWS_AS(Grid(8, 7, kTwoLayer), std::invalid_argument);
  CHECK_THROWS_AS(Grid(7, 8, kTwoLayer), std::invalid_argument);
  CHECK_THROWS_AS(Grid(6, 8, kTwoLayer), std::invalid_argument);
  const Grid g(16, 10, kTwoLayer);
  REQUIRE(g.jump_nodes().size() == 1);
  CHECK(g.jump_nodes()[0] == 5);
  CHECK(g.q(8) == 0.0);
  // no p-stencil reaches across the jump node
  for (int m = 0; m < g.np(); ++m)
    for (auto [j, w] : g.half_node_dp(m)) CHECK(((m < 5) ? j <= 5 : j >= 5));
}

TEST_CASE("flat irrotational state has zero residual") {
  FlowParameters params;
  const Grid g(16, 16, VorticityFunction::zero());
  const HeightOperator op(g, VorticityFunction::zero(), params);
  const auto r = op.residual(HeightField::zeros(g, 20.6));
  CHECK(*std::max_element(r.begin(), r.end(), [](double a, double b) { return std::abs(a) < std::abs(b); }) ==
        doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("flat state with Q = 0: uniform surface residual, zero interior") {
  FlowParameters params;
  params.d = 1.5;
  params.p0 = -0.7;
  const Grid g(16, 12, VorticityFunction::zero());
  const HeightOperator op(g, VorticityFunction::zero(), params);
  const auto r = op.residual(HeightField::zeros(g, 0.0));
  const double expect = -1.0 / (2.0 * params.d * params.d) - params.g * params.d / (params.p0 * params.p0);
  for (int i = 0; i < g.nq(); ++i) {
    for (int j = 1; j < g.np(); ++j) CHECK(std::abs(r[i * g.np() + j - 1]) < 1e-13);
    CHECK(r[i * g.np() + g.np() - 1] == doctest::Approx(expect).epsilon(1e-15));
  }
}

TEST_CASE("Jacobian matches central differences") {
  FlowParameters params;
  const Grid g(16, 16, kTwoLayer);
  const HeightOperator op(g, kTwoLayer, params);
  const auto base = laminar_field(g, kTwoLayer, params);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto hf = perturbed(base, g, seed, 0.02);
    CHECK(jacobian_fd_error(op, hf, Symmetry::Full, SolveMode::FixedQ, seed) <= 1e-6);
    CHECK(jacobian_fd_error(op, hf, Symmetry::Even, SolveMode::FixedAmplitude, seed + 10) <= 1e-6);
  }
}

TEST_CASE("linearization at the flat state is the constant-coefficient operator") {
  FlowParameters params;
  params.d = 1.3;
  const Grid g(8, 8, VorticityFunction::zero());
  const HeightOperator op(g, VorticityFunction::zero(), params);
  const SystemLayout layout(g, Symmetry::Full, SolveMode::FixedQ);
  const Eigen::MatrixXd J = Eigen::MatrixXd(op.system_jacobian(HeightField::zeros(g, 0.0), layout));

  // (1/d^2) d_pp with the half-node h_p stencil, plus the 3-point d_qq
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(layout.size(), layout.size());
  const double d2 = params.d * params.d;
  const double dp = g.dp(), dq = g.dq();
  for (int i = 0; i < g.nq(); ++i)
    for (int j = 1; j < g.np(); ++j) {
      const int row = layout.unknown(i, j);
      for (auto [jj, w] : g.half_node_dp(j))
        if (jj > 0) K(row, layout.unknown(i, jj)) += w / (d2 * dp);
      for (auto [jj, w] : g.half_node_dp(j - 1))
        if (jj > 0) K(row, layout.unknown(i, jj)) -= w / (d2 * dp);
      K(row, layout.unknown(g.wrap(i + 1), j)) += 1.0 / (dq * dq);
      K(row, layout.unknown(g.wrap(i - 1), j)) += 1.0 / (dq * dq);
      K(row, row) -= 2.0 / (dq * dq);
    }
  double err = 0.0;
  for (int i = 0; i < g.nq(); ++i)
    for (int j = 1; j < g.np(); ++j) {
      const int row = layout.unknown(i, j);
      err = std::max(err, (J.row(row) - K.row(row)).cwiseAbs().maxCoeff());
    }
  CHECK(err < 1e-10);
}

TEST_CASE("Jacobian maps even perturbations to even residual changes") {
  FlowParameters params;
  const Grid g(16, 8, kTwoLayer);
  const HeightOperator op(g, kTwoLayer, params);
  const auto hf = perturbed(laminar_field(g, kTwoLayer, params), g, 7, 0.02);
  const SystemLayout layout(g, Symmetry::Full, SolveMode::FixedQ);
  const auto J = op.system_jacobian(hf, layout);
  Eigen::VectorXd delta(layout.size());
  for (int i = 0; i < g.nq(); ++i)
    for (int j = 1; j <= g.np(); ++j) delta[layout.unknown(i, j)] = std::cos(g.q(i)) * g.p(j) + std::cos(3.0 * g.q(i));
  const Eigen::VectorXd out = J * delta;
  double defect = 0.0;
  for (int i = 0; i < g.nq(); ++i)
    for (int j = 1; j <= g.np(); ++j)
      defect = std::max(defect, std::abs(out[layout.unknown(i, j)] - out[layout.unknown(g.wrap(-i), j)]));
  CHECK(defect < 1e-9 * out.lpNorm<Eigen::Infinity>());
}

TEST_CASE("Newton from the flat state is a fixed point") {
  FlowParameters params;
  const Grid g(16, 16, VorticityFunction::zero());
  const HeightOperator op(g, VorticityFunction::zero(), params);
  const auto res = newton_solve(op, HeightField::zeros(g, 20.6), SolveMode::FixedQ);
  CHECK(res.report.converged);
  CHECK(res.report.iterations <= 1);
  CHECK(res.field.max_abs() <= 1e-12);
}

TEST_CASE("fixed-Q solve from h = 0 reaches the laminar profile at second order") {
  FlowParameters params;
  const double Q = laminar_Q(solve_lambda(kTwoLayer, params), params);
  std::vector<double> err;
  for (int np : {32, 64, 128}) {
    const Grid g(8, np, kTwoLayer);
    const HeightOperator op(g, kTwoLayer, params);
    const auto res = newton_solve(op, HeightField::zeros(g, Q), SolveMode::FixedQ);
    REQUIRE(res.report.converged);
    CHECK(res.report.residual_inf <= 1e-10);
    err.push_back(max_diff(res.field, laminar_field(g, kTwoLayer, params)));
    CHECK(res.field.evenness_defect() == 0.0);
    CHECK(res.field.bed_defect() == 0.0);
  }
  // err * Np^2 stays bounded
  for (std::size_t k = 1; k < err.size(); ++k) CHECK(err[k] * std::pow(4.0, k) <= 1.05 * err[0]);
  CHECK(err.back() < err.front());
}

TEST_CASE("fixed-amplitude a = 0 returns the laminar state and head") {
  FlowParameters params;
  const Grid g(8, 128, kTwoLayer);
  const HeightOperator op(g, kTwoLayer, params);
  const auto lam = laminar_field(g, kTwoLayer, params);
  const auto res = newton_solve(op, lam, SolveMode::FixedAmplitude, 0.0);
  REQUIRE(res.report.converged);
  CHECK(max_diff(res.field, lam) < 1e-6);
  CHECK(res.field.Q == doctest::Approx(lam.Q).epsilon(1e-7));
  CHECK(std::abs(res.field.sigma) < 1e-12);
  CHECK(std::abs(res.field.surface_mean()) <= 1e-12);
}

TEST_CASE("continuation: [0] is laminar, small steps keep the invariants") {
  FlowParameters params;
  const Grid g(16, 32, VorticityFunction::zero());
  const HeightOperator op(g, VorticityFunction::zero(), params);
  const auto flat = HeightField::zeros(g, 20.6);

  const std::vector<double> s0{0.0};
  const auto c0 = continuation(op, flat, s0);
  REQUIRE(c0.completed());
  REQUIRE(c0.steps.size() == 1);
  CHECK(c0.steps[0].field.max_abs() <= 1e-12);

  const std::vector<double> s1{0.0, 1e-4};
  const auto c1 = continuation(op, flat, s1);
  REQUIRE(c1.completed());
  const auto& hf = c1.steps.back().field;
  CHECK(std::abs(hf.surface_mean()) <= 1e-12);
  CHECK(hf.evenness_defect() == 0.0);
  CHECK(hf.bed_defect() == 0.0);
  CHECK(hf.amplitude(params.d) == doctest::Approx(1e-4).epsilon(1e-8));
  CHECK(hf.min_one_plus_hp(g) > 0.0);
}

TEST_CASE("reversed continuation returns to the laminar state") {
  FlowParameters params;
  const Grid g(16, 32, kTwoLayer);
  const HeightOperator op(g, kTwoLayer, params);
  const std::vector<double> sched{0.0, 5e-4, 1e-3, 5e-4, 0.0};
  const auto c = continuation(op, laminar_field(g, kTwoLayer, params), sched);
  REQUIRE(c.completed());
  REQUIRE(c.steps.size() == sched.size());
  CHECK(max_diff(c.steps.front().field, c.steps.back().field) <= 1e-8);
  CHECK(std::abs(c.steps.front().field.Q - c.steps.back().field.Q) <= 1e-8);
}

TEST_CASE("solved laminar h_pp jumps only at the aligned node") {
  // Gamma is continuous, so h_p is too; gamma's jump shows up as a jump in h_pp
  FlowParameters params;
  const Grid g(8, 256, kTwoLayer);
  const HeightOperator op(g, kTwoLayer, params);
  const auto res = newton_solve(op, laminar_field(g, kTwoLayer, params), SolveMode::FixedAmplitude, 0.0);
  REQUIRE(res.report.converged);
  const int jn = g.jump_nodes()[0];
  const double dp = g.dp();
  std::vector<double> d2(g.np() + 1, 0.0);
  for (int j = 1; j < g.np(); ++j)
    d2[j] = (res.field(0, j + 1) - 2.0 * res.field(0, j) + res.field(0, j - 1)) / (dp * dp);
  const double jump = std::abs(d2[jn + 1] - d2[jn - 1]);
  double variation = 0.0;
  for (int j = 1; j + 1 < g.np(); ++j) {
    if (j + 1 >= jn - 1 && j <= jn + 1) continue;
    variation = std::max(variation, std::abs(d2[j + 1] - d2[j]));
  }
  // left limit 3 lambda^{-3/2}, right limit 0
  const double lam = solve_lambda(kTwoLayer, params);
  CHECK(d2[jn - 1] == doctest::Approx(3.0 * std::pow(lam, -1.5)).epsilon(0.05));
  CHECK(std::abs(d2[jn + 1]) < 0.05 * d2[jn - 1]);
  CHECK(jump > 5.0 * variation);
}

TEST_CASE("degenerate cells are reported") {
  FlowParameters params;
  const Grid g(8, 8, VorticityFunction::zero());
  const HeightOperator op(g, VorticityFunction::zero(), params);
  auto hf = HeightField::zeros(g, 20.6);
  hf(3, 4) = -0.5;  // 1 + h_p < 0 in the cell above
  CHECK_THROWS_AS(op.residual(hf), DegenerateCellError);
  CHECK_THROWS_AS(newton_solve(op, hf, SolveMode::FixedQ), DegenerateCellError);
}

TEST_CASE("iteration cap raises non-convergence with the residual history") {
  FlowParameters params;
  const Grid g(16, 16, kTwoLayer);
  const HeightOperator op(g, kTwoLayer, params);
  NewtonOptions opts;
  opts.max_iter = 1;
  opts.tol = 1e-14;
  try {
    (void)newton_solve(op, HeightField::zeros(g, 20.0), SolveMode::FixedQ, 0.0, opts);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK_FALSE(e.report.converged);
    CHECK(e.report.residual_history.size() >= 2);
  }
}

}  // TEST_SUITE
