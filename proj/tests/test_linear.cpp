#include <cmath>

#include "doctest.h"
#include "tcstab/biot_savart.hpp"
#include "tcstab/linear.hpp"
#include "tcstab/random.hpp"

using namespace tcstab;
using cd = std::complex<double>;

namespace {

GridSpec truncated(int n, double r_max = 60.0) {
  GridSpec s;
  s.N = n;
  s.r_max = r_max;
  return s;
}

Field profile(const RadialGrid& g) {
  const Eigen::ArrayXd r = g.r().array();
  return ((r - 1.0) * (-(r - 2.5).square()).exp()).cast<cd>().matrix();
}

Field evolve(const RadialGrid& g, const FlowParams& p, int k, double T, double dt) {
  return evolve_homogeneous(assemble_operator(g, p, k), profile(g), T, dt);
}

}  // namespace

TEST_CASE("zero-mode operator annihilates r^{1/2}") {
  const RadialGrid g(truncated(64, 10.0));
  FlowParams p;
  p.nu = 1.0;
  const LinearOperator op = assemble_operator(g, p, 0);
  const Field h = g.r().array().sqrt().cast<cd>().matrix();
  const Field Th = op.apply(h);
  for (int i = 1; i + 1 < g.size(); ++i) CHECK(std::abs(Th(i)) < 1e-8);
}

TEST_CASE("operator conjugation symmetry") {
  const RadialGrid g(truncated(48));
  const FlowParams p;
  const LinearOperator a = assemble_operator(g, p, 3), b = assemble_operator(g, p, -3);
  CHECK((a.T.conjugate() - b.T).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Crank-Nicolson is second order in time") {
  const RadialGrid g(truncated(64, 20.0));
  FlowParams p;
  p.nu = 1e-2;
  const double T = 2.0;
  const Field ref = evolve(g, p, 1, T, T / 1024);
  std::vector<double> err;
  for (int n : {16, 32, 64}) err.push_back(l2_norm(g, Field(evolve(g, p, 1, T, T / n) - ref)));
  for (std::size_t i = 0; i + 1 < err.size(); ++i)
    CHECK(std::log2(err[i] / err[i + 1]) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("homogeneous evolution keeps the L2 norm nonincreasing") {
  const RadialGrid g(truncated(96));
  const FlowParams p;
  const auto sc = dissipation_scales(p, 2);
  double last = 1e300;
  bool monotone = true;
  evolve_homogeneous(assemble_operator(g, p, 2), profile(g), 20.0 / sc.kappa, 0.05 / sc.kappa,
                     [&](double, const Field& w) {
                       const double n = l2_norm(g, w);
                       monotone = monotone && n <= last * (1.0 + 1e-12);
                       last = n;
                     });
  CHECK(monotone);
  CHECK(last < l2_norm(g, profile(g)));
}

TEST_CASE("step count reaches the final time") {
  CHECK(step_count(1.0, 0.1) == 10);
  CHECK(step_count(1.0, 0.3) == 4);
  CHECK(step_count(0.0, 0.3) == 1);
  int calls = 0;
  double t_last = -1.0;
  const RadialGrid g(truncated(16));
  evolve_homogeneous(assemble_operator(g, FlowParams{}, 1), profile(g), 1.0, 0.3, [&](double t, const Field&) {
    ++calls;
    t_last = t;
  });
  CHECK(calls == 5);
  CHECK(t_last == doctest::Approx(1.0));
}

TEST_CASE("resolvent solve back-substitution") {
  const RadialGrid g(truncated(128));
  const FlowParams p;
  CounterRng rng(2, 2);
  for (int k : {1, 4})
    for (double lambda : {-1.0, 0.0, 0.01, 0.5, 2.0}) {
      const LinearOperator op = assemble_operator(g, p, k);
      const ResolventSolver solver(op, lambda);
      const Field F = random_bumps(g, rng);
      const Field w = solver.solve(F);
      CHECK(solver.residual(w, F) <= 1e-10 * l2_norm(g, F));
      CHECK(std::abs(w(0)) < 1e-14);
      CHECK(std::abs(w(g.size() - 1)) < 1e-14);
    }
}

TEST_CASE("resolvent solve refines consistently") {
  FlowParams p;
  p.nu = 1e-3;
  const RadialGrid a(truncated(256, 20.0)), b(truncated(512, 20.0));
  const auto solve = [&](const RadialGrid& g) {
    return resolvent_solve(assemble_operator(g, p, 1), 0.5, profile(g));
  };
  const Field wa = solve(a), wb = solve(b);
  double diff = 0.0;
  for (int i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(wa(i) - wb(2 * i)));
  CHECK(diff <= 1e-6 * wb.cwiseAbs().maxCoeff());
}

TEST_CASE("forced step matches the homogeneous step without forcing") {
  const RadialGrid g(truncated(48));
  const LinearOperator op = assemble_operator(g, FlowParams{}, 2);
  const Field w = profile(g);
  const CrankNicolson cn(op, 0.3);
  CHECK((cn.step(w) - cn.step(w, Field::Zero(g.size()))).cwiseAbs().maxCoeff() == 0.0);
  CHECK((cn.step(w) - step_linear(op, w, 0.3, Field::Zero(g.size()))).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("decomposition residual vanishes under refinement") {
  const FlowParams p;
  const double kappa = dissipation_scales(p, 1).kappa;
  const auto residual = [&](int n, double dt_scale) {
    const RadialGrid g(truncated(n));
    double worst = 0.0, scale = 0.0;
    evolve_decomposition(g, p, 1, profile(g), 5.0 / kappa, dt_scale / kappa, [&](const DecompositionState& st) {
      const Field rec = (shear_phase(g, p, 1, st.t).array() * st.w1.array()).matrix() + st.w2;
      worst = std::max(worst, l2_norm(g, Field(rec - st.full)));
      scale = std::max(scale, l2_norm(g, st.full));
    });
    return worst / scale;
  };
  const double coarse = residual(96, 0.05), fine = residual(192, 0.025);
  CHECK(fine < 0.25 * coarse);
  CHECK(fine < 0.01);
}

TEST_CASE("zero-mode growth probe") {
  GridSpec s = truncated(96, 300.0);
  const RadialGrid g(s);
  const GrowthProbe probe = zero_mode_growth(g, 1e-4, {0.0, 1.0, 2.0}, 10.0, 1000.0, 8);
  REQUIRE(probe.slopes.size() == 3);
  CHECK(probe.nu_t.front() == doctest::Approx(10.0));
  CHECK(probe.nu_t.back() == doctest::Approx(1000.0));
  // Weighted norms order by beta, and the slopes increase by about 1/2 per unit.
  CHECK(probe.slopes[0] < probe.slopes[1]);
  CHECK(probe.slopes[1] < probe.slopes[2]);
  CHECK(probe.slopes[1] - probe.slopes[0] == doctest::Approx(0.5).epsilon(0.1));
  CHECK(least_squares_slope({0.0, 1.0, 2.0}, {1.0, 3.0, 5.0}) == doctest::Approx(2.0));
}
