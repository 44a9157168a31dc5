#include <cmath>

#include "doctest.h"
#include "tcstab/grid.hpp"
#include "tcstab/random.hpp"
#include "tcstab/sweep.hpp"

using namespace tcstab;

namespace {

GridSpec mapped(int n) {
  GridSpec s;
  s.kind = GridKind::Mapped;
  s.N = n;
  return s;
}

GridSpec truncated(int n, double r_max) {
  GridSpec s;
  s.N = n;
  s.r_max = r_max;
  return s;
}

}  // namespace

TEST_CASE("collocation differentiates low-degree polynomials exactly") {
  const RadialGrid g(truncated(64, 10.0));
  const Eigen::VectorXd r = g.r();
  const Eigen::VectorXd f = r.array().square();
  CHECK((g.d1() * f - 2.0 * r).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((g.d2() * f - Eigen::VectorXd::Constant(g.size(), 2.0)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("nodes are ascending and nested under doubling") {
  for (GridSpec s : {truncated(32, 60.0), mapped(32)}) {
    const RadialGrid a(s);
    s.N *= 2;
    const RadialGrid b(s);
    CHECK(a.r()(0) == doctest::Approx(1.0));
    for (int i = 1; i < a.size(); ++i) CHECK(a.r()(i) > a.r()(i - 1));
    for (int i = 0; i < a.size(); ++i) CHECK(b.r()(2 * i) == doctest::Approx(a.r()(i)).epsilon(1e-13));
  }
  const RadialGrid t(truncated(16, 60.0));
  CHECK(t.size() == 17);
  CHECK(t.r()(16) == doctest::Approx(60.0));
  const RadialGrid m(mapped(16));
  CHECK(m.size() == 16);  // the node at infinity is dropped
}

TEST_CASE("quadrature") {
  const RadialGrid m(mapped(64));
  const Eigen::VectorXd e = (-(m.r().array() - 1.0)).exp();
  CHECK(std::abs(integrate(m, e) - 1.0) < 1e-8);
  CHECK(l2_norm(m, e) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
  const Eigen::VectorXd alg = m.r().array().pow(-3.0);
  CHECK(integrate(m, alg) == doctest::Approx(0.5).epsilon(1e-6));

  const RadialGrid t(truncated(32, 5.0));
  const Eigen::VectorXd cube = t.r().array().cube();
  CHECK(integrate(t, cube) == doctest::Approx((625.0 - 1.0) / 4.0).epsilon(1e-13));
  CHECK(weighted_l2_norm(t, Eigen::VectorXd::Ones(t.size()), 1.0) ==
        doctest::Approx(std::sqrt((125.0 - 1.0) / 3.0)).epsilon(1e-13));
}

TEST_CASE("map and its inverse") {
  const RadialGrid m(mapped(32));
  for (double x : {-1.0, -0.5, 0.0, 0.7, 0.99}) {
    CHECK(m.x_of_r(m.r_of_x(x)) == doctest::Approx(x).epsilon(1e-12));
    const double h = 1e-6;
    CHECK(m.dr_dx(x) == doctest::Approx((m.r_of_x(x + h) - m.r_of_x(x - h)) / (2 * h)).epsilon(1e-6));
  }
  for (int i = 0; i < m.size(); ++i) CHECK(m.jacobian()(i) == doctest::Approx(m.dr_dx(m.x()(i))));
}

TEST_CASE("barycentric interpolation reproduces polynomials") {
  const RadialGrid t(truncated(24, 4.0));
  const Eigen::VectorXd f = t.r().array().pow(3) - 2.0 * t.r().array();
  for (double x : {-0.93, -0.1, 0.333, 0.9}) {
    const double r = t.r_of_x(x);
    CHECK(t.interpolate_x(f, x) == doctest::Approx(r * r * r - 2.0 * r).epsilon(1e-12));
  }
}

TEST_CASE("H^1_k and its dual") {
  const RadialGrid m(mapped(128));
  const Eigen::ArrayXd r = m.r().array();
  // (-d^2 + (3/4) / r^2) (r^{-1/2} - r^{-3/2}) = 3 r^{-7/2}
  const Field F = (3.0 * r.pow(-3.5)).cast<std::complex<double>>().matrix();
  const Field z = (r.pow(-0.5) - r.pow(-1.5)).cast<std::complex<double>>().matrix();
  const Field sol = solve_modal(m, 1, F);
  CHECK(l2_norm(m, Field(sol - z)) < 1e-6 * l2_norm(m, z));
  CHECK(hkm1_norm(m, F, 1) == doctest::Approx(hk1_norm(m, z, 1)).epsilon(1e-6));
  CHECK(hkm1_norm(m, Field(-F), 1) == doctest::Approx(hk1_norm(m, z, 1)).epsilon(1e-6));

  // |<F, w>| <= ||w||_{H^1_k} ||F||_{H^-1_k}
  CounterRng rng(7, 3);
  for (int n = 0; n < 100; ++n) {
    const int k = 1 + n % 4;
    const Field f = random_bumps(m, rng);
    const Field w = with_dirichlet(m, random_bumps(m, rng));
    const double lhs = std::abs(inner(m, f, w));
    CHECK(lhs <= hk1_norm(m, w, k) * hkm1_norm(m, f, k) * (1.0 + 1e-10));
  }
}

TEST_CASE("Volterra sweeps against closed forms") {
  const RadialGrid t(truncated(48, 8.0));
  const Eigen::ArrayXd r = t.r().array();
  const Field one = Field::Ones(t.size());
  const SweepResult s = volterra_sweep(t, one, 2.0, 1.0);
  for (int i = 0; i < t.size(); ++i) {
    const double ri = r(i);
    // int_1^r (s / r) ds and int_r^8 (r / s)^2 ds
    CHECK(s.left(i).real() == doctest::Approx((ri * ri - 1.0) / (2.0 * ri)).epsilon(1e-11));
    CHECK(s.right(i).real() == doctest::Approx(ri * ri * (1.0 / ri - 1.0 / 8.0)).epsilon(1e-11));
  }
}

TEST_CASE("seeded profiles are reproducible") {
  const RadialGrid m(mapped(64));
  CounterRng a(42, 1), b(42, 1), c(43, 1);
  const Field fa = random_bumps(m, a), fb = random_bumps(m, b), fc = random_bumps(m, c);
  CHECK((fa - fb).norm() == 0.0);
  CHECK((fa - fc).norm() > 0.0);
  CHECK(std::abs(fa(0)) < 1e-14);
  CounterRng s1 = CounterRng(5, 2).substream(9), s2 = CounterRng(5, 2).substream(9);
  for (int i = 0; i < 10; ++i) CHECK(s1.next_u64() == s2.next_u64());
  CounterRng u(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK((v >= 0.0 && v < 1.0));
  }
}
