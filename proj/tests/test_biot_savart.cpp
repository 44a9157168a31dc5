#include <cmath>

#include "doctest.h"
#include "tcstab/biot_savart.hpp"
#include "tcstab/errors.hpp"
#include "tcstab/random.hpp"

using namespace tcstab;
using cd = std::complex<double>;

namespace {

GridSpec mapped(int n) {
  GridSpec s;
  s.kind = GridKind::Mapped;
  s.N = n;
  return s;
}

// Green's function of d^2 - (k^2 - 1/4)/r^2 with Dirichlet data at 1 and decay.
double green(int k, double r, double s) {
  const double lo = std::min(r, s), hi = std::max(r, s);
  return std::sqrt(r * s) * (std::pow(lo, k) - std::pow(lo, -k)) * std::pow(hi, -k) / (2.0 * k);
}

Field real_field(const Eigen::ArrayXd& a) { return a.cast<cd>().matrix(); }

}  // namespace

TEST_CASE("kernel closed form") {
  CHECK(kernel(1, 2.0, 2.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(kernel(-1, 2.0, 2.0) == doctest::Approx(0.75).epsilon(1e-15));
  for (int k : {1, 2, 5})
    for (double r : {1.0, 1.5, 3.0, 40.0})
      for (double s : {1.2, 2.0, 17.0}) {
        CHECK(kernel(k, r, s) == doctest::Approx(green(k, r, s)).epsilon(1e-12));
        CHECK(kernel(k, r, s) == doctest::Approx(kernel(k, s, r)).epsilon(1e-14));
      }
  CHECK(kernel(3, 1.0, 4.0) == 0.0);
  CHECK_THROWS_AS(kernel(0, 2.0, 3.0), DomainError);
}

TEST_CASE("kernel derivatives against finite differences") {
  const double h = 1e-5;
  for (int k : {1, 3})
    for (auto [r, s] : {std::pair{1.5, 3.0}, std::pair{4.0, 2.0}, std::pair{10.0, 1.1}}) {
      const double fd_r = (kernel(k, r + h, s) - kernel(k, r - h, s)) / (2 * h);
      const double fd_s = (kernel(k, r, s + h) - kernel(k, r, s - h)) / (2 * h);
      CHECK(kernel_dr(k, r, s) == doctest::Approx(fd_r).epsilon(1e-8));
      CHECK(kernel_ds(k, r, s) == doctest::Approx(fd_s).epsilon(1e-8));
      const double fd_rs = (kernel_dr(k, r, s + h) - kernel_dr(k, r, s - h)) / (2 * h);
      CHECK(kernel_mixed(k, r, s) == doctest::Approx(fd_rs).epsilon(1e-7));
    }
}

TEST_CASE("manufactured stream function") {
  const RadialGrid g(mapped(256));
  const Eigen::ArrayXd r = g.r().array();
  const Field w = real_field(-3.0 * r.pow(-3.5));
  const Field phi = real_field(r.pow(-0.5) - r.pow(-1.5));
  const Field a = solve_stream(g, 1, w);
  const Field b = stream_from_kernel(g, 1, w);
  CHECK((a - phi).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((b - phi).cwiseAbs().maxCoeff() < 1e-6);

  const Velocity v = velocity(g, 1, phi);
  const Field ut = real_field(-r.pow(-1.5) + 2.0 * r.pow(-2.5));
  CHECK((v.azimuthal - ut).cwiseAbs().maxCoeff() < 1e-6);
  const Field ur = (cd(0, -1) * phi.array() / r.cast<cd>()).matrix();
  CHECK((v.radial - ur).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("kernel application agrees with the boundary-value solve") {
  const RadialGrid g(mapped(512));
  CounterRng rng(11, 4);
  const Eigen::ArrayXd inv_r = g.r().array().inverse();
  for (int k : {1, 2, 6}) {
    const Field w = random_bumps(g, rng);
    const Field a = solve_stream(g, k, w);
    const Field b = stream_from_kernel(g, k, w);
    const double rel = weighted_l2_norm(g, Field(a - b), inv_r) / weighted_l2_norm(g, a, inv_r);
    CHECK(rel < 1e-8);
  }
}

TEST_CASE("self-convergence of the kernel application") {
  const auto apply = [](int n) {
    const RadialGrid g(mapped(n));
    const Eigen::ArrayXd r = g.r().array();
    const Field w = real_field((r - 1.0) * (-(r - 1.0)).exp());
    const Field phi = stream_from_kernel(g, 1, w);
    return std::pair{g.r(), phi};
  };
  const auto [r1, p1] = apply(96);
  const auto [r4, p4] = apply(384);
  for (int i = 0; i < r1.size(); i += 7) {
    REQUIRE(r4(4 * i) == doctest::Approx(r1(i)));
    CHECK(std::abs(p1(i) - p4(4 * i)) < 1e-6);
  }
}

TEST_CASE("zero-mode velocity") {
  const RadialGrid g(mapped(512));
  const Eigen::ArrayXd r = g.r().array();
  double tail = 1.0;
  const Field u = zero_mode_velocity(g, real_field(r.pow(-2.5)), &tail);
  const Field expect = real_field(-r.pow(-1.5));
  CHECK((u - expect).cwiseAbs().maxCoeff() < 1e-6);

  // w0 = r^{-1/2} (r^{1/2} u)' recovers the vorticity.
  CounterRng rng(3, 5);
  for (int n = 0; n < 5; ++n) {
    const Field w0 = random_bumps(g, rng, BumpFamily{3, 0.5, 4.0, 1.2, 8.0, false});
    const Field u0 = zero_mode_velocity(g, w0, &tail);
    const Field s = (r.sqrt().cast<cd>() * u0.array()).matrix();
    const Field back = (r.rsqrt().cast<cd>() * (g.d1() * s).array()).matrix();
    CHECK((back - w0).cwiseAbs().maxCoeff() < 1e-6 * w0.cwiseAbs().maxCoeff());
    CHECK(tail < 1e-8);
  }
}

TEST_CASE("Q operator on a power law") {
  GridSpec s;
  s.N = 256;
  s.r_max = 50.0;
  const RadialGrid g(s);
  const Field f = Field::Ones(g.size());
  const Eigen::VectorXd q = apply_q(g, f, 1.0, 2.0);
  // int_1^r (r s)^{-1/2} (s / r)^2 ds + int_r^R (r s)^{-1/2} (r / s) ds
  for (int i = 0; i < g.size(); i += 17) {
    const double r = g.r()(i);
    const double left = std::pow(r, -2.5) * (std::pow(r, 2.5) - 1.0) / 2.5;
    const double right = 2.0 * std::sqrt(r) * (std::pow(r, -0.5) - std::pow(50.0, -0.5));
    CHECK(q(i) == doctest::Approx(left + right).epsilon(1e-9));
  }
}
