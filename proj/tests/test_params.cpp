#include <cmath>
#include <limits>

#include "doctest.h"
#include "tcstab/errors.hpp"
#include "tcstab/params.hpp"

using namespace tcstab;

TEST_CASE("default log-weight constant") {
  CHECK(default_c_hat(1.0) == doctest::Approx(std::exp(4.0)).epsilon(1e-15));
  CHECK(default_c_hat(1.0) == doctest::Approx(54.598150033144236).epsilon(1e-15));
  CHECK(default_c_hat(0.0) == doctest::Approx(10.0));  // e^2 < 10
  FlowParams p;
  CHECK(resolved(p).c_hat == doctest::Approx(std::exp(4.0)));
  p.c_hat = 3.0;
  CHECK(resolved(p).c_hat == 3.0);
}

TEST_CASE("dissipation scales") {
  FlowParams p;
  p.nu = 1e-4;
  const auto s1 = dissipation_scales(p, 1);
  CHECK(s1.kappa == doctest::Approx(0.046415888336127795).epsilon(1e-14));
  CHECK(s1.mu == doctest::Approx(s1.kappa).epsilon(1e-15));
  CHECK(s1.viscous == doctest::Approx(1e-4));

  // nu k^2 meets kappa_k at k = (|B| / nu)^{1/2} = 100.
  const auto s100 = dissipation_scales(p, 100);
  CHECK(s100.viscous == doctest::Approx(1.0));
  CHECK(s100.kappa == doctest::Approx(0.046415888336127795 * std::pow(100.0, 2.0 / 3.0)));
  CHECK(s100.kappa == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s100.mu == doctest::Approx(1.0));
  const auto s200 = dissipation_scales(p, 200);
  CHECK(s200.mu == doctest::Approx(4.0));
  CHECK(s200.kappa < s200.mu);
}

TEST_CASE("log weight values") {
  FlowParams p;
  p.nu = 1.0;
  p.c_hat = std::exp(1.0);
  const double l1 = log_weight(p, 1, 1.0, 1.0);
  const double l2 = log_weight(p, 2, 1.0, 1.0);
  CHECK(l1 == doctest::Approx(std::log(std::exp(1.0) + 1.0)).epsilon(1e-15));
  CHECK(l1 == doctest::Approx(1.3132616875182228).epsilon(1e-14));
  CHECK(l2 == doctest::Approx(std::log(std::exp(1.0) + std::pow(2.0, 2.0 / 3.0))).epsilon(1e-15));
  CHECK(l2 == doctest::Approx(1.4599357502541501).epsilon(1e-14));
  CHECK(l2 <= l1 * l1);

  Eigen::ArrayXd r(3);
  r << 1.0, 2.0, 5.0;
  const Eigen::ArrayXd v = log_weight(p, 2, 3.0, r);
  for (int i = 0; i < 3; ++i) CHECK(v(i) == doctest::Approx(log_weight(p, 2, 3.0, r(i))).epsilon(1e-15));
}

TEST_CASE("log weight derivatives meet their bounds") {
  FlowParams p;
  p.nu = 1.0;
  p.c_hat = std::exp(2.0);
  const auto d = log_weight_derivatives(p, 1, 0.0, 1.0);
  CHECK(d.dr / d.value == doctest::Approx(1.0).epsilon(1e-14));
  const auto b = log_weight_bounds(p, 1, 0.0, 1.0);
  CHECK(b.dr_ratio == doctest::Approx(b.dr_bound).epsilon(1e-14));
  CHECK(b.holds());

  FlowParams q = resolved(FlowParams{});
  for (int k : {1, 3, 8})
    for (double t : {0.0, 1.0, 1e3, 1e6})
      for (double r : {1.0, 1.7, 30.0, 1e4}) CHECK(log_weight_bounds(q, k, t, r).holds());

  // Centred differences against the closed forms.
  const double h = 1e-5, t = 5.0, r = 3.0;
  const auto c = log_weight_derivatives(q, 2, t, r);
  CHECK(c.value == doctest::Approx(log_weight(q, 2, t, r)));
  CHECK(c.dt == doctest::Approx((log_weight(q, 2, t + h, r) - log_weight(q, 2, t - h, r)) / (2 * h)).epsilon(1e-7));
  CHECK(c.dr == doctest::Approx((log_weight(q, 2, t, r + h) - log_weight(q, 2, t, r - h)) / (2 * h)).epsilon(1e-7));
  CHECK(c.drr == doctest::Approx((log_weight(q, 2, t, r + h) - 2 * c.value + log_weight(q, 2, t, r - h)) / (h * h))
                     .epsilon(1e-4));
}

TEST_CASE("parameter validation") {
  FlowParams p;
  p.nu = 0.0;
  CHECK_THROWS_AS(resolved(p), DomainError);
  p = FlowParams{};
  p.B = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(resolved(p), DomainError);
  p = FlowParams{};
  p.c_hat = 2.0;
  CHECK_THROWS_AS(resolved(p), DomainError);
  p = FlowParams{};
  p.epsilon = 2.0;
  CHECK_THROWS_AS(resolved(p), DomainError);
  p = FlowParams{};
  p.mode_cutoff = 0;
  CHECK_THROWS_AS(resolved(p), DomainError);
}
