#include <cmath>

#include "doctest.h"
#include "tcstab/biot_savart.hpp"
#include "tcstab/energy.hpp"

using namespace tcstab;
using cd = std::complex<double>;

TEST_CASE("time integration of squared norms") {
  TimeSeriesNorm n;
  n.add(0.0, 0.0);
  n.add(1.0, 1.0);
  n.add(3.0, 1.0);
  CHECK(n.integral() == doctest::Approx(2.5));
  CHECK(n.l2() == doctest::Approx(std::sqrt(2.5)));
}

TEST_CASE("initial size of a pure zero mode") {
  GridSpec spec;
  spec.kind = GridKind::Mapped;
  spec.N = 256;
  const RadialGrid g(spec);
  SpectralState s(2, g.size());
  s.at(0) = g.r().array().pow(-2.5).cast<cd>().matrix();
  const InitialSize m = initial_size(g, resolved(FlowParams{}), s);
  // ||r w0||^2 = ||u0||^2 = int r^{-3} dr = 1/2
  CHECK(m.zero_vorticity == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
  CHECK(m.zero_velocity == doctest::Approx(std::sqrt(0.5)).epsilon(1e-5));
  CHECK(m.total == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
  REQUIRE(m.modes.size() == 2);
  CHECK(m.modes[0] == 0.0);
}

TEST_CASE("initial size scales linearly") {
  GridSpec spec;
  spec.N = 64;
  const RadialGrid g(spec);
  const FlowParams p = resolved(FlowParams{});
  SpectralState s = seeded_initial_state(g, 4, 9);
  const double a = initial_size(g, p, s).total;
  for (auto& f : s.w) f *= 3.0;
  CHECK(initial_size(g, p, s).total == doctest::Approx(3.0 * a).epsilon(1e-14));
}

TEST_CASE("discrete balance laws of a nonlinear run") {
  GridSpec spec;
  spec.N = 48;
  spec.r_max = 40.0;
  const RadialGrid g(spec);
  FlowParams p = resolved(FlowParams{});
  p.nu = 1e-3;
  const int K = 4;
  SpectralState s = seeded_initial_state(g, K, 2);
  for (auto& f : s.w) f *= 0.05;
  const double kappa = dissipation_scales(p, K).kappa;
  ImexStepper st(g, p, K, 0.1 / kappa);
  EnergyAccumulator acc(g, p, K);
  BalanceTracker bal(g, p, K);
  StreamData sd = reconstruct(g, s);
  acc.add(0.0, s, sd);
  bal.start(s, sd);
  const double e0 = bal.vorticity_energy(s);
  for (int i = 0; i < 60; ++i) {
    st.step(s);
    sd = reconstruct(g, s);
    acc.add(s.t, s, sd);
    bal.after_step(st, s, sd);
  }
  // Collocation does not conserve the nonlinear exchange exactly; the
  // remaining balance is exact algebra of the Crank-Nicolson step.
  CHECK(std::abs(bal.identity_residual() - std::abs(bal.nonlinear_exchange())) <= 1e-12 * bal.initial_vorticity());
  CHECK(std::abs(bal.vorticity_energy(s) + bal.dissipation_integral() - bal.nonlinear_exchange() -
                 bal.initial_vorticity()) <= 1e-12 * bal.initial_vorticity());
  CHECK(bal.velocity_excess_max() < 1e-8);
  CHECK(bal.vorticity_energy(s) < e0);
  CHECK(bal.dissipation_integral() > 0.0);

  const double m0 = initial_size(g, p, seeded_initial_state(g, K, 2)).total * 0.05;
  const EnergyReport rep = acc.report(m0);
  CHECK(rep.t_final == doctest::Approx(s.t));
  REQUIRE(rep.modes.size() == static_cast<std::size_t>(K));
  CHECK(rep.ratio == doctest::Approx(rep.total / m0));
  CHECK(std::isfinite(rep.ratio));
  CHECK(rep.ratio > 0.0);
  for (const auto& e : rep.modes) CHECK(e.total == doctest::Approx(e.sup_term + e.dissipation_term + e.damping_term));
}
