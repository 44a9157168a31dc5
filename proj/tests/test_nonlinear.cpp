#include <cmath>

#include "doctest.h"
#include "tcstab/biot_savart.hpp"
#include "tcstab/errors.hpp"
#include "tcstab/nonlinear.hpp"
#include "tcstab/random.hpp"

using namespace tcstab;
using cd = std::complex<double>;

namespace {

RadialGrid small_grid(int n = 48) {
  GridSpec s;
  s.N = n;
  s.r_max = 40.0;
  return RadialGrid(s);
}

SpectralState random_state(const RadialGrid& g, int K, std::uint64_t seed, double amp) {
  SpectralState s(K, g.size());
  CounterRng rng(seed, 77);
  BumpFamily fam{2, 0.5, 2.0, 1.5, 5.0, true};
  for (int k = 0; k <= K; ++k) s.at(k) = with_dirichlet(g, Field(amp * random_bumps(g, rng, fam)));
  s.at(0) = s.at(0).real().cast<cd>();
  s.enforce_reality();
  return s;
}

double max_diff(const SpectralState& a, const SpectralState& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.w.size(); ++i) d = std::max(d, (a.w[i] - b.w[i]).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace

TEST_CASE("nonlinear term preserves reality") {
  const RadialGrid g = small_grid();
  const SpectralState s = random_state(g, 4, 1, 1.0);
  const std::vector<Field> rhs = nonlinear_rhs(g, s);
  double scale = 0.0;
  for (const auto& f : rhs) scale = std::max(scale, f.cwiseAbs().maxCoeff());
  REQUIRE(scale > 0.0);
  for (int k = 1; k <= 4; ++k) CHECK((rhs[4 - k] - rhs[4 + k].conjugate()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  CHECK(rhs[4].imag().cwiseAbs().maxCoeff() <= 1e-12 * scale);

  const std::vector<Field> half = nonlinear_rhs(g, s, true);
  for (int k = 0; k <= 4; ++k) CHECK((half[4 + k] - rhs[4 + k]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single conjugate pair drives the zero mode and the second harmonic only") {
  const RadialGrid g = small_grid(64);
  const int K = 3;
  SpectralState s(K, g.size());
  const Eigen::ArrayXd r = g.r().array();
  // Two profiles with different phases, so that phi_1 conj(w_1) is not real.
  s.at(1) = (cd(0.3, 0.8) * ((r - 1.0) * (-(r - 2.0).square()).exp()).cast<cd>() +
             cd(-0.6, 0.2) * ((r - 1.0) * (-0.5 * (r - 4.0).square()).exp()).cast<cd>())
                .matrix();
  s.at(1) = with_dirichlet(g, s.at(1));
  s.enforce_reality();
  const StreamData sd = reconstruct(g, s);
  const std::vector<Field> rhs = nonlinear_rhs(g, s, sd, false);

  // rhs_0 = -2 r^{-1/2} (Im(phi_1 conj(w_1)) / r)'
  const Eigen::VectorXd q = ((sd.phi[K + 1].array() * s.at(1).array().conjugate()).imag() / r).matrix();
  const Eigen::VectorXd expect = -2.0 * (r.rsqrt() * (g.d1() * q).array()).matrix();
  const double scale = expect.cwiseAbs().maxCoeff();
  REQUIRE(scale > 0.0);
  for (int i : {5, 20, 40}) CHECK(std::abs(rhs[K](i) - cd(expect(i), 0.0)) <= 1e-10 * scale);
  CHECK(rhs[K].imag().cwiseAbs().maxCoeff() <= 1e-12 * scale);
  CHECK(rhs[K + 3].cwiseAbs().maxCoeff() == 0.0);
  CHECK(rhs[K - 3].cwiseAbs().maxCoeff() == 0.0);
  CHECK(rhs[K + 2].cwiseAbs().maxCoeff() > 0.0);
  CHECK(rhs[K + 1].cwiseAbs().maxCoeff() == 0.0);  // no zero mode to interact with
}

TEST_CASE("forcing parts add up to the total") {
  const RadialGrid g = small_grid();
  const SpectralState s = random_state(g, 3, 4, 0.5);
  std::vector<ForcingParts> parts;
  const std::vector<Field> rhs = nonlinear_rhs(g, s, reconstruct(g, s), false, &parts);
  for (std::size_t i = 0; i < rhs.size(); ++i) CHECK((parts[i].total() - rhs[i]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("shape errors") {
  const RadialGrid g = small_grid();
  SpectralState s(2, g.size());
  s.w.pop_back();
  CHECK_THROWS_AS(nonlinear_rhs(g, s), ShapeError);
  SpectralState t(2, g.size() + 1);
  CHECK_THROWS_AS(nonlinear_rhs(g, t), ShapeError);
}

TEST_CASE("linear limit of the stepper") {
  const RadialGrid g = small_grid();
  const FlowParams p;
  const int K = 3;
  SpectralState s = random_state(g, K, 2, 1.0);
  SpectralState ref = s;
  const double dt = 0.7;
  ImexStepper st(g, p, K, dt, false);
  for (int n = 0; n < 5; ++n) {
    st.step(s);
    for (int k = 0; k <= K; ++k) ref.at(k) = step_linear(st.op(k), ref.at(k), dt, Field::Zero(g.size()));
    ref.enforce_reality();
  }
  CHECK(max_diff(s, ref) <= 1e-12);
  CHECK(s.t == doctest::Approx(5 * dt));
  CHECK(s.reality_defect() == 0.0);
}

TEST_CASE("stepper is second order in time") {
  const RadialGrid g = small_grid(40);
  FlowParams p;
  p.nu = 1e-2;
  const int K = 2;
  const SpectralState s0 = random_state(g, K, 3, 0.5);
  const double T = 1.0;
  const auto run = [&](int n) {
    SpectralState s = s0;
    ImexStepper st(g, p, K, T / n);
    for (int i = 0; i < n; ++i) st.step(s);
    return s;
  };
  const SpectralState ref = run(640);
  const double e1 = max_diff(run(20), ref), e2 = max_diff(run(40), ref), e3 = max_diff(run(80), ref);
  REQUIRE(std::isfinite(e1));
  REQUIRE(e1 > 1e-12);
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(std::log2(e2 / e3) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("dealiased forcing stays in the retained band") {
  const RadialGrid g = small_grid();
  const int K = 6;
  SpectralState s = random_state(g, K, 5, 1.0);
  ImexStepper st(g, FlowParams{}, K, 0.1, true, true);
  st.step(s);
  for (int k = 5; k <= K; ++k) CHECK(st.last_forcing()[k].cwiseAbs().maxCoeff() == 0.0);
  CHECK(st.last_forcing()[1].cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("seeded initial state") {
  const RadialGrid g = small_grid();
  const SpectralState a = seeded_initial_state(g, 8, 3), b = seeded_initial_state(g, 8, 3);
  CHECK(max_diff(a, b) == 0.0);
  CHECK(a.reality_defect() == 0.0);
  for (int k = 5; k <= 8; ++k) CHECK(a.at(k).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.at(4).cwiseAbs().maxCoeff() > 0.0);
  CHECK(a.at(0).imag().cwiseAbs().maxCoeff() == 0.0);
}
