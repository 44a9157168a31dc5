#include <cmath>

#include "doctest.h"
#include "tcstab/resolvent.hpp"

using namespace tcstab;

TEST_CASE("smooth odd cutoff") {
  CHECK(cutoff(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(cutoff(-1.0) == 1.0);
  CHECK(cutoff(-3.0) == 1.0);
  CHECK(cutoff(1.0) == -1.0);
  CHECK(cutoff(7.0) == -1.0);
  for (double z : {0.1, 0.4, 0.77, 0.95}) {
    CHECK(cutoff(-z) == doctest::Approx(-cutoff(z)).epsilon(1e-14));
    CHECK(std::abs(cutoff(z)) < 1.0);
  }
  double last = 2.0;
  for (double z = -1.0; z <= 1.0; z += 0.01) {
    CHECK(cutoff(z) <= last);
    last = cutoff(z);
  }
}

TEST_CASE("critical-layer cutoff vanishes at the critical radius") {
  GridSpec s;
  s.N = 64;
  const RadialGrid g(s);
  const FlowParams p = resolved(FlowParams{});
  const double lambda = 1.0 / 9.0;
  const Eigen::VectorXd rho = critical_layer_cutoff(g, p, 1, lambda);
  CHECK(rho(0) == 1.0);
  CHECK(rho(g.size() - 1) == -1.0);
  const double width = std::cbrt(p.nu) * 3.0;
  for (int i = 0; i < g.size(); ++i) {
    const double z = (g.r()(i) - 3.0) / width;
    CHECK(rho(i) == doctest::Approx(cutoff(z)).epsilon(1e-14));
  }
}

TEST_CASE("default spectral parameters") {
  GridSpec s;
  s.N = 64;
  const RadialGrid g(s);
  const std::vector<double> l = default_lambdas(g);
  CHECK(l.size() == 4 + 40 + 3);
  CHECK(l.front() == -10.0);
  CHECK(l.back() == 10.0);
  int inside = 0;
  for (double v : l) inside += v > 0.0 && v < 1.0;
  CHECK(inside == 40);
}

TEST_CASE("static sweep is consistent and reproducible") {
  StaticSweepConfig cfg;
  cfg.params = resolved(FlowParams{});
  cfg.grid.N = 64;
  cfg.modes = {1};
  cfg.alphas = {0.0, 1.0};
  cfg.samples = 2;
  const ResolventReport a = static_sweep(cfg);
  const ResolventReport b = static_sweep(cfg);
  REQUIRE(!a.rows.empty());
  CHECK(a.consistency_violations == 0);
  CHECK(a.max_residual < 1e-10);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].ratio == b.rows[i].ratio);
  for (const char* ineq : {"weighted-inner", "weighted-l2", "weighted-dual", "stream-l2", "stream-dual"}) {
    const double m = a.max_ratio(ineq);
    CHECK(m > 0.0);
    CHECK(m < 100.0);
  }
  cfg.seed = 2;
  const ResolventReport c = static_sweep(cfg);
  CHECK(c.max_ratio("weighted-l2") != a.max_ratio("weighted-l2"));
}

TEST_CASE("regime filter drops weakly sheared modes") {
  StaticSweepConfig cfg;
  cfg.params = resolved(FlowParams{});
  cfg.params.nu = 1e-2;
  cfg.grid.N = 48;
  cfg.modes = {1};
  cfg.alphas = {2.0};
  cfg.samples = 1;
  for (const auto& row : static_sweep(cfg).rows) CHECK(row.alpha == 0.0);  // 27 nu / |k B| is above the limit
  cfg.params.nu = 2e-2;
  CHECK(static_sweep(cfg).rows.empty());
}
