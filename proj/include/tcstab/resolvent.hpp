#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcstab/grid.hpp"
#include "tcstab/params.hpp"
#include "tcstab/random.hpp"

namespace tcstab {

// Smooth odd step: rho(0) = 0, rho = 1 for z <= -1, rho = -1 for z >= 1.
double cutoff(double z);

// rho((r - lambda^{-1/2}) / (nu^{1/3} |kB|^{-1/3} lambda^{-1/2})), lambda in (0, 1).
Eigen::VectorXd critical_layer_cutoff(const RadialGrid& g, const FlowParams& p, int k, double lambda);

// {-10, -1, -0.1, 0}, 40 values r^{-2} with r log-spaced over the critical
// radii the grid resolves, and {1, 2, 10}.
std::vector<double> default_lambdas(const RadialGrid& g, int interior = 40);

// One CSV row: the largest ratio over the seeded forcings at one point.
struct ResolventRow {
  std::string sweep;
  double nu = 0, B = 0;
  int k = 0;
  double alpha = 0, epsilon = 0, lambda = 0;
  std::string inequality;
  double ratio = 0;
  int N = 0;
  std::uint64_t seed = 0;
};

struct ResolventReport {
  std::vector<ResolventRow> rows;
  int consistency_violations = 0;  // samples breaking the exact Cauchy-Schwarz chain
  double max_residual = 0.0;       // largest relative residual of the linear solves

  double max_ratio(const std::string& inequality) const;
  double max_ratio(const std::string& inequality, int k, double alpha) const;
};

struct StaticSweepConfig {
  FlowParams params;
  GridSpec grid;
  std::vector<int> modes{1, 2, 4};
  std::vector<double> alphas{0, 1, 2};
  std::vector<double> lambdas;  // empty selects default_lambdas
  int samples = 20;
  std::uint64_t seed = 1;
  double regime_limit = 1e-2;   // keep (1 + |alpha|)^3 nu / |kB| <= limit
  BumpFamily forcing{3, 0.5, 4.0, 1.2, 30.0, true};
};

// Static resolvent inequalities for (T_k - i k B lambda) w = F:
//   weighted-inner : nu ||r^a w'||^2 + mu ||r^{a-1} w||^2
//                    vs |<F, r^{2a} w>| + 1_{(0,1)}(lambda) |<F, r^{2a} rho w>|
//   weighted-l2    : nu^{1/2} mu^{1/2} ||r^a w'|| + mu ||r^{a-1} w|| + |kB| ||r^{a+1}(r^{-2} - lambda) w||
//                    vs ||r^{a+1} F||
//   weighted-dual  : nu ||r^a w||_{H^1_k} + nu^{1/2} mu^{1/2} ||r^{a-1} w|| + |kB| ||r^a (r^{-2} - lambda) w||_{H^-1_k}
//                    vs (1 + |a/k|) ||r^a F||_{H^-1_k}
//   stream-l2      : mu^{1/2} |kB|^{1/2} |k|^{1/2} (||phi' / r^{1-eps}|| + |k| ||phi / r^{2-eps}||) vs ||r^{2+eps} F||
//   stream-dual    : the same with nu^{1/2} in front, vs ||r^{1+eps} F||_{H^-1_k}
ResolventReport static_sweep(const StaticSweepConfig& cfg);

struct SpacetimeSweepConfig {
  FlowParams params;
  GridSpec grid;
  std::vector<int> modes{1, 2, 4};
  std::vector<double> alphas{0, 1, 2};
  int samples = 20;
  std::uint64_t seed = 1;
  double horizon = 100.0;   // T = horizon / kappa_k
  double dt_scale = 0.05;   // dt = dt_scale / kappa_k
  int sample_every = 4;     // steps between norm evaluations
  bool unit_weight = false; // replace the log weight by 1
  double regime_limit = 1e-2;
  BumpFamily forcing{3, 0.5, 4.0, 1.2, 30.0, true};
};

// Time-integrated versions with w* = L w, F* = L F and zero initial data:
//   st-l2, st-dual, st-stream-l2, st-stream-dual (lambda column holds the
//   forcing frequency parameter of the sample with the largest ratio).
ResolventReport spacetime_sweep(const SpacetimeSweepConfig& cfg);

}  // namespace tcstab
