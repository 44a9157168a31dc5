#pragma once

#include <functional>
#include <vector>

#include "tcstab/grid.hpp"
#include "tcstab/params.hpp"

namespace tcstab {

// Collocated T_k = -nu (d^2 - (k^2 - 1/4)/r^2) + i k S(r), with S = B / r^2
// unless a custom bounded shear profile is supplied. Boundary rows are left
// untouched here; solvers replace them by Dirichlet rows.
struct LinearOperator {
  const RadialGrid* grid = nullptr;
  FlowParams params;
  int k = 0;
  Eigen::VectorXd shear;
  Eigen::MatrixXcd T;

  int size() const { return static_cast<int>(T.rows()); }
  Field apply(const Field& w) const { return T * w; }
};

LinearOperator assemble_operator(const RadialGrid& g, const FlowParams& p, int k);
LinearOperator assemble_operator(const RadialGrid& g, const FlowParams& p, int k, const Eigen::VectorXd& shear);

// Crank-Nicolson for dw/dt + T w = F with Dirichlet walls; the forcing
// passed to step() is the value at the half step.
class CrankNicolson {
 public:
  CrankNicolson(const LinearOperator& op, double dt);

  Field step(const Field& w) const;
  Field step(const Field& w, const Field& forcing_mid) const;
  double dt() const { return dt_; }

 private:
  const RadialGrid* grid_;
  double dt_;
  Eigen::MatrixXcd explicit_part_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

Field step_linear(const LinearOperator& op, const Field& w, double dt, const Field& forcing_mid);

// Uniform steps reaching t_final exactly, with the observer called at t = 0
// and after every step.
using Observer = std::function<void(double t, const Field& w)>;
int step_count(double t_final, double dt_target);
Field evolve_homogeneous(const LinearOperator& op, const Field& w0, double t_final, double dt_target,
                         const Observer& observe = {});

// Solves (T_k - i k B lambda) w = F for several right-hand sides.
class ResolventSolver {
 public:
  ResolventSolver(const LinearOperator& op, double lambda);
  Field solve(const Field& F) const;
  double residual(const Field& w, const Field& F) const;  // ||(T - ikB lambda) w - F|| over interior rows

 private:
  const RadialGrid* grid_;
  Eigen::MatrixXcd A_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

Field resolvent_solve(const LinearOperator& op, double lambda, const Field& F);

// Split of the homogeneous solution into an enhanced-dissipation part
// exp(-i k B t / r^2) w1 and a forced remainder w2:
//   dt w1 - nu (d^2 - (k^2 + theta^2)/r^2) w1 + nu (2 k B t / r^3)^2 w1 = 0
//   dt w2 + T_k w2 = exp(-i k B t / r^2) nu (4 i k B t / r^3 w1' - 6 i k B t / r^4 w1
//                                             + (4 theta^2 + 1) / (4 r^2) w1)
struct DecompositionState {
  double t;
  const Field& full;
  const Field& w1;
  const Field& w2;
};
using DecompositionObserver = std::function<void(const DecompositionState&)>;

void evolve_decomposition(const RadialGrid& g, const FlowParams& p, int k, const Field& w0, double t_final,
                          double dt_target, const DecompositionObserver& observe);

Field shear_phase(const RadialGrid& g, const FlowParams& p, int k, double t);

// Zero-mode growth probe: evolve dt w = nu (d^2 + 1/(4 r^2)) w from a
// non-negative bump in (2, 4) and fit d log ||r^{1+beta} w|| / d log(nu t).
struct GrowthProbe {
  std::vector<double> nu_t;
  std::vector<std::vector<double>> ratio;  // per beta, ||r^{1+beta} w(t)|| / ||w_g||_{L1}
  std::vector<double> betas;
  std::vector<double> slopes;
};

GrowthProbe zero_mode_growth(const RadialGrid& g, double nu, const std::vector<double>& betas, double nu_t_lo,
                             double nu_t_hi, int samples);

Field smooth_bump(const RadialGrid& g, double lo, double hi);

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tcstab
