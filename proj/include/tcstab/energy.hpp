#pragma once

#include <vector>

#include "tcstab/grid.hpp"
#include "tcstab/nonlinear.hpp"
#include "tcstab/params.hpp"

namespace tcstab {

// Size of the initial data:
// ||r w0|| + ||u0|| + sum_{k != 0} (||r^{eps+2} w_k L_k(0)|| + ||r^{eps+3} w_k' L_k(0)||)
struct InitialSize {
  double total = 0.0;
  double zero_vorticity = 0.0;
  double zero_velocity = 0.0;
  std::vector<double> modes;  // k = 1..K, one sign
};

InitialSize initial_size(const RadialGrid& g, const FlowParams& p, const SpectralState& s);

// Time-trapezoid integrator over irregular samples.
class TimeSeriesNorm {
 public:
  void add(double t, double sq);  // sq = squared spatial norm at time t
  double l2() const { return std::sqrt(integral_); }
  double integral() const { return integral_; }

 private:
  bool have_ = false;
  double t_ = 0.0, last_ = 0.0, integral_ = 0.0;
};

struct ModeEnergy {
  int k = 0;
  double sup_term = 0.0;         // ||r^{eps+1} w L||_{L^inf_T}
  double dissipation_term = 0.0; // mu^{1/2} ||r^eps w L||_{L^2_T}
  double damping_term = 0.0;     // |kB|^{1/2}|k|^{1/2} (||r^{eps-1} phi' L|| + |k| ||r^{eps-2} phi L||)
  double total = 0.0;
  double log_decay = 0.0;        // sup_t ||r^{1+eps} w_k|| log(c_hat + kappa t) / M(0)
  double embedding_ratio = 0.0;  // |kB|^{1/2}|k| ||r^{eps-3/2} phi L||_{L^2_T L^inf} / total
};

struct EnergyReport {
  double t_final = 0.0;
  double initial = 0.0;  // M(0)
  double zero_mode = 0.0; // E_0
  std::vector<ModeEnergy> modes;  // k = 1..K (each counted for both signs in the total)
  double total = 0.0;    // E_0 + 100 sum_{k != 0} E_k
  double ratio = 0.0;    // total / M(0)
  double log_decay_sup = 0.0;
  double embedding_sup = 0.0;
  double sqrt_t_w0_start = 0.0, sqrt_t_w0_end = 0.0;  // t^{1/2} ||w0|| over the last decade
  double lemma_zero_mode_constant = 0.0;  // fitted C in E_0 <= C M0 + E/2 + C |nu B|^{-1/2} E^2
};

class EnergyAccumulator {
 public:
  EnergyAccumulator(const RadialGrid& g, const FlowParams& p, int K);
  void add(double t, const SpectralState& s, const StreamData& sd);
  EnergyReport report(double initial_size) const;

 private:
  const RadialGrid* g_;
  FlowParams p_;
  int K_;
  double t_last_ = 0.0;
  double zero_sup_vort_ = 0.0, zero_sup_vel_ = 0.0;
  TimeSeriesNorm zero_l2_;
  std::vector<double> sup_, log_decay_raw_;
  std::vector<TimeSeriesNorm> diss_, dphi_, phi_, embed_;
  std::vector<std::pair<double, double>> w0_trace_;
};

// Discrete balance laws of a nonlinear run: the vorticity identity (exact
// for the Crank-Nicolson part) and the velocity energy inequality.
class BalanceTracker {
 public:
  BalanceTracker(const RadialGrid& g, const FlowParams& p, int K);
  void start(const SpectralState& s, const StreamData& sd);
  // Called after each step with the stepper's half-step states.
  void after_step(const ImexStepper& st, const SpectralState& s, const StreamData& sd);

  double vorticity_energy(const SpectralState& s) const;  // ||W||^2 over the plane
  double velocity_energy(const SpectralState& s, const StreamData& sd) const;

  double initial_vorticity() const { return w0_; }
  double initial_velocity() const { return u0_; }
  double identity_residual() const { return identity_residual_; }      // latest |lhs - rhs|
  double identity_rate_max() const { return identity_rate_max_; }      // max |res| / (||W0||^2 max(t, 1))
  double nonlinear_exchange() const { return exchange_; }             // integrated 2 Re<N, w>
  double velocity_excess_max() const { return velocity_excess_max_; } // max (lhs - rhs) / ||U0||^2
  double dissipation_integral() const { return diss_; }

 private:
  const RadialGrid* g_;
  FlowParams p_;
  int K_;
  double t_ = 0.0, w0_ = 0.0, u0_ = 0.0, diss_ = 0.0, exchange_ = 0.0, vort_l2t_ = 0.0;
  double identity_residual_ = 0.0, identity_rate_max_ = 0.0, velocity_excess_max_ = -1e300;
  double last_vort_ = 0.0;
  std::vector<double> last_phi_r2_, last_dphi_r_;
  std::vector<double> phi_r2_int_, dphi_r_int_;
};

}  // namespace tcstab
