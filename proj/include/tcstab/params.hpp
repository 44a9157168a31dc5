#pragma once

#include <Eigen/Dense>

namespace tcstab {

// Physical and weight parameters shared by every module. The base flow is
// U = (A r + B / r) e_theta on the exterior of the unit disk; only B enters
// the perturbation dynamics in the rotating gauge used by the solvers.
struct FlowParams {
  double nu = 1e-4;
  double A = 0.0;
  double B = 1.0;
  double epsilon = 1.0;
  double c_hat = 0.0;  // 0 selects the default max(exp(4 / (2 - epsilon)), 10)
  int mode_cutoff = 16;
  double theta = 10.0;
  bool weight_uses_mu = false;  // use mu_k instead of kappa_k inside the log weight
};

double default_c_hat(double epsilon);

// Fills in the default c_hat and checks ranges; throws DomainError.
FlowParams resolved(FlowParams p);
void validate(const FlowParams& p);

struct DissipationScales {
  double kappa;    // nu^{1/3} |k B|^{2/3}
  double mu;       // max(nu k^2, kappa)
  double viscous;  // nu k^2
};

DissipationScales dissipation_scales(const FlowParams& p, int k);

// Rate that enters the time argument of the weight (kappa_k by default).
double weight_rate(const FlowParams& p, int k);

// Log weight log(c_hat r^2 + rate_k t).
double log_weight(const FlowParams& p, int k, double t, double r);
Eigen::ArrayXd log_weight(const FlowParams& p, int k, double t, const Eigen::ArrayXd& r);

struct LogWeightDerivatives {
  double value;
  double dt;
  double dr;
  double drr;
};

LogWeightDerivatives log_weight_derivatives(const FlowParams& p, int k, double t, double r);

// Ratios |d Lambda / Lambda| against their closed-form bounds.
struct LogWeightBoundCheck {
  double dt_ratio, dt_bound;
  double dr_ratio, dr_bound;
  double drr_ratio, drr_bound;
  bool holds(double rel_tol = 1e-12) const;
};

LogWeightBoundCheck log_weight_bounds(const FlowParams& p, int k, double t, double r);

}  // namespace tcstab
