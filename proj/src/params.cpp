#include "tcstab/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tcstab/errors.hpp"

namespace tcstab {

double default_c_hat(double epsilon) {
  return std::max(std::exp(4.0 / (2.0 - epsilon)), 10.0);
}

void validate(const FlowParams& p) {
  if (!(p.nu > 0.0) || !std::isfinite(p.nu)) throw DomainError("nu must be positive, got " + std::to_string(p.nu));
  if (!std::isfinite(p.A) || !std::isfinite(p.B)) throw DomainError("A and B must be finite");
  if (!(p.epsilon > 0.0 && p.epsilon < 2.0)) throw DomainError("epsilon must lie in (0, 2)");
  if (!(p.c_hat >= std::exp(1.0))) throw DomainError("c_hat must be at least e");
  if (p.mode_cutoff < 1) throw DomainError("mode cutoff must be at least 1");
  if (!(p.theta >= 0.0)) throw DomainError("theta must be non-negative");
}

FlowParams resolved(FlowParams p) {
  if (p.c_hat == 0.0 && p.epsilon > 0.0 && p.epsilon < 2.0) p.c_hat = default_c_hat(p.epsilon);
  validate(p);
  return p;
}

DissipationScales dissipation_scales(const FlowParams& p, int k) {
  if (!(p.nu > 0.0)) throw DomainError("nu must be positive");
  const double kb = std::abs(static_cast<double>(k) * p.B);
  DissipationScales s;
  s.kappa = std::cbrt(p.nu) * std::pow(kb, 2.0 / 3.0);
  s.viscous = p.nu * static_cast<double>(k) * static_cast<double>(k);
  s.mu = std::max(s.viscous, s.kappa);
  return s;
}

double weight_rate(const FlowParams& p, int k) {
  const auto s = dissipation_scales(p, k);
  return p.weight_uses_mu ? s.mu : s.kappa;
}

double log_weight(const FlowParams& p, int k, double t, double r) {
  return std::log(p.c_hat * r * r + weight_rate(p, k) * t);
}

Eigen::ArrayXd log_weight(const FlowParams& p, int k, double t, const Eigen::ArrayXd& r) {
  return (p.c_hat * r.square() + weight_rate(p, k) * t).log();
}

LogWeightDerivatives log_weight_derivatives(const FlowParams& p, int k, double t, double r) {
  const double rate = weight_rate(p, k);
  const double c = p.c_hat;
  const double x = c * r * r + rate * t;
  return {std::log(x), rate / x, 2.0 * c * r / x,
          (2.0 * c * rate * t - 2.0 * c * c * r * r) / (x * x)};
}

LogWeightBoundCheck log_weight_bounds(const FlowParams& p, int k, double t, double r) {
  const auto d = log_weight_derivatives(p, k, t, r);
  const double logc = std::log(p.c_hat);
  LogWeightBoundCheck b;
  b.dt_ratio = std::abs(d.dt / d.value);
  b.dt_bound = weight_rate(p, k) / (p.c_hat * logc * r * r);
  b.dr_ratio = std::abs(d.dr / d.value);
  b.dr_bound = 2.0 / (r * logc);
  b.drr_ratio = std::abs(d.drr / d.value);
  b.drr_bound = 4.0 / (r * r * logc);
  return b;
}

bool LogWeightBoundCheck::holds(double rel_tol) const {
  return dt_ratio <= dt_bound * (1 + rel_tol) && dr_ratio <= dr_bound * (1 + rel_tol) &&
         drr_ratio <= drr_bound * (1 + rel_tol);
}

}  // namespace tcstab
