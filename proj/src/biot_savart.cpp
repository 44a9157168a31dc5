#include "tcstab/biot_savart.hpp"

#include <cmath>
#include <cstdlib>

#include "tcstab/errors.hpp"
#include "tcstab/sweep.hpp"

namespace tcstab {

namespace {

double abs_mode(int k) {
  if (k == 0) throw DomainError("the kernel is defined for k != 0");
  return std::abs(static_cast<double>(k));
}

}  // namespace

double kernel(int k, double r, double s) {
  const double a = abs_mode(k);
  const double lr = std::log(r), ls = std::log(s);
  return std::exp(0.5 * (lr + ls)) * (std::exp(-a * std::abs(lr - ls)) - std::exp(-a * (lr + ls))) / (2.0 * a);
}

double kernel_dr(int k, double r, double s) {
  const double a = abs_mode(k);
  const double lr = std::log(r), ls = std::log(s);
  double v = (a - 0.5) * std::exp(-(a + 0.5) * lr + (0.5 - a) * ls);
  if (r <= s) v += (a + 0.5) * std::exp((a - 0.5) * (lr - ls));
  else v += (0.5 - a) * std::exp((a + 0.5) * (ls - lr));
  return v / (2.0 * a);
}

double kernel_ds(int k, double r, double s) { return kernel_dr(k, s, r); }

double kernel_mixed(int k, double r, double s) {
  const double a = abs_mode(k);
  const double lr = std::log(r), ls = std::log(s);
  const double lo = std::min(lr, ls), hi = std::max(lr, ls);
  return (-(a * a - 0.25) * std::exp((a - 0.5) * lo - (a + 0.5) * hi) -
          (a - 0.5) * (a - 0.5) * std::exp(-(a + 0.5) * (lr + ls))) /
         (2.0 * a);
}

Field apply_kernel(const RadialGrid& g, int k, const Field& w) {
  const double a = abs_mode(k);
  const Field gv = (g.r().array().sqrt() * w.array()).matrix();
  const SweepResult sw = volterra_sweep(g, gv, a, a);
  const std::complex<double> total = sw.right(0);
  const Eigen::ArrayXd r = g.r().array();
  Field out = (r.sqrt() / (2.0 * a)).cast<std::complex<double>>() *
              (sw.left.array() + sw.right.array() - (-a * r.log()).exp().cast<std::complex<double>>() * total);
  out(0) = 0.0;
  return out;
}

Field solve_stream(const RadialGrid& g, int k, const Field& w) { return -solve_modal(g, k, w); }

Velocity velocity(const RadialGrid& g, int k, const Field& phi) {
  if (phi.size() != g.size()) throw ShapeError("field size does not match grid");
  const Eigen::ArrayXd r = g.r().array();
  Velocity v;
  v.radial = (std::complex<double>(0.0, -static_cast<double>(k)) * phi.array() / r).matrix();
  v.azimuthal = g.d1() * phi - (phi.array() / (2.0 * r)).matrix();
  return v;
}

Field zero_mode_velocity(const RadialGrid& g, const Field& w0, double* tail_fraction) {
  const Field gv = (g.r().array().sqrt() * w0.array()).matrix();
  const SweepResult sw = volterra_sweep(g, gv, 0.0, 0.0);
  if (tail_fraction) {
    const Eigen::ArrayXd mag = gv.array().abs() * g.weights().array();
    const int first_tail = static_cast<int>(0.9 * g.size());
    const double total = mag.sum();
    *tail_fraction = total > 0.0 ? mag.tail(g.size() - first_tail).sum() / total : 0.0;
  }
  return (-g.r().array().rsqrt().cast<std::complex<double>>() * sw.right.array()).matrix();
}

Eigen::VectorXd apply_q(const RadialGrid& g, const Field& f, double a, double b) {
  if (!(a + b > 0.0)) throw DomainError("Q_{a,b} needs a + b > 0");
  const Field gv = (g.r().array().rsqrt() * f.array().abs()).cast<std::complex<double>>().matrix();
  const SweepResult sw = volterra_sweep(g, gv, a, b);
  return (g.r().array().rsqrt() * (sw.left.array() + sw.right.array()).real()).matrix();
}

}  // namespace tcstab
