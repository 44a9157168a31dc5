#pragma once

#include "tcstab/grid.hpp"

namespace tcstab {

// Green's function of d^2 - (k^2 - 1/4)/r^2 on [1, inf) with Dirichlet data,
// up to sign: (d^2 - (k^2 - 1/4)/r^2) K[w] = -w.
double kernel(int k, double r, double s);
double kernel_dr(int k, double r, double s);
double kernel_ds(int k, double r, double s);
// Smooth part of the mixed derivative d_r d_s K (off the diagonal).
double kernel_mixed(int k, double r, double s);

// K[w](r) = int K(r, s) w(s) ds over the grid's radial extent.
Field apply_kernel(const RadialGrid& g, int k, const Field& w);

// Stream function from vorticity through the kernel: phi = -K[w].
inline Field stream_from_kernel(const RadialGrid& g, int k, const Field& w) { return -apply_kernel(g, k, w); }

// Stream function from the collocated boundary-value problem
// (d^2 - (k^2 - 1/4)/r^2) phi = w, phi = 0 at the walls.
Field solve_stream(const RadialGrid& g, int k, const Field& w);

struct Velocity {
  Field radial;
  Field azimuthal;
};

// u^r = -i k phi / r, u^theta = phi' - phi / (2 r).
Velocity velocity(const RadialGrid& g, int k, const Field& phi);

// Zero-mode azimuthal velocity -r^{-1/2} int_r^inf s^{1/2} w0 ds. When
// tail_fraction is given it receives the share of |s^{1/2} w0| carried by
// the outer tenth of the grid, a cheap check that w0 has decayed.
Field zero_mode_velocity(const RadialGrid& g, const Field& w0, double* tail_fraction = nullptr);

// Q_{a,b}[f](r) = int (r s)^{-1/2} min((r/s)^a, (s/r)^b) |f(s)| ds, a + b > 0.
Eigen::VectorXd apply_q(const RadialGrid& g, const Field& f, double a, double b);

}  // namespace tcstab
