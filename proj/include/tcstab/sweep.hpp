#pragma once

#include "tcstab/grid.hpp"

namespace tcstab {

// One-dimensional Volterra sweeps over the node gaps:
//   left_i  = int_{r_0}^{r_i} (s / r_i)^b g(s) ds
//   right_i = int_{r_i}^{r_end} (r_i / s)^a g(s) ds
// g is given at the nodes; the product g dr/dx is interpolated onto the
// panels so that far-field panels of mapped grids stay well scaled. Both
// kernels are bounded by one, so the recurrences never overflow.
struct SweepResult {
  Field left;
  Field right;
};

SweepResult volterra_sweep(const RadialGrid& g, const Field& nodal, double a, double b);

}  // namespace tcstab
