#include "tcstab/sweep.hpp"

#include <cmath>

#include "tcstab/errors.hpp"

namespace tcstab {

SweepResult volterra_sweep(const RadialGrid& g, const Field& nodal, double a, double b) {
  if (nodal.size() != g.size()) throw ShapeError("field size does not match grid");
  const auto& P = g.panels();
  const Field pv = P.interp * (nodal.array() * g.jacobian().array()).matrix();
  const int n = g.size();
  const int q = P.per_panel;
  const auto& r = g.r();
  SweepResult out{Field::Zero(n), Field::Zero(n)};
  for (int i = 0; i + 1 < n; ++i) {
    const double lr = std::log(r(i + 1));
    std::complex<double> acc = 0.0;
    for (int m = 0; m < q; ++m) {
      const int j = i * q + m;
      const double f = b == 0.0 ? 1.0 : std::exp(b * (std::log(P.s(j)) - lr));
      acc += f * P.weight_x(j) * pv(j);
    }
    const double decay = b == 0.0 ? 1.0 : std::exp(b * (std::log(r(i)) - lr));
    out.left(i + 1) = decay * out.left(i) + acc;
  }
  for (int i = n - 2; i >= 0; --i) {
    const double lr = std::log(r(i));
    std::complex<double> acc = 0.0;
    for (int m = 0; m < q; ++m) {
      const int j = i * q + m;
      const double f = a == 0.0 ? 1.0 : std::exp(a * (lr - std::log(P.s(j))));
      acc += f * P.weight_x(j) * pv(j);
    }
    const double decay = a == 0.0 ? 1.0 : std::exp(a * (lr - std::log(r(i + 1))));
    out.right(i) = decay * out.right(i + 1) + acc;
  }
  return out;
}

}  // namespace tcstab
