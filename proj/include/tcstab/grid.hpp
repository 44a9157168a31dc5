#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace tcstab {

using Field = Eigen::VectorXcd;

enum class GridKind { Truncated, Mapped };

// Truncated: Chebyshev-Lobatto nodes on [1, r_max] with a wall at r_max.
// Mapped: r = 1 + L (1 + x) / (1 - x)^2 sends the Lobatto node x = 1 to
// infinity; that node is dropped and every field is taken to vanish there.
struct GridSpec {
  GridKind kind = GridKind::Truncated;
  int N = 256;
  double r_max = 60.0;
  double map_scale = 4.0;
};

class RadialGrid {
 public:
  explicit RadialGrid(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  int size() const { return static_cast<int>(r_.size()); }
  bool has_outer_wall() const { return spec_.kind == GridKind::Truncated; }

  const Eigen::VectorXd& r() const { return r_; }
  const Eigen::VectorXd& x() const { return x_; }
  const Eigen::VectorXd& weights() const { return w_; }
  const Eigen::VectorXd& jacobian() const { return jac_; }  // dr/dx at the nodes
  const Eigen::MatrixXd& d1() const { return d1_; }
  const Eigen::MatrixXd& d2() const { return d2_; }
  const std::vector<int>& boundary() const { return boundary_; }
  bool is_boundary(int i) const { return i == 0 || (has_outer_wall() && i == size() - 1); }

  double r_of_x(double x) const;
  double dr_dx(double x) const;
  double x_of_r(double r) const;

  // Barycentric evaluation of the grid interpolant at a point x in [-1, 1].
  template <typename Vec>
  typename Vec::Scalar interpolate_x(const Vec& f, double xq) const;

  // Gauss-Legendre points on each gap between consecutive nodes, used by the
  // Volterra sweeps. Cached on first use.
  struct Panels {
    int per_panel;
    Eigen::VectorXd s;         // radii of panel points, panel-major
    Eigen::VectorXd weight_x;  // quadrature weights in the computational variable
    Eigen::MatrixXd interp;    // panel values = interp * nodal values
  };
  const Panels& panels() const;

  // LU of the Dirichlet modal operator -d^2 + (k^2 - 1/4)/r^2 (boundary rows
  // replaced by identity rows). Cached per |k|.
  const Eigen::PartialPivLU<Eigen::MatrixXd>& modal_lu(int k) const;
  Eigen::MatrixXd modal_operator(int k) const;

 private:
  GridSpec spec_;
  Eigen::VectorXd x_, r_, w_, jac_;
  Eigen::VectorXd x_full_, bary_full_;
  Eigen::MatrixXd d1_, d2_;
  std::vector<int> boundary_;
  mutable std::shared_ptr<Panels> panels_;
  mutable std::map<int, std::shared_ptr<Eigen::PartialPivLU<Eigen::MatrixXd>>> modal_lu_;
};

// Quadrature and norms. Inner products are <f, g> = int f conj(g) dr.
template <typename D1, typename D2>
std::complex<double> inner(const RadialGrid& g, const Eigen::MatrixBase<D1>& f, const Eigen::MatrixBase<D2>& h) {
  return (g.weights().array().template cast<std::complex<double>>() * f.derived().template cast<std::complex<double>>().array() *
          h.derived().template cast<std::complex<double>>().array().conjugate())
      .sum();
}

template <typename D>
double integrate(const RadialGrid& g, const Eigen::MatrixBase<D>& f) {
  return (g.weights().array() * f.derived().array()).sum();
}

template <typename D>
double l2_norm(const RadialGrid& g, const Eigen::MatrixBase<D>& f) {
  return std::sqrt((g.weights().array() * f.derived().array().abs2()).sum());
}

// || r^alpha f ||
template <typename D>
double weighted_l2_norm(const RadialGrid& g, const Eigen::MatrixBase<D>& f, double alpha) {
  return std::sqrt((g.weights().array() * g.r().array().pow(2.0 * alpha) * f.derived().array().abs2()).sum());
}

template <typename D>
double weighted_l2_norm(const RadialGrid& g, const Eigen::MatrixBase<D>& f, const Eigen::ArrayXd& weight) {
  return std::sqrt((g.weights().array() * weight.square() * f.derived().array().abs2()).sum());
}

template <typename D>
double l1_norm(const RadialGrid& g, const Eigen::MatrixBase<D>& f) {
  return (g.weights().array() * f.derived().array().abs()).sum();
}

template <typename D>
double sup_norm(const Eigen::MatrixBase<D>& f) {
  return f.derived().array().abs().maxCoeff();
}

// sqrt(||w'||^2 + (k^2 - 1/4) ||w / r||^2)
double hk1_norm(const RadialGrid& g, const Field& w, int k);

// Dual norm of F over the Dirichlet H^1_k space: ||z||_{H^1_k} where
// (-d^2 + (k^2 - 1/4) / r^2) z = F.
double hkm1_norm(const RadialGrid& g, const Field& F, int k);

Field solve_modal(const RadialGrid& g, int k, const Field& rhs);

// Zero the Dirichlet boundary entries.
Field with_dirichlet(const RadialGrid& g, Field f);

template <typename Vec>
typename Vec::Scalar RadialGrid::interpolate_x(const Vec& f, double xq) const {
  using S = typename Vec::Scalar;
  const int nf = static_cast<int>(x_full_.size());
  S num(0);
  double den = 0.0;
  for (int j = 0; j < nf; ++j) {
    const S fj = j < size() ? f(j) : S(0);
    const double dx = xq - x_full_(j);
    if (dx == 0.0) return fj;
    const double c = bary_full_(j) / dx;
    num += c * fj;
    den += c;
  }
  return num / den;
}

}  // namespace tcstab
