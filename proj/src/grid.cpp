#include "tcstab/grid.hpp"

#include <cmath>
#include <numbers>

#include "tcstab/errors.hpp"

namespace tcstab {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes and weights on [-1, 1] from the Jacobi matrix.
void gauss_legendre(int q, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(q, q);
  for (int i = 1; i < q; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes = es.eigenvalues();
  weights = 2.0 * es.eigenvectors().row(0).transpose().array().square();
}

}  // namespace

RadialGrid::RadialGrid(const GridSpec& spec) : spec_(spec) {
  const int N = spec.N;
  if (N < 4) throw DomainError("grid needs N >= 4");
  if (spec.kind == GridKind::Truncated && !(spec.r_max > 1.0)) throw DomainError("r_max must exceed 1");
  if (spec.kind == GridKind::Mapped && !(spec.map_scale > 0.0)) throw DomainError("map scale must be positive");

  x_full_.resize(N + 1);
  for (int i = 0; i <= N; ++i) x_full_(i) = std::sin(kPi * (2.0 * i - N) / (2.0 * N));

  Eigen::MatrixXd dx(N + 1, N + 1);
  for (int i = 0; i <= N; ++i) {
    const double ci = (i == 0 || i == N) ? 2.0 : 1.0;
    double row = 0.0;
    for (int j = 0; j <= N; ++j) {
      if (j == i) continue;
      const double cj = (j == 0 || j == N) ? 2.0 : 1.0;
      const double diff = 2.0 * std::sin(kPi * (i + j) / (2.0 * N)) * std::sin(kPi * (i - j) / (2.0 * N));
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      dx(i, j) = ci / cj * sign / diff;
      row += dx(i, j);
    }
    dx(i, i) = -row;
  }

  Eigen::VectorXd cc(N + 1);
  for (int j = 0; j <= N; ++j) {
    const double th = kPi * j / N;
    if (j == 0 || j == N) {
      cc(j) = (N % 2 == 0) ? 1.0 / (N * static_cast<double>(N) - 1.0) : 1.0 / (N * static_cast<double>(N));
      continue;
    }
    double v = 1.0;
    if (N % 2 == 0) {
      for (int m = 1; m < N / 2; ++m) v -= 2.0 * std::cos(2.0 * m * th) / (4.0 * m * m - 1.0);
      v -= std::cos(N * th) / (N * static_cast<double>(N) - 1.0);
    } else {
      for (int m = 1; m <= (N - 1) / 2; ++m) v -= 2.0 * std::cos(2.0 * m * th) / (4.0 * m * m - 1.0);
    }
    cc(j) = 2.0 * v / N;
  }

  bary_full_.resize(N + 1);
  for (int j = 0; j <= N; ++j) bary_full_(j) = ((j % 2 == 0) ? 1.0 : -1.0) * ((j == 0 || j == N) ? 0.5 : 1.0);

  Eigen::VectorXd inv_jac(N + 1);
  const int n = spec.kind == GridKind::Truncated ? N + 1 : N;
  for (int i = 0; i <= N; ++i) inv_jac(i) = (i < n) ? 1.0 / dr_dx(x_full_(i)) : 0.0;

  const Eigen::MatrixXd dr = inv_jac.asDiagonal() * dx;
  const Eigen::MatrixXd drr = dr * dr;
  d1_ = dr.topLeftCorner(n, n);
  d2_ = drr.topLeftCorner(n, n);
  x_ = x_full_.head(n);
  r_.resize(n);
  w_.resize(n);
  jac_.resize(n);
  for (int i = 0; i < n; ++i) {
    r_(i) = r_of_x(x_(i));
    jac_(i) = dr_dx(x_(i));
    w_(i) = cc(i) * jac_(i);
  }
  r_(0) = 1.0;
  if (spec.kind == GridKind::Truncated) r_(n - 1) = spec.r_max;
  boundary_ = spec.kind == GridKind::Truncated ? std::vector<int>{0, n - 1} : std::vector<int>{0};
}

double RadialGrid::r_of_x(double x) const {
  if (spec_.kind == GridKind::Truncated) return 1.0 + 0.5 * (spec_.r_max - 1.0) * (x + 1.0);
  const double u = 1.0 - x;
  return 1.0 + spec_.map_scale * (1.0 + x) / (u * u);
}

double RadialGrid::dr_dx(double x) const {
  if (spec_.kind == GridKind::Truncated) return 0.5 * (spec_.r_max - 1.0);
  const double u = 1.0 - x;
  return spec_.map_scale * (3.0 + x) / (u * u * u);
}

double RadialGrid::x_of_r(double r) const {
  if (spec_.kind == GridKind::Truncated) return 2.0 * (r - 1.0) / (spec_.r_max - 1.0) - 1.0;
  const double q = (r - 1.0) / spec_.map_scale;
  return 2.0 * (q - 1.0) / ((2.0 * q + 1.0) + std::sqrt(8.0 * q + 1.0));
}

const RadialGrid::Panels& RadialGrid::panels() const {
  if (panels_) return *panels_;
  constexpr int q = 16;
  Eigen::VectorXd gx, gw;
  gauss_legendre(q, gx, gw);
  const int n = size();
  const int np = n - 1;
  auto p = std::make_shared<Panels>();
  p->per_panel = q;
  p->s.resize(np * q);
  p->weight_x.resize(np * q);
  p->interp = Eigen::MatrixXd::Zero(np * q, n);
  const int nf = static_cast<int>(x_full_.size());
  for (int i = 0; i < np; ++i) {
    const double a = x_(i), b = x_(i + 1);
    for (int m = 0; m < q; ++m) {
      const int row = i * q + m;
      const double xq = 0.5 * (a + b) + 0.5 * (b - a) * gx(m);
      p->s(row) = r_of_x(xq);
      p->weight_x(row) = 0.5 * (b - a) * gw(m);
      double den = 0.0;
      for (int j = 0; j < nf; ++j) den += bary_full_(j) / (xq - x_full_(j));
      for (int j = 0; j < n; ++j) {
        const double v = bary_full_(j) / (xq - x_full_(j)) / den;
        p->interp(row, j) = std::abs(v) < 1e-200 ? 0.0 : v;
      }
    }
  }
  panels_ = p;
  return *panels_;
}

Eigen::MatrixXd RadialGrid::modal_operator(int k) const {
  const double c = static_cast<double>(k) * k - 0.25;
  // Rows scaled by r^2 to balance the far field of mapped grids.
  Eigen::MatrixXd A = -(r_.array().square().matrix().asDiagonal() * d2_);
  A.diagonal().array() += c;
  for (int b : boundary_) {
    A.row(b).setZero();
    A(b, b) = 1.0;
  }
  return A;
}

const Eigen::PartialPivLU<Eigen::MatrixXd>& RadialGrid::modal_lu(int k) const {
  const int key = k < 0 ? -k : k;
  auto it = modal_lu_.find(key);
  if (it != modal_lu_.end()) return *it->second;
  auto lu = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXd>>(modal_operator(key));
  modal_lu_[key] = lu;
  return *lu;
}

Field with_dirichlet(const RadialGrid& g, Field f) {
  for (int b : g.boundary()) f(b) = 0.0;
  return f;
}

Field solve_modal(const RadialGrid& g, int k, const Field& rhs) {
  if (rhs.size() != g.size()) throw ShapeError("field size does not match grid");
  const Field b = with_dirichlet(g, (rhs.array() * g.r().array().square()).matrix());
  const auto& lu = g.modal_lu(k);
  Field z(g.size());
  z.real() = lu.solve(b.real());
  z.imag() = lu.solve(b.imag());
  return z;
}

double hk1_norm(const RadialGrid& g, const Field& w, int k) {
  if (w.size() != g.size()) throw ShapeError("field size does not match grid");
  const Field dw = g.d1() * w;
  const double c = static_cast<double>(k) * k - 0.25;
  const double s = (g.weights().array() * (dw.array().abs2() + c * w.array().abs2() / g.r().array().square())).sum();
  return std::sqrt(std::max(s, 0.0));
}

double hkm1_norm(const RadialGrid& g, const Field& F, int k) {
  return hk1_norm(g, solve_modal(g, k, F), k);
}

}  // namespace tcstab
