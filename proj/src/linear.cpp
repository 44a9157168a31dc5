#include "tcstab/linear.hpp"

#include <cmath>

#include "tcstab/errors.hpp"

namespace tcstab {

namespace {

using cd = std::complex<double>;

void dirichlet_rows(const RadialGrid& g, Eigen::MatrixXcd& A) {
  for (int b : g.boundary()) {
    A.row(b).setZero();
    A(b, b) = 1.0;
  }
}

}  // namespace

LinearOperator assemble_operator(const RadialGrid& g, const FlowParams& p, int k) {
  return assemble_operator(g, p, k, (p.B / g.r().array().square()).matrix());
}

LinearOperator assemble_operator(const RadialGrid& g, const FlowParams& p, int k, const Eigen::VectorXd& shear) {
  if (!(p.nu > 0.0)) throw DomainError("nu must be positive");
  if (shear.size() != g.size()) throw ShapeError("shear profile size does not match grid");
  LinearOperator op;
  op.grid = &g;
  op.params = p;
  op.k = k;
  op.shear = shear;
  const double c = static_cast<double>(k) * k - 0.25;
  op.T = (-p.nu * g.d2()).cast<cd>();
  op.T.diagonal().array() += (p.nu * c / g.r().array().square()).cast<cd>() + cd(0.0, k) * shear.array().cast<cd>();
  return op;
}

CrankNicolson::CrankNicolson(const LinearOperator& op, double dt) : grid_(op.grid), dt_(dt) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  const int n = op.size();
  Eigen::MatrixXcd implicit_part = Eigen::MatrixXcd::Identity(n, n) + 0.5 * dt * op.T;
  explicit_part_ = Eigen::MatrixXcd::Identity(n, n) - 0.5 * dt * op.T;
  dirichlet_rows(*grid_, implicit_part);
  for (int b : grid_->boundary()) explicit_part_.row(b).setZero();
  lu_.compute(implicit_part);
}

Field CrankNicolson::step(const Field& w) const { return lu_.solve(explicit_part_ * w); }

Field CrankNicolson::step(const Field& w, const Field& forcing_mid) const {
  Field rhs = explicit_part_ * w + dt_ * forcing_mid;
  for (int b : grid_->boundary()) rhs(b) = 0.0;
  return lu_.solve(rhs);
}

Field step_linear(const LinearOperator& op, const Field& w, double dt, const Field& forcing_mid) {
  if (w.size() != op.size() || forcing_mid.size() != op.size()) throw ShapeError("field size does not match operator");
  return CrankNicolson(op, dt).step(w, forcing_mid);
}

int step_count(double t_final, double dt_target) {
  if (!(t_final >= 0.0) || !(dt_target > 0.0)) throw DomainError("need t_final >= 0 and dt > 0");
  return std::max(1, static_cast<int>(std::ceil(t_final / dt_target - 1e-9)));
}

Field evolve_homogeneous(const LinearOperator& op, const Field& w0, double t_final, double dt_target,
                         const Observer& observe) {
  if (w0.size() != op.size()) throw ShapeError("field size does not match operator");
  const int n = step_count(t_final, dt_target);
  const double dt = t_final / n;
  const CrankNicolson cn(op, dt);
  Field w = with_dirichlet(*op.grid, w0);
  if (observe) observe(0.0, w);
  for (int i = 1; i <= n; ++i) {
    w = cn.step(w);
    if (observe) observe(i * dt, w);
  }
  return w;
}

ResolventSolver::ResolventSolver(const LinearOperator& op, double lambda) : grid_(op.grid), A_(op.T) {
  A_.diagonal().array() -= cd(0.0, op.k * op.params.B * lambda);
  Eigen::MatrixXcd M = A_;
  dirichlet_rows(*grid_, M);
  lu_.compute(M);
}

Field ResolventSolver::solve(const Field& F) const {
  if (F.size() != A_.rows()) throw ShapeError("forcing size does not match operator");
  return lu_.solve(with_dirichlet(*grid_, F));
}

double ResolventSolver::residual(const Field& w, const Field& F) const {
  return with_dirichlet(*grid_, A_ * w - F).norm();
}

Field resolvent_solve(const LinearOperator& op, double lambda, const Field& F) {
  return ResolventSolver(op, lambda).solve(F);
}

Field shear_phase(const RadialGrid& g, const FlowParams& p, int k, double t) {
  const Eigen::ArrayXd ph = -k * p.B * t / g.r().array().square();
  Field e(g.size());
  e.real() = ph.cos().matrix();
  e.imag() = ph.sin().matrix();
  return e;
}

void evolve_decomposition(const RadialGrid& g, const FlowParams& p, int k, const Field& w0, double t_final,
                          double dt_target, const DecompositionObserver& observe) {
  const int n = step_count(t_final, dt_target);
  const double dt = t_final / n;
  const LinearOperator op = assemble_operator(g, p, k);
  const CrankNicolson cn(op, dt);
  const Eigen::ArrayXd r = g.r().array();
  const int m = g.size();

  // w1 has real coefficients, so its real and imaginary parts are stepped
  // with one real factorization per step (the potential depends on time).
  Eigen::MatrixXd base = -p.nu * g.d2();
  base.diagonal().array() += p.nu * (static_cast<double>(k) * k + p.theta * p.theta) / r.square();
  const Eigen::ArrayXd growth = p.nu * (2.0 * k * p.B / r.cube()).square();

  auto w2_forcing = [&](double t, const Field& w1) -> Field {
    const Field dw1 = g.d1() * w1;
    const double kbt = k * p.B * t;
    Field f = p.nu * (cd(0.0, 4.0 * kbt) * dw1.array() / r.cube().cast<cd>() -
                      cd(0.0, 6.0 * kbt) * w1.array() / r.pow(4).cast<cd>() +
                      ((4.0 * p.theta * p.theta + 1.0) / (4.0 * r.square())).cast<cd>() * w1.array())
                         .matrix();
    return (shear_phase(g, p, k, t).array() * f.array()).matrix();
  };

  Field full = with_dirichlet(g, w0);
  Field w1 = full;
  Field w2 = Field::Zero(m);
  if (observe) observe({0.0, full, w1, w2});
  Field f_old = w2_forcing(0.0, w1);
  for (int i = 1; i <= n; ++i) {
    const double tm = (i - 0.5) * dt;
    Eigen::MatrixXd Aim = Eigen::MatrixXd::Identity(m, m) + 0.5 * dt * base;
    Aim.diagonal().array() += 0.5 * dt * growth * tm * tm;
    Eigen::MatrixXd Aex = Eigen::MatrixXd::Identity(m, m) - 0.5 * dt * base;
    Aex.diagonal().array() -= 0.5 * dt * growth * tm * tm;
    for (int b : g.boundary()) {
      Aim.row(b).setZero();
      Aim(b, b) = 1.0;
      Aex.row(b).setZero();
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(Aim);
    Field next(m);
    next.real() = lu.solve(Aex * w1.real());
    next.imag() = lu.solve(Aex * w1.imag());
    w1 = next;
    const Field f_new = w2_forcing(i * dt, w1);
    w2 = cn.step(w2, 0.5 * (f_old + f_new));
    f_old = f_new;
    full = cn.step(full);
    if (observe) observe({i * dt, full, w1, w2});
  }
}

Field smooth_bump(const RadialGrid& g, double lo, double hi) {
  Field f = Field::Zero(g.size());
  for (int i = 0; i < g.size(); ++i) {
    const double z = (2.0 * g.r()(i) - (lo + hi)) / (hi - lo);
    if (std::abs(z) < 1.0) f(i) = std::exp(1.0 - 1.0 / (1.0 - z * z));
  }
  return f;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  if (n < 2 || y.size() != x.size()) throw DomainError("slope fit needs at least two matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

GrowthProbe zero_mode_growth(const RadialGrid& g, double nu, const std::vector<double>& betas, double nu_t_lo,
                             double nu_t_hi, int samples) {
  if (!(nu_t_lo > 0.0 && nu_t_hi > nu_t_lo) || samples < 2) throw DomainError("bad sampling window");
  FlowParams p;
  p.nu = nu;
  p.B = 0.0;
  const LinearOperator op = assemble_operator(g, p, 0);
  const Field wg = smooth_bump(g, 2.0, 4.0);
  const double mass = l1_norm(g, wg);

  // Step through a geometric schedule: a start-up ramp of small steps, then
  // the log-spaced sample times, each gap split into steps of about 1% of t.
  std::vector<double> marks;
  for (double s = 1e-4; s < nu_t_lo; s *= 1.5) marks.push_back(s / nu);
  const std::size_t first_sample = marks.size();
  for (int j = 0; j < samples; ++j)
    marks.push_back(nu_t_lo * std::pow(nu_t_hi / nu_t_lo, j / (samples - 1.0)) / nu);

  GrowthProbe out;
  out.betas = betas;
  out.ratio.assign(betas.size(), {});
  Field w = with_dirichlet(g, wg);
  double t = 0.0;
  for (std::size_t m = 0; m < marks.size(); ++m) {
    const double gap = marks[m] - t;
    const int steps = std::max(2, static_cast<int>(std::ceil(gap / (0.01 * marks[m]))));
    const CrankNicolson cn(op, gap / steps);
    for (int s = 0; s < steps; ++s) w = cn.step(w);
    t = marks[m];
    if (m < first_sample) continue;
    out.nu_t.push_back(nu * t);
    for (std::size_t b = 0; b < betas.size(); ++b)
      out.ratio[b].push_back(weighted_l2_norm(g, w, 1.0 + betas[b]) / mass);
  }
  std::vector<double> lx;
  for (double v : out.nu_t) lx.push_back(std::log(v));
  for (std::size_t b = 0; b < betas.size(); ++b) {
    std::vector<double> ly;
    for (double v : out.ratio[b]) ly.push_back(std::log(v));
    out.slopes.push_back(least_squares_slope(lx, ly));
  }
  return out;
}

}  // namespace tcstab
