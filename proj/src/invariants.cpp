#include "tcstab/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tcstab/biot_savart.hpp"
#include "tcstab/linear.hpp"
#include "tcstab/nonlinear.hpp"
#include "tcstab/random.hpp"
#include "tcstab/resolvent.hpp"

namespace tcstab {

namespace {

using cd = std::complex<double>;

int count_or(const ScenarioConfig& cfg, int fallback) { return cfg.run.samples > 0 ? cfg.run.samples : fallback; }

std::vector<int> positive_modes(const ScenarioConfig& cfg, std::vector<int> fallback) {
  std::vector<int> out;
  for (int k : cfg.run.modes) out.push_back(std::abs(k));
  if (out.empty()) out = std::move(fallback);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GridSpec mapped_spec(const ScenarioConfig& cfg, int N) {
  GridSpec s = cfg.grid;
  s.kind = GridKind::Mapped;
  s.N = N;
  return s;
}

GridSpec truncated_spec(const ScenarioConfig& cfg, int N) {
  GridSpec s = cfg.grid;
  s.kind = GridKind::Truncated;
  s.N = N;
  return s;
}

Field weighted(const Eigen::ArrayXd& wt, const Field& f) { return (wt.cast<cd>() * f.array()).matrix(); }

double sup_weighted(const Eigen::ArrayXd& wt, const Field& f) { return (wt * f.array().abs()).maxCoeff(); }

double rel_sup_error(const Field& a, const Field& b) { return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff(); }

std::string num(double v) {
  std::string s = format_number(v);
  return s;
}

double relative_change(double a, double b) { return std::abs(b - a) / std::abs(a); }

// |k||K| + r|dK/dr| + rs|K~|/|k| against (rs)^{1/2} min(r/s, s/r)^{|k|}.
double pointwise_constant(const std::vector<int>& modes, int M) {
  double worst = 0.0;
  std::vector<double> rs(M), ss(M + 1);
  for (int i = 0; i < M; ++i) rs[i] = std::pow(1e4, i / (M - 1.0));
  for (int j = 0; j <= M; ++j) ss[j] = std::pow(1e4, j / static_cast<double>(M));
  for (int k : modes) {
    for (double r : rs) {
      for (double s : ss) {
        if (std::abs(r - s) < 1e-12 * r) continue;
        const double lhs = k * std::abs(kernel(k, r, s)) + r * std::abs(kernel_dr(k, r, s)) +
                           r * s * std::abs(kernel_mixed(k, r, s)) / k;
        const double log_rhs = 0.5 * std::log(r * s) - k * std::abs(std::log(r / s));
        if (lhs > 0.0) worst = std::max(worst, std::exp(std::log(lhs) - log_rhs));
      }
    }
  }
  return worst;
}

struct KernelConstants {
  double l2 = 0.0, l1 = 0.0, log_l2 = 0.0, log_l1 = 0.0;
};

KernelConstants weighted_kernel_constants(const RadialGrid& g, const FlowParams& p, const std::vector<int>& modes,
                                          int samples, std::uint64_t seed, CsvTable* table) {
  KernelConstants c;
  const double eps = p.epsilon;
  const Eigen::ArrayXd r = g.r().array();
  const CounterRng root(seed, 0xc1);
  for (int k : modes) {
    const double kk = k;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng = root.substream(static_cast<std::uint64_t>(k) * 10000 + s);
      const Field w = random_bumps(g, rng);
      const Field Kw = apply_kernel(g, k, w);
      const Field dKw = g.d1() * Kw;
      for (double a : {-1.0, 0.0, 10.0, 1000.0}) {
        const Eigen::ArrayXd L =
            a < 0.0 ? Eigen::ArrayXd::Ones(g.size()) : Eigen::ArrayXd((p.c_hat * r.square() + a).log());
        const double two = kk * weighted_l2_norm(g, dKw, r.pow(eps - 1.0) * L) +
                           kk * kk * weighted_l2_norm(g, Kw, r.pow(eps - 2.0) * L);
        const double sups = std::sqrt(kk) * sup_weighted(r.pow(eps - 0.5) * L, dKw) +
                            std::pow(kk, 1.5) * sup_weighted(r.pow(eps - 1.5) * L, Kw);
        const double cl2 = (two + sups) / weighted_l2_norm(g, w, r.pow(eps) * L);
        const double cl1 = two / (std::sqrt(kk) * l1_norm(g, weighted(r.pow(eps - 0.5) * L, w)));
        if (a < 0.0) {
          c.l2 = std::max(c.l2, cl2);
          c.l1 = std::max(c.l1, cl1);
        } else {
          c.log_l2 = std::max(c.log_l2, cl2);
          c.log_l1 = std::max(c.log_l1, cl1);
        }
        if (table)
          table->add({std::string("weighted"), static_cast<std::int64_t>(g.spec().N), static_cast<std::int64_t>(k),
                      static_cast<std::int64_t>(s), a, cl2, cl1});
      }
    }
  }
  return c;
}

}  // namespace

std::vector<Check> biot_savart_checks(const ScenarioConfig& cfg, CsvTable* table) {
  std::vector<Check> out;
  const RadialGrid g(mapped_spec(cfg, cfg.grid.N));
  const Eigen::ArrayXd r = g.r().array();
  const int samples = count_or(cfg, 50);
  const CounterRng root(cfg.seed, 0xb5);
  double worst = 0.0, worst_inverse = 0.0;
  for (int k : positive_modes(cfg, {1, 2, 3, 4, 5, 6, 7, 8})) {
    const double c = k * k - 0.25;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng = root.substream(static_cast<std::uint64_t>(k) * 10000 + s);
      const Field w = random_bumps(g, rng);
      const Field by_kernel = stream_from_kernel(g, k, w);
      const Field by_solve = solve_stream(g, k, w);
      const double err = weighted_l2_norm(g, Field(by_kernel - by_solve), -1.0) / weighted_l2_norm(g, by_solve, -1.0);
      worst = std::max(worst, err);
      // The kernel output inverts the modal operator on the near field.
      const Field back = g.d2() * by_kernel - (c / r.square()).cast<cd>().matrix().cwiseProduct(by_kernel);
      double dev = 0.0;
      for (int i = 1; i < g.size() && r(i) <= 20.0; ++i) dev = std::max(dev, std::abs(back(i) - w(i)));
      worst_inverse = std::max(worst_inverse, dev / w.cwiseAbs().maxCoeff());
      if (table) table->add({static_cast<std::int64_t>(k), static_cast<std::int64_t>(s), err, dev / w.cwiseAbs().maxCoeff()});
    }
  }
  out.push_back(check_le("biot-savart.agreement", worst, 1e-8));
  out.push_back(check_le("biot-savart.inverse", worst_inverse, 1e-6));

  const Field w_m = (-3.0 * r.pow(-3.5)).cast<cd>().matrix();
  const Field phi_m = (r.pow(-0.5) - r.pow(-1.5)).cast<cd>().matrix();
  out.push_back(check_le("biot-savart.manufactured.kernel", rel_sup_error(stream_from_kernel(g, 1, w_m), phi_m), 1e-6));
  out.push_back(check_le("biot-savart.manufactured.solve", rel_sup_error(solve_stream(g, 1, w_m), phi_m), 1e-6));
  const Field u_m = (-r.pow(-1.5) + 2.0 * r.pow(-2.5)).cast<cd>().matrix();
  out.push_back(check_le("biot-savart.manufactured.velocity", rel_sup_error(velocity(g, 1, phi_m).azimuthal, u_m), 1e-6));

  const Field w0 = r.pow(-2.5).cast<cd>().matrix();
  const Field u0 = (-r.pow(-1.5)).cast<cd>().matrix();
  out.push_back(check_le("biot-savart.zero-mode.closed-form", rel_sup_error(zero_mode_velocity(g, w0), u0), 1e-6));

  double worst_trip = 0.0;
  BumpFamily real_family;
  real_family.complex_amplitudes = false;
  for (int s = 0; s < samples; ++s) {
    CounterRng rng = root.substream(900000 + s);
    const Field f = random_bumps(g, rng, real_family);
    const Field u = zero_mode_velocity(g, f);
    const Field back = g.d1() * u + (u.array() / (2.0 * r)).matrix();
    worst_trip = std::max(worst_trip, rel_sup_error(back, f));
  }
  out.push_back(check_le("biot-savart.zero-mode.round-trip", worst_trip, 1e-6));
  return out;
}

std::vector<Check> kernel_bound_checks(const ScenarioConfig& cfg, CsvTable* table) {
  std::vector<Check> out;
  const FlowParams p = resolved(cfg.flow);
  const std::vector<int> modes = positive_modes(cfg, {1, 2, 3, 4, 5, 6, 7, 8});
  const double c1 = pointwise_constant(modes, 200), c2 = pointwise_constant(modes, 400);
  if (table) {
    table->add({std::string("pointwise"), std::int64_t{200}, std::int64_t{0}, std::int64_t{0}, 0.0, c1, 0.0});
    table->add({std::string("pointwise"), std::int64_t{400}, std::int64_t{0}, std::int64_t{0}, 0.0, c2, 0.0});
  }
  out.push_back(check_le("kernel.pointwise", std::max(c1, c2), 4.0));
  out.push_back(check_le("kernel.pointwise.refinement", relative_change(c1, c2), 0.25));

  const int samples = count_or(cfg, 20);
  const int n = std::max(16, cfg.grid.N / 2);
  const RadialGrid coarse(mapped_spec(cfg, n)), fine(mapped_spec(cfg, 2 * n));
  const KernelConstants a = weighted_kernel_constants(coarse, p, modes, samples, cfg.seed, table);
  const KernelConstants b = weighted_kernel_constants(fine, p, modes, samples, cfg.seed, table);
  const std::pair<const char*, double KernelConstants::*> items[] = {
      {"kernel.weighted", &KernelConstants::l2},
      {"kernel.weighted-l1", &KernelConstants::l1},
      {"kernel.log-weighted", &KernelConstants::log_l2},
      {"kernel.log-weighted-l1", &KernelConstants::log_l1}};
  for (const auto& [name, field] : items) {
    out.push_back(check_le(name, std::max(a.*field, b.*field), 50.0));
    out.push_back(check_le(std::string(name) + ".refinement", relative_change(a.*field, b.*field), 0.25));
  }
  return out;
}

std::vector<Check> hardy_checks(const ScenarioConfig& cfg, CsvTable* table) {
  std::vector<Check> out;
  const FlowParams p = resolved(cfg.flow);
  const RadialGrid g(truncated_spec(cfg, cfg.grid.N));
  const Eigen::ArrayXd r = g.r().array();
  const int samples = count_or(cfg, 200);
  std::vector<double> alphas = cfg.run.alphas;
  if (alphas.empty()) alphas = {-2, -1, 0, 0.5, 1, 2, 3};
  const CounterRng root(cfg.seed, 0x4a);
  const int kmax = 4;

  std::vector<double> hardy(alphas.size(), std::numeric_limits<double>::infinity());
  std::vector<double> sup_const(alphas.size(), 0.0);
  double coercive = std::numeric_limits<double>::infinity();  // min lhs / rhs where rhs > 0
  double borderline = std::numeric_limits<double>::infinity(); // min lhs / (nu ||r^a w'||^2) at |a| = |k|
  double identity = 0.0;
  std::vector<LinearOperator> ops;
  for (int k = 1; k <= kmax; ++k) ops.push_back(assemble_operator(g, p, k));
  const double kappa = dissipation_scales(p, 1).kappa;

  for (int s = 0; s < samples; ++s) {
    CounterRng rng = root.substream(static_cast<std::uint64_t>(s));
    const Field w = random_bumps(g, rng);
    const Field dw = g.d1() * w;
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
      const double al = alphas[ai];
      const double a2 = std::pow(weighted_l2_norm(g, dw, al), 2);
      const double b2 = std::pow(weighted_l2_norm(g, w, al - 1.0), 2);
      const double c = (al - 0.5) * (al - 0.5);
      if (c > 0.0) hardy[ai] = std::min(hardy[ai], a2 / (c * b2));
      for (double t : {0.0, 10.0 / kappa, 1000.0 / kappa}) {
        for (int use_log = 0; use_log < 2; ++use_log) {
          const Eigen::ArrayXd A = use_log ? Eigen::ArrayXd(r.pow(al) * log_weight(p, 1, t, r)) : Eigen::ArrayXd(r.pow(al));
          const double low = weighted_l2_norm(g, w, A * r.rsqrt());
          const double high = weighted_l2_norm(g, dw, A * r.sqrt());
          const double sup = sup_weighted(A, w);
          sup_const[ai] = std::max(sup_const[ai], sup * sup / (low * (high + (std::abs(al) + 1.0) * low)));
          if (!use_log && t > 0.0) break;
        }
      }
      for (int k = 1; k <= kmax; ++k) {
        if (std::abs(al) > k) continue;
        const Field Tw = with_dirichlet(g, ops[k - 1].apply(w));
        const double re = inner(g, Tw, weighted(r.pow(2.0 * al), w)).real();
        const double rhs = p.nu * (k * k - al * al) * b2;
        const double cid = k * k - 0.25 - 2.0 * al * al + al;
        const double form = p.nu * a2 + p.nu * cid * b2;
        identity = std::max(identity, std::abs(re - form) / (p.nu * a2 + p.nu * std::abs(cid) * b2));
        if (rhs > 0.0)
          coercive = std::min(coercive, re / rhs);
        else
          borderline = std::min(borderline, re / (p.nu * a2));
      }
    }
  }
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    if (std::isfinite(hardy[ai])) out.push_back(check_ge("hardy.alpha=" + num(alphas[ai]), hardy[ai], 1.0 - 1e-3));
    out.push_back(check_le("sup-norm.alpha=" + num(alphas[ai]), sup_const[ai], 10.0));
    if (table)
      table->add({alphas[ai], std::isfinite(hardy[ai]) ? hardy[ai] : std::numeric_limits<double>::quiet_NaN(),
                  sup_const[ai]});
  }
  out.push_back(check_ge("coercivity", coercive, 1.0 - 1e-3));
  if (std::isfinite(borderline)) out.push_back(check_ge("coercivity.borderline", borderline, 0.0));
  out.push_back(check_le("coercivity.identity", identity, 1e-6));
  return out;
}

std::vector<Check> q_bound_checks(const ScenarioConfig& cfg, CsvTable* table) {
  std::vector<Check> out;
  const RadialGrid g(truncated_spec(cfg, cfg.grid.N));
  const Eigen::ArrayXd r = g.r().array();
  const double R = g.r()(g.size() - 1);
  const int samples = count_or(cfg, 100);
  const CounterRng root(cfg.seed, 0x9a);
  const BumpFamily wide{3, 0.5, 4.0, 1.2, 8.0, true};
  const BumpFamily narrow{1, 2.0, 10.0, 1.2, 20.0, true};

  // Beyond the last node f vanishes and Q[f](r) = r^{-1/2-b} int s^{b-1/2}|f| ds.
  auto moment = [&](const Field& f, double b) { return integrate(g, Eigen::VectorXd(r.pow(b - 0.5) * f.array().abs())); };

  const std::pair<double, double> l2_pairs[] = {{0.5, 0.5}, {1.0, 2.0}, {3.0, 1.0}};
  for (const auto& [a, b] : l2_pairs) {
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng = root.substream(static_cast<std::uint64_t>(s));
      const Field f = random_bumps(g, rng, s % 2 ? narrow : wide);
      const Eigen::VectorXd q = apply_q(g, f, a, b);
      const double mb = moment(f, b);
      const double lhs = std::sqrt(std::pow(l2_norm(g, q), 2) + mb * mb * std::pow(R, -2.0 * b) / (2.0 * b));
      const double ratio = lhs / ((1.0 / a + 1.0 / b) * l2_norm(g, f));
      worst = std::max(worst, ratio);
      if (table) table->add({std::string("l2"), a, b, static_cast<std::int64_t>(s), ratio});
    }
    out.push_back(check_le("q-bound.l2.a=" + num(a) + ".b=" + num(b), worst, 1.0));
  }
  {
    const double a = 0.1, b = 0.6;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng = root.substream(100000 + static_cast<std::uint64_t>(s));
      const Field f = random_bumps(g, rng, s % 2 ? narrow : wide);
      const Eigen::VectorXd q = apply_q(g, f, a, b);
      const double mb = moment(f, b);
      const double body = std::pow(weighted_l2_norm(g, q, 0.5), 2);
      const double lhs = std::sqrt(body + mb * mb * std::pow(R, 1.0 - 2.0 * b) / (2.0 * b - 1.0));
      const double ratio = lhs / (std::sqrt(1.0 / (2.0 * a + 1.0) + 1.0 / (2.0 * b - 1.0)) * l1_norm(g, f));
      worst = std::max(worst, ratio);
      if (table) table->add({std::string("l1"), a, b, static_cast<std::int64_t>(s), ratio});
    }
    out.push_back(check_le("q-bound.l1.a=0.1.b=0.6", worst, 1.0));
  }
  return out;
}

std::vector<Check> monotone_decay_checks(const ScenarioConfig& cfg, CsvTable* table) {
  std::vector<Check> out;
  const FlowParams p = resolved(cfg.flow);
  const RadialGrid g(truncated_spec(cfg, cfg.grid.N));
  const Eigen::ArrayXd r = g.r().array();
  const CounterRng root(cfg.seed, 0x3d);
  const int shears = 5;
  std::vector<int> modes;
  for (int k : positive_modes(cfg, {1, 2, 4}))
    if (k == 1 || k == 2 || k == 4) modes.push_back(k);
  if (modes.empty()) modes = {1, 2, 4};

  for (int k : modes) {
    const auto sc = dissipation_scales(p, k);
    double worst = -std::numeric_limits<double>::infinity();
    std::vector<double> alphas;
    for (int j = -2 * k; j <= 2 * k; ++j) alphas.push_back(0.5 * j);
    for (int family = 0; family <= shears; ++family) {
      CounterRng rng = root.substream(static_cast<std::uint64_t>(k) * 100 + family);
      Eigen::VectorXd shear(g.size());
      std::string label = "B/r^2";
      if (family == 0) {
        shear = (p.B / r.square()).matrix();
      } else {
        const double a0 = rng.uniform(-1, 1), a1 = rng.uniform(-1, 1), a2 = rng.uniform(-1, 1);
        const double c1 = rng.uniform(1.5, 6), d1 = rng.uniform(0.5, 3), c2 = rng.uniform(1.5, 6);
        shear = (a0 + a1 * ((r - c1) / d1).tanh() + a2 * (-(r - c2).square()).exp()).matrix();
        label = "seeded-" + std::to_string(family);
      }
      const LinearOperator op = assemble_operator(g, p, k, shear);
      const Field w0 = random_bumps(g, rng);
      std::vector<double> prev(alphas.size()), rise(alphas.size(), -std::numeric_limits<double>::infinity());
      auto norms = [&](const Field& w, std::vector<double>& dst) {
        for (std::size_t i = 0; i < alphas.size(); ++i) dst[i] = weighted_l2_norm(g, w, alphas[i]);
      };
      norms(w0, prev);
      std::vector<double> cur(alphas.size());
      const double horizon = cfg.run.horizon > 0.0 ? cfg.run.horizon : 20.0;
      evolve_homogeneous(op, w0, horizon / sc.kappa, cfg.run.dt_scale / sc.kappa, [&](double t, const Field& w) {
        if (t == 0.0) return;
        norms(w, cur);
        for (std::size_t i = 0; i < alphas.size(); ++i) {
          rise[i] = std::max(rise[i], (cur[i] - prev[i]) / prev[i]);
          prev[i] = cur[i];
        }
      });
      for (std::size_t i = 0; i < alphas.size(); ++i) {
        worst = std::max(worst, rise[i]);
        if (table) table->add({static_cast<std::int64_t>(k), label, alphas[i], rise[i]});
      }
    }
    out.push_back(check_le("monotone.k=" + std::to_string(k), worst, 1e-10));
  }
  return out;
}

std::vector<Check> structural_checks(const ScenarioConfig& cfg) {
  std::vector<Check> out;
  const FlowParams p = resolved(cfg.flow);
  GridSpec spec = truncated_spec(cfg, std::min(cfg.grid.N, 128));
  const RadialGrid g(spec);
  const Eigen::ArrayXd r = g.r().array();
  const CounterRng root(cfg.seed, 0x51);

  {
    const int K = 4;
    SpectralState s(K, g.size());
    CounterRng rng = root.substream(1);
    for (int k = 0; k <= K; ++k) s.at(k) = random_bumps(g, rng);
    s.at(0) = s.at(0).real().cast<cd>();
    s.enforce_reality();
    const auto rhs = nonlinear_rhs(g, s);
    double defect = 0.0, scale = 0.0;
    for (int k = -K; k <= K; ++k) {
      defect = std::max(defect, (rhs[-k + K] - rhs[k + K].conjugate()).cwiseAbs().maxCoeff());
      scale = std::max(scale, rhs[k + K].cwiseAbs().maxCoeff());
    }
    out.push_back(check_le("rhs.reality", defect / scale, 1e-12));

    SpectralState z(K, g.size());
    z.at(0) = s.at(0);
    double zero = 0.0;
    for (const auto& f : nonlinear_rhs(g, z)) zero = std::max(zero, f.cwiseAbs().maxCoeff());
    out.push_back(check_le("rhs.zero-mode-only", zero, 0.0));
  }
  {
    const LinearOperator plus = assemble_operator(g, p, 3), minus = assemble_operator(g, p, -3);
    out.push_back(check_le("operator.conjugation", (minus.T - plus.T.conjugate()).cwiseAbs().maxCoeff(), 0.0));
    CounterRng rng = root.substream(2);
    const Field w0 = random_bumps(g, rng);
    const double T = 5.0 / dissipation_scales(p, 3).kappa, dt = 0.05 / dissipation_scales(p, 3).kappa;
    const Field a = evolve_homogeneous(plus, w0, T, dt);
    const Field b = evolve_homogeneous(minus, w0.conjugate(), T, dt);
    out.push_back(check_le("evolution.conjugation", (b - a.conjugate()).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff(),
                           1e-12));
  }
  {
    double gap = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < 100; ++s) {
      CounterRng rng = root.substream(100 + s);
      const Field F = random_bumps(g, rng), w = random_bumps(g, rng);
      const int k = 1 + s % 4;
      const double lhs = std::abs(inner(g, F, w));
      gap = std::max(gap, lhs / (hk1_norm(g, w, k) * hkm1_norm(g, F, k)) - 1.0);
    }
    out.push_back(check_le("duality.gap", gap, 1e-10));
  }
  {
    bool ok = true;
    for (int k : {1, 2, 8})
      for (double t : {0.0, 1.0, 1e2, 1e4, 1e6})
        for (double rr : {1.0, 1.5, 3.0, 10.0, 60.0, 1e3}) ok = ok && log_weight_bounds(p, k, t, rr).holds(1e-12);
    out.push_back(check_ge("log-weight.derivative-bounds", ok ? 1.0 : 0.0, 1.0));
  }
  {
    const int K = 2;
    const double dt = 0.5;
    SpectralState s(K, g.size());
    CounterRng rng = root.substream(3);
    for (int k = 1; k <= K; ++k) s.at(k) = random_bumps(g, rng);
    s.enforce_reality();
    ImexStepper st(g, p, K, dt, false);
    std::vector<Field> ref;
    for (int k = 0; k <= K; ++k) ref.push_back(s.at(k));
    double dev = 0.0;
    for (int i = 0; i < 10; ++i) {
      st.step(s);
      for (int k = 0; k <= K; ++k) {
        ref[k] = step_linear(st.op(k), ref[k], dt, Field::Zero(g.size()));
        dev = std::max(dev, (s.at(k) - ref[k]).cwiseAbs().maxCoeff());
      }
    }
    out.push_back(check_le("imex.linear-limit", dev, 1e-12));
  }
  {
    double bad = 0.0;
    for (double z : {-2.0, -1.0, -0.3, 0.0, 0.3, 1.0, 2.0}) bad = std::max(bad, std::abs(cutoff(z)) - 1.0);
    out.push_back(check_le("cutoff.range", bad, 0.0));
    out.push_back(check_le("cutoff.center", std::abs(cutoff(0.0)), 1e-15));
  }
  return out;
}

}  // namespace tcstab
