#include "tcstab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include "json.hpp"
#include "tcstab/biot_savart.hpp"
#include "tcstab/energy.hpp"
#include "tcstab/errors.hpp"
#include "tcstab/invariants.hpp"
#include "tcstab/linear.hpp"
#include "tcstab/nonlinear.hpp"
#include "tcstab/random.hpp"
#include "tcstab/resolvent.hpp"

namespace tcstab {

namespace {

using I64 = std::int64_t;

constexpr double kBlowUp = 1e12;

// Log-spaced output times in [t_first, t_final], plus t = 0 and t_final.
class Cadence {
 public:
  Cadence(double t_first, double t_final, int samples) : t_final_(t_final) {
    t_first = std::min(t_first, t_final);
    for (int j = 0; j < samples; ++j)
      targets_.push_back(t_first * std::pow(t_final / t_first, j / std::max(1.0, samples - 1.0)));
  }
  bool due(double t) {
    const double slack = 1e-9 * t_final_;
    bool hit = t == 0.0 || t >= t_final_ - slack;
    while (next_ < targets_.size() && t >= targets_[next_] - slack) {
      hit = true;
      ++next_;
    }
    return hit;
  }

 private:
  double t_final_;
  std::vector<double> targets_;
  std::size_t next_ = 0;
};

double relative_change(double a, double b) { return std::abs(b - a) / std::abs(a); }

std::string num(double v) { return format_number(v); }

GridSpec refined(GridSpec s) {
  s.N *= 2;
  return s;
}

// Initial profiles share the random stream across resolutions, so the
// refined run starts from the same continuum function.
Field seeded_profile(const RadialGrid& g, std::uint64_t seed, std::uint64_t stream, std::uint64_t id) {
  CounterRng rng = CounterRng(seed, stream).substream(id);
  return random_bumps(g, rng);
}

struct LinearRun {
  std::vector<double> sup_enhanced;  // per q
  double sup_l2 = 0.0;
  double energy = 0.0, initial = 0.0;
};

LinearRun linear_mode_run(const RadialGrid& g, const FlowParams& p, int k, const Field& w0, double T, double dt,
                          const std::vector<double>& qs, int cadence, bool with_energy, CsvTable* table, I64 sample) {
  const auto sc = dissipation_scales(p, k);
  const Eigen::ArrayXd r = g.r().array();
  const double eps = p.epsilon, kb = std::abs(k * p.B);
  const double n0 = l2_norm(g, w0);
  LinearRun out;
  out.sup_enhanced.assign(qs.size(), 0.0);
  double sup_term = 0.0;
  TimeSeriesNorm diss, dphi, phi;
  {
    const Eigen::ArrayXd lam0 = log_weight(p, k, 0.0, r);
    out.initial = weighted_l2_norm(g, w0, r.pow(eps + 2.0) * lam0) +
                  weighted_l2_norm(g, Field(g.d1() * w0), r.pow(eps + 3.0) * lam0);
  }
  Cadence cad(1.0 / sc.kappa, T, cadence);
  const LinearOperator op = assemble_operator(g, p, k);
  evolve_homogeneous(op, w0, T, dt, [&](double t, const Field& w) {
    const double l2 = l2_norm(g, w) / n0;
    out.sup_l2 = std::max(out.sup_l2, l2);
    std::vector<double> enh(qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) {
      enh[i] = weighted_l2_norm(g, w, (1.0 + sc.kappa * t / r.square()).pow(qs[i])) / n0;
      out.sup_enhanced[i] = std::max(out.sup_enhanced[i], enh[i]);
    }
    const Eigen::ArrayXd lam = log_weight(p, k, t, r);
    const double lam_norm = weighted_l2_norm(g, w, r.pow(1.0 + eps) * lam);
    if (with_energy) {
      sup_term = std::max(sup_term, lam_norm);
      diss.add(t, std::pow(weighted_l2_norm(g, w, r.pow(eps) * lam), 2));
      const Field ph = solve_stream(g, k, w);
      dphi.add(t, std::pow(weighted_l2_norm(g, Field(g.d1() * ph), r.pow(eps - 1.0) * lam), 2));
      phi.add(t, std::pow(weighted_l2_norm(g, ph, r.pow(eps - 2.0) * lam), 2));
    }
    if (table && cad.due(t)) {
      std::vector<Cell> row{static_cast<I64>(k), sample, static_cast<I64>(g.spec().N), t, sc.kappa * t, l2};
      for (double e : enh) row.emplace_back(e);
      row.emplace_back(lam_norm / n0);
      row.emplace_back(1.0 / std::log(p.c_hat + sc.kappa * t));
      table->add(std::move(row));
    }
  });
  if (with_energy)
    out.energy = sup_term + std::sqrt(sc.mu) * diss.l2() +
                 std::sqrt(kb * std::abs(k)) * (dphi.l2() + std::abs(k) * phi.l2());
  return out;
}

CsvTable resolvent_table(const ResolventReport& rep, const std::string& sweep_id) {
  CsvTable t({"sweep", "nu", "B", "k", "alpha", "epsilon", "lambda", "inequality", "ratio", "N", "seed", "smallness"});
  for (const auto& row : rep.rows) {
    const double small = std::pow(1.0 + std::abs(row.alpha), 3) * row.nu / std::abs(row.k * row.B);
    t.add({sweep_id, row.nu, row.B, static_cast<I64>(row.k), row.alpha, row.epsilon, row.lambda, row.inequality,
           row.ratio, static_cast<I64>(row.N), static_cast<I64>(row.seed), small});
  }
  return t;
}

std::vector<std::string> inequalities(const ResolventReport& rep) {
  std::vector<std::string> out;
  for (const auto& row : rep.rows)
    if (std::find(out.begin(), out.end(), row.inequality) == out.end()) out.push_back(row.inequality);
  return out;
}

void resolvent_checks(ScenarioResult& res, const std::string& prefix, const ResolventReport& base,
                      const ResolventReport* fine) {
  for (const auto& ineq : inequalities(base)) {
    const double m = base.max_ratio(ineq);
    res.metric(prefix + "." + ineq + ".max_ratio", m);
    double worst = m;
    if (fine) {
      const double mf = fine->max_ratio(ineq);
      res.metric(prefix + "." + ineq + ".max_ratio_refined", mf);
      worst = std::max(worst, mf);
      res.check(check_le(prefix + "." + ineq + ".refinement", relative_change(m, mf), 0.25));
    }
    res.check(check_le(prefix + "." + ineq, worst, 100.0));
  }
}

// Nonlinear run driver shared by nonlinear-stability and threshold-sweep.
struct NonlinearOutcome {
  bool completed = true;
  double t_end = 0.0;
  double initial = 0.0;
  std::vector<EnergyReport> reports;  // at each requested horizon
  double identity_rate = 0.0, velocity_excess = 0.0, reality = 0.0;
};

NonlinearOutcome nonlinear_run(const RadialGrid& g, const FlowParams& p, const RunSpec& run, std::uint64_t seed,
                               double amplitude, const std::vector<double>& horizons, CsvTable* series,
                               CsvTable* balance) {
  const int K = p.mode_cutoff;
  NonlinearOutcome out;
  SpectralState s = seeded_initial_state(g, K, seed);
  {
    const InitialSize m = initial_size(g, p, s);
    const double target = amplitude * std::sqrt(p.nu * std::abs(p.B));
    const double scale = m.total > 0.0 ? target / m.total : 0.0;
    for (auto& f : s.w) f *= scale;
  }
  out.initial = initial_size(g, p, s).total;
  const double kappa1 = dissipation_scales(p, 1).kappa;
  const double kappaK = dissipation_scales(p, K).kappa;
  const double t_final = horizons.back();
  const int n = step_count(t_final, std::min(run.dt_scale / kappaK, run.dt_max));
  const double dt = t_final / n;
  ImexStepper stepper(g, p, K, dt, run.nonlinear, run.dealias);
  EnergyAccumulator acc(g, p, K);
  BalanceTracker bal(g, p, K);
  StreamData sd = reconstruct(g, s);
  acc.add(0.0, s, sd);
  bal.start(s, sd);
  Cadence cad(1.0 / kappa1, t_final, run.cadence);
  const Eigen::ArrayXd r = g.r().array();
  auto record = [&](double t) {
    if (series) {
      for (int k = 0; k <= K; ++k) {
        const Field& w = s.at(k);
        const double lam = k == 0 ? weighted_l2_norm(g, w, 1.0)
                                  : weighted_l2_norm(g, w, r.pow(1.0 + p.epsilon) * log_weight(p, k, t, r));
        series->add({t, static_cast<I64>(k), l2_norm(g, w), weighted_l2_norm(g, w, 1.0 + p.epsilon), lam});
      }
    }
    if (balance)
      balance->add({t, bal.vorticity_energy(s), 2.0 * p.nu * bal.dissipation_integral(), bal.nonlinear_exchange(),
                    bal.identity_residual(), bal.velocity_energy(s, sd), bal.velocity_excess_max()});
  };
  if (cad.due(0.0)) record(0.0);
  std::size_t next_horizon = 0;
  for (int i = 1; i <= n; ++i) {
    stepper.step(s);
    double biggest = 0.0;
    for (int k = 0; k <= K; ++k) biggest = std::max(biggest, s.at(k).cwiseAbs().maxCoeff());
    if (!std::isfinite(biggest) || biggest > kBlowUp) {
      out.completed = false;
      out.t_end = s.t;
      break;
    }
    sd = reconstruct(g, s);
    acc.add(s.t, s, sd);
    bal.after_step(stepper, s, sd);
    out.reality = std::max(out.reality, s.reality_defect());
    if (cad.due(s.t)) record(s.t);
    while (next_horizon < horizons.size() && s.t >= horizons[next_horizon] * (1.0 - 1e-12)) {
      out.reports.push_back(acc.report(out.initial));
      ++next_horizon;
    }
    out.t_end = s.t;
  }
  out.identity_rate = bal.identity_rate_max();
  out.velocity_excess = bal.velocity_excess_max();
  return out;
}

CsvTable energy_table() {
  return CsvTable({"horizon", "t", "k", "sup_term", "dissipation_term", "damping_term", "total", "log_decay",
                   "embedding_ratio"});
}

void add_energy_rows(CsvTable& t, const std::string& label, const EnergyReport& rep) {
  t.add({label, rep.t_final, I64{0}, rep.zero_mode, 0.0, 0.0, rep.zero_mode, 0.0, 0.0});
  for (const auto& e : rep.modes)
    t.add({label, rep.t_final, static_cast<I64>(e.k), e.sup_term, e.dissipation_term, e.damping_term, e.total,
           e.log_decay, e.embedding_ratio});
}

}  // namespace

ScenarioResult run_linear_decay(const ScenarioConfig& cfg) {
  ScenarioResult res{cfg, {}, {}, {}};
  const FlowParams p = resolved(cfg.flow);
  const RadialGrid g(cfg.grid);
  std::vector<std::string> cols{"k", "sample", "N", "t", "kappa_t", "l2"};
  for (double q : cfg.run.qs) cols.push_back("enhanced_q" + num(q));
  cols.push_back("lambda_weighted");
  cols.push_back("envelope");
  CsvTable series(cols);
  CsvTable summary({"k", "sample", "N", "q", "sup_enhanced"});
  std::unique_ptr<RadialGrid> fine;
  if (cfg.run.refine) fine = std::make_unique<RadialGrid>(refined(cfg.grid));

  for (int k : cfg.run.modes) {
    const auto sc = dissipation_scales(p, k);
    const double T = cfg.run.horizon / sc.kappa, dt = cfg.run.dt_scale / sc.kappa;
    std::vector<double> sup(cfg.run.qs.size(), 0.0), sup_fine(cfg.run.qs.size(), 0.0);
    double sup_l2 = 0.0, energy_ratio = 0.0;
    for (int s = 0; s < cfg.run.samples; ++s) {
      const Field w0 = seeded_profile(g, cfg.seed, 0x11, static_cast<std::uint64_t>(k) * 1000 + s);
      const LinearRun a = linear_mode_run(g, p, k, w0, T, dt, cfg.run.qs, cfg.run.cadence, true, &series, s);
      sup_l2 = std::max(sup_l2, a.sup_l2);
      energy_ratio = std::max(energy_ratio, a.energy / a.initial);
      for (std::size_t i = 0; i < cfg.run.qs.size(); ++i) {
        sup[i] = std::max(sup[i], a.sup_enhanced[i]);
        summary.add({static_cast<I64>(k), static_cast<I64>(s), static_cast<I64>(g.spec().N), cfg.run.qs[i],
                     a.sup_enhanced[i]});
      }
      if (fine) {
        const Field wf = seeded_profile(*fine, cfg.seed, 0x11, static_cast<std::uint64_t>(k) * 1000 + s);
        const LinearRun b =
            linear_mode_run(*fine, p, k, wf, T, 0.5 * dt, cfg.run.qs, cfg.run.cadence, false, nullptr, s);
        for (std::size_t i = 0; i < cfg.run.qs.size(); ++i) {
          sup_fine[i] = std::max(sup_fine[i], b.sup_enhanced[i]);
          summary.add({static_cast<I64>(k), static_cast<I64>(s), static_cast<I64>(fine->spec().N), cfg.run.qs[i],
                       b.sup_enhanced[i]});
        }
      }
    }
    const std::string tag = "k=" + std::to_string(k);
    for (std::size_t i = 0; i < cfg.run.qs.size(); ++i) {
      const std::string name = "enhanced-dissipation." + tag + ".q=" + num(cfg.run.qs[i]);
      res.metric(name, sup[i]);
      res.check(check_le(name, fine ? std::max(sup[i], sup_fine[i]) : sup[i], 100.0));
      if (fine) res.check(check_le(name + ".refinement", relative_change(sup[i], sup_fine[i]), 0.25));
    }
    res.check(check_le("linear.l2-nonincreasing." + tag, sup_l2, 1.0 + 1e-12));
    res.check(check_le("linear.energy." + tag, energy_ratio, 100.0));
  }
  res.tables.emplace_back("linear_decay.csv", std::move(series));
  res.tables.emplace_back("linear_decay_summary.csv", std::move(summary));
  return res;
}

ScenarioResult run_resolvent_static(const ScenarioConfig& cfg) {
  ScenarioResult res{cfg, {}, {}, {}};
  StaticSweepConfig sc;
  sc.params = cfg.flow;
  sc.grid = cfg.grid;
  sc.modes = cfg.run.modes;
  sc.alphas = cfg.run.alphas;
  sc.samples = cfg.run.samples;
  sc.seed = cfg.seed;
  const ResolventReport base = static_sweep(sc);
  CsvTable table = resolvent_table(base, "static");
  ResolventReport fine;
  if (cfg.run.refine) {
    sc.grid = refined(cfg.grid);
    fine = static_sweep(sc);
    for (auto& row : resolvent_table(fine, "static").rows) table.rows.push_back(std::move(row));
  }
  resolvent_checks(res, "static", base, cfg.run.refine ? &fine : nullptr);
  res.check(check_le("static.cauchy-schwarz", base.consistency_violations + fine.consistency_violations, 0.0));
  res.check(check_le("static.residual", std::max(base.max_residual, fine.max_residual), 1e-10));
  res.tables.emplace_back("resolvent_static.csv", std::move(table));
  return res;
}

ScenarioResult run_resolvent_spacetime(const ScenarioConfig& cfg) {
  ScenarioResult res{cfg, {}, {}, {}};
  SpacetimeSweepConfig sc;
  sc.params = cfg.flow;
  sc.grid = cfg.grid;
  sc.modes = cfg.run.modes;
  sc.alphas = cfg.run.alphas;
  sc.samples = cfg.run.samples;
  sc.seed = cfg.seed;
  sc.horizon = cfg.run.horizon;
  sc.dt_scale = cfg.run.dt_scale;
  sc.unit_weight = cfg.run.unit_weight;
  const ResolventReport base = spacetime_sweep(sc);
  CsvTable table = resolvent_table(base, sc.unit_weight ? "spacetime-unit" : "spacetime");
  ResolventReport fine;
  if (cfg.run.refine) {
    sc.grid = refined(cfg.grid);
    fine = spacetime_sweep(sc);
    for (auto& row : resolvent_table(fine, sc.unit_weight ? "spacetime-unit" : "spacetime").rows)
      table.rows.push_back(std::move(row));
  }
  resolvent_checks(res, "spacetime", base, cfg.run.refine ? &fine : nullptr);
  res.tables.emplace_back("resolvent_spacetime.csv", std::move(table));
  return res;
}

ScenarioResult run_decomposition_check(const ScenarioConfig& cfg) {
  ScenarioResult res{cfg, {}, {}, {}};
  const FlowParams p = resolved(cfg.flow);
  const RadialGrid g(cfg.grid);
  const RadialGrid fine(refined(cfg.grid));
  const Eigen::ArrayXd r = g.r().array();
  const double eps = p.epsilon;
  CsvTable series({"k", "t", "full", "w1", "w2", "residual", "phi1_weighted", "envelope_ratio"});

  for (int k : cfg.run.modes) {
    const auto sc = dissipation_scales(p, k);
    const double kk = std::abs(k), kb = std::abs(k * p.B);
    const double T = cfg.run.horizon / sc.kappa;
    const int steps = step_count(T, cfg.run.dt_scale / sc.kappa);
    const double dt = T / steps;
    const std::string tag = "k=" + std::to_string(k);
    double res_sup = 0.0, self_sup = 0.0, full_sup = 0.0, env_sup = 0.0;

    std::vector<Field> ref;
    evolve_decomposition(fine, p, k, seeded_profile(fine, cfg.seed, 0xde, k), T, T / (2.0 * steps),
                         [&](const DecompositionState& st) { ref.push_back(st.full); });

    const Field w0 = seeded_profile(g, cfg.seed, 0xde, k);
    const Eigen::ArrayXd lam0 = log_weight(p, k, 0.0, r);
    const Field dw0 = g.d1() * w0;
    const double mk0 = weighted_l2_norm(g, w0, r.pow(eps + 2.0) * lam0) + weighted_l2_norm(g, dw0, r.pow(eps + 3.0) * lam0);
    const std::size_t na = cfg.run.alphas.size();
    std::vector<double> sup_w1(na, 0.0), sup_dw1(na, 0.0);
    std::vector<TimeSeriesNorm> d_w1(na), m_w1(na), k_w1(na), d_dw1(na), m_dw1(na), k_dw1(na);
    TimeSeriesNorm dphi1, phi1;
    Cadence cad(1.0 / sc.kappa, T, cfg.run.cadence);
    std::size_t step = 0;

    evolve_decomposition(g, p, k, w0, T, dt, [&](const DecompositionState& st) {
      const double t = st.t;
      const Field recon = (shear_phase(g, p, k, t).array() * st.w1.array()).matrix() + st.w2;
      const double resid = l2_norm(g, Field(st.full - recon));
      if (2 * step >= ref.size()) throw NumericalError("decomposition: refined run has too few steps");
      Field refc(g.size());
      const Field& rf = ref[2 * step];
      for (int j = 0; j < g.size(); ++j) refc(j) = rf(2 * j);
      res_sup = std::max(res_sup, resid);
      self_sup = std::max(self_sup, l2_norm(g, Field(st.full - refc)));
      full_sup = std::max(full_sup, l2_norm(g, st.full));
      ++step;

      const Eigen::ArrayXd lam = log_weight(p, k, t, r);
      const Field dw1 = g.d1() * st.w1;
      const Field d2w1 = g.d2() * st.w1;
      for (std::size_t i = 0; i < na; ++i) {
        const double a = cfg.run.alphas[i];
        sup_w1[i] = std::max(sup_w1[i], std::pow(weighted_l2_norm(g, st.w1, r.pow(a) * lam), 2));
        d_w1[i].add(t, std::pow(weighted_l2_norm(g, dw1, r.pow(a) * lam), 2));
        m_w1[i].add(t, std::pow(weighted_l2_norm(g, st.w1, r.pow(a - 1.0) * lam), 2));
        k_w1[i].add(t, std::pow(weighted_l2_norm(g, st.w1, sc.kappa * t * r.pow(a - 3.0) * lam), 2));
        sup_dw1[i] = std::max(sup_dw1[i], std::pow(weighted_l2_norm(g, dw1, r.pow(a) * lam), 2));
        d_dw1[i].add(t, std::pow(weighted_l2_norm(g, d2w1, r.pow(a) * lam), 2));
        m_dw1[i].add(t, std::pow(weighted_l2_norm(g, dw1, r.pow(a - 1.0) * lam), 2));
        k_dw1[i].add(t, std::pow(weighted_l2_norm(g, dw1, sc.kappa * t * r.pow(a - 3.0) * lam), 2));
      }
      const Field phi = stream_from_kernel(g, k, Field(shear_phase(g, p, k, t).array() * st.w1.array()));
      const double nd = weighted_l2_norm(g, Field(g.d1() * phi), r.pow(eps - 1.0) * lam);
      const double np = weighted_l2_norm(g, phi, r.pow(eps - 2.0) * lam);
      dphi1.add(t, nd * nd);
      phi1.add(t, np * np);
      const double data = weighted_l2_norm(g, st.w1, r.pow(eps) * lam) + weighted_l2_norm(g, st.w1, r.pow(eps + 2.0) * lam) +
                          weighted_l2_norm(g, dw1, r.pow(eps + 3.0) * lam);
      const double env = std::min(1.0 / kk, t > 0.0 ? 1.0 / (kb * t) : std::numeric_limits<double>::infinity());
      const double env_ratio = data > 0.0 ? (nd + kk * np) / (env * data) : 0.0;
      env_sup = std::max(env_sup, env_ratio);
      if (cad.due(t))
        series.add({static_cast<I64>(k), t, l2_norm(g, st.full), l2_norm(g, st.w1), l2_norm(g, st.w2), resid,
                    nd + kk * np, env_ratio});
    });

    res.metric("decomposition." + tag + ".residual", res_sup / full_sup);
    res.metric("decomposition." + tag + ".self_convergence", self_sup / full_sup);
    res.check(check_le("decomposition." + tag + ".residual", res_sup, 10.0 * self_sup));

    double c62 = 0.0, c63 = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
      const double a = cfg.run.alphas[i];
      const double num62 = sup_w1[i] + p.nu * d_w1[i].integral() + sc.mu * m_w1[i].integral() + sc.kappa * k_w1[i].integral();
      c62 = std::max(c62, num62 / std::pow(weighted_l2_norm(g, w0, r.pow(a) * lam0), 2));
      if (a >= 1.0 && a <= 5.0) {
        const double num63 =
            sup_dw1[i] + p.nu * d_dw1[i].integral() + sc.mu * m_dw1[i].integral() + sc.kappa * k_dw1[i].integral();
        const double den63 = std::pow(weighted_l2_norm(g, dw0, r.pow(a) * lam0), 2) +
                             std::pow(weighted_l2_norm(g, w0, r.pow(a - 1.0) * lam0), 2);
        c63 = std::max(c63, num63 / den63);
      }
    }
    const double c64 = std::sqrt(kb * kk) * (dphi1.l2() + kk * phi1.l2()) / mk0;
    res.check(check_le("decomposition." + tag + ".w1-energy", c62, 20.0));
    res.check(check_le("decomposition." + tag + ".w1-derivative", c63, 20.0));
    res.check(check_le("decomposition." + tag + ".inviscid-damping", c64, 50.0));
    res.check(check_le("decomposition." + tag + ".envelope", env_sup, 50.0));
  }
  res.tables.emplace_back("decomposition.csv", std::move(series));
  return res;
}

ScenarioResult run_nonlinear_stability(const ScenarioConfig& cfg) {
  ScenarioResult res{cfg, {}, {}, {}};
  const FlowParams p = resolved(cfg.flow);
  const RadialGrid g(cfg.grid);
  const double T = cfg.run.horizon / dissipation_scales(p, 1).kappa;
  std::vector<double> horizons{T};
  if (cfg.run.refine) horizons.push_back(2.0 * T);
  CsvTable series({"t", "k", "l2", "weighted", "lambda_weighted"});
  CsvTable balance({"t", "vorticity_energy", "dissipation", "exchange", "identity_residual", "velocity_energy",
                    "velocity_excess"});
  const NonlinearOutcome out = nonlinear_run(g, p, cfg.run, cfg.seed, cfg.run.amplitude, horizons, &series, &balance);
  res.metric("initial_size", out.initial);
  res.metric("t_end", out.t_end);
  res.check(check_ge("stability.completed", out.completed ? 1.0 : 0.0, 1.0));
  CsvTable energy = energy_table();
  if (!out.reports.empty()) {
    const EnergyReport& a = out.reports.front();
    add_energy_rows(energy, "T", a);
    res.metric("energy_ratio", a.ratio);
    res.metric("log_decay_sup", a.log_decay_sup);
    res.metric("zero_mode_energy", a.zero_mode);
    res.metric("sqrt_t_w0_last_decade_start", a.sqrt_t_w0_start);
    res.metric("sqrt_t_w0_last_decade_end", a.sqrt_t_w0_end);
    res.check(check_le("stability.energy-ratio", a.ratio, 100.0));
    res.check(check_le("stability.log-decay", a.log_decay_sup, 100.0));
    res.check(check_le("stability.zero-mode-closure", a.lemma_zero_mode_constant, 100.0));
    res.check(check_le("stability.embedding", a.embedding_sup, 50.0));
    if (out.reports.size() > 1) {
      const EnergyReport& b = out.reports[1];
      add_energy_rows(energy, "2T", b);
      res.metric("energy_ratio_2T", b.ratio);
      res.metric("log_decay_sup_2T", b.log_decay_sup);
      res.check(check_le("stability.energy-ratio.doubling", relative_change(a.ratio, b.ratio), 0.25));
      res.check(check_le("stability.log-decay.doubling", relative_change(a.log_decay_sup, b.log_decay_sup), 0.25));
    }
  }
  res.metric("identity_rate", out.identity_rate);
  res.metric("velocity_excess", out.velocity_excess);
  res.check(check_le("energy-identity", out.identity_rate, 1e-6));
  res.check(check_le("velocity-inequality", out.velocity_excess, 1e-6));
  res.check(check_le("reality", out.reality, 1e-12));
  res.tables.emplace_back("nonlinear_series.csv", std::move(series));
  res.tables.emplace_back("nonlinear_balance.csv", std::move(balance));
  res.tables.emplace_back("nonlinear_energy.csv", std::move(energy));
  return res;
}

ScenarioResult run_threshold_sweep(const ScenarioConfig& cfg) {
  ScenarioResult res{cfg, {}, {}, {}};
  const FlowParams p = resolved(cfg.flow);
  const RadialGrid g(cfg.grid);
  const double T = cfg.run.horizon / dissipation_scales(p, 1).kappa;
  CsvTable table({"amplitude", "initial_size", "completed", "t_end", "energy_ratio", "log_decay_sup"});
  double smallest_ok = -1.0;
  std::vector<double> amps = cfg.run.amplitudes;
  std::sort(amps.begin(), amps.end());
  for (double a : amps) {
    const NonlinearOutcome out = nonlinear_run(g, p, cfg.run, cfg.seed, a, {T}, nullptr, nullptr);
    const double ratio = out.reports.empty() ? std::numeric_limits<double>::quiet_NaN() : out.reports[0].ratio;
    const double decay = out.reports.empty() ? std::numeric_limits<double>::quiet_NaN() : out.reports[0].log_decay_sup;
    table.add({a, out.initial, static_cast<I64>(out.completed), out.t_end, ratio, decay});
    if (smallest_ok < 0.0) smallest_ok = out.completed ? 1.0 : 0.0;
    res.metric("completed.amplitude=" + num(a), out.completed ? 1.0 : 0.0);
  }
  if (smallest_ok >= 0.0) res.check(check_ge("threshold.smallest-amplitude-completes", smallest_ok, 1.0));
  res.tables.emplace_back("threshold_sweep.csv", std::move(table));
  return res;
}

ScenarioResult run_k0_instability(const ScenarioConfig& cfg) {
  ScenarioResult res{cfg, {}, {}, {}};
  const FlowParams p = resolved(cfg.flow);
  const RadialGrid g(cfg.grid);
  const int samples = std::max(cfg.run.cadence / 10, 8);
  const GrowthProbe probe = zero_mode_growth(g, p.nu, cfg.run.betas, cfg.run.nu_t_lo, cfg.run.nu_t_hi, samples);
  CsvTable table({"beta", "nu_t", "ratio"});
  for (std::size_t b = 0; b < probe.betas.size(); ++b)
    for (std::size_t j = 0; j < probe.nu_t.size(); ++j) table.add({probe.betas[b], probe.nu_t[j], probe.ratio[b][j]});
  CsvTable fits({"beta", "slope", "expected", "tolerance"});
  for (std::size_t b = 0; b < probe.betas.size(); ++b) {
    const double beta = probe.betas[b];
    const double expected = 0.5 * beta, tol = beta > 1.5 ? 0.15 : 0.1;
    const double dev = std::abs(probe.slopes[b] - expected);
    res.metric("k0-growth.beta=" + num(beta) + ".slope", probe.slopes[b]);
    if (beta > 0.0) res.check({"k0-growth.beta=" + num(beta), probe.slopes[b], expected, dev, dev <= tol});
    fits.add({beta, probe.slopes[b], expected, tol});
  }
  res.tables.emplace_back("k0_growth.csv", std::move(table));
  res.tables.emplace_back("k0_slopes.csv", std::move(fits));
  return res;
}

ScenarioResult run_invariant_suite(const ScenarioConfig& cfg) {
  ScenarioResult res{cfg, {}, {}, {}};
  CsvTable bs({"k", "sample", "agreement", "inverse"});
  CsvTable kb({"kind", "N", "k", "sample", "a", "constant_l2", "constant_l1"});
  CsvTable hardy({"alpha", "hardy_ratio", "sup_constant"});
  CsvTable q({"form", "a", "b", "sample", "ratio"});
  CsvTable mono({"k", "shear", "alpha", "max_rise"});
  res.append(biot_savart_checks(cfg, &bs));
  res.append(kernel_bound_checks(cfg, &kb));
  res.append(hardy_checks(cfg, &hardy));
  res.append(q_bound_checks(cfg, &q));
  res.append(monotone_decay_checks(cfg, &mono));
  res.append(structural_checks(cfg));
  res.tables.emplace_back("biot_savart.csv", std::move(bs));
  res.tables.emplace_back("kernel_bounds.csv", std::move(kb));
  res.tables.emplace_back("hardy.csv", std::move(hardy));
  res.tables.emplace_back("q_bounds.csv", std::move(q));
  res.tables.emplace_back("monotone.csv", std::move(mono));
  return res;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  const std::string& s = cfg.scenario;
  try {
    if (s == "linear-decay") return run_linear_decay(cfg);
    if (s == "resolvent-static") return run_resolvent_static(cfg);
    if (s == "resolvent-spacetime") return run_resolvent_spacetime(cfg);
    if (s == "decomposition-check") return run_decomposition_check(cfg);
    if (s == "nonlinear-stability") return run_nonlinear_stability(cfg);
    if (s == "threshold-sweep") return run_threshold_sweep(cfg);
    if (s == "k0-instability") return run_k0_instability(cfg);
    if (s == "invariant-suite") return run_invariant_suite(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericalError("scenario " + s + ": " + e.what());
  }
  throw ConfigError("scenario: unknown scenario '" + s + "'");
}

std::string output_dir(const ScenarioConfig& cfg) {
  return cfg.output.empty() ? output_root() + "/" + cfg.scenario : cfg.output;
}

ScenarioConfig suite_config(const std::string& scenario, const std::string& profile, std::uint64_t seed) {
  if (profile != "quick" && profile != "full") throw ConfigError("profile: expected quick or full, got '" + profile + "'");
  const bool quick = profile == "quick";
  std::string text = "scenario = " + scenario + "\nseed = " + std::to_string(seed) + "\nnu = 1e-4\nB = 1\n";
  std::string grid, run, flow;
  if (scenario == "invariant-suite") {
    grid = quick ? "N = 384\n" : "N = 512\n";
    run = quick ? "samples = 4\nmodes = 1, 2\n" : "";
  } else if (scenario == "linear-decay") {
    grid = quick ? "N = 64\n" : "N = 256\n";
    run = quick ? "modes = 1\nsamples = 1\nhorizon = 20\nrefine = false\ncadence = 20\n" : "samples = 2\n";
  } else if (scenario == "resolvent-static") {
    grid = quick ? "N = 48\n" : "N = 256\n";
    run = quick ? "modes = 1\nsamples = 2\nrefine = false\n" : "";
  } else if (scenario == "resolvent-spacetime") {
    grid = quick ? "N = 48\n" : "N = 256\n";
    run = quick ? "modes = 1\nsamples = 2\nhorizon = 5\nrefine = false\n" : "";
  } else if (scenario == "decomposition-check") {
    grid = quick ? "N = 48\n" : "N = 256\n";
    run = quick ? "modes = 1\nhorizon = 5\ncadence = 20\n" : "";
  } else if (scenario == "nonlinear-stability") {
    grid = quick ? "N = 48\n" : "N = 256\n";
    flow = quick ? "K = 4\n" : "K = 16\n";
    run = quick ? "horizon = 0.5\ncadence = 20\n" : "";
  } else if (scenario == "threshold-sweep") {
    grid = quick ? "N = 48\n" : "N = 192\n";
    flow = quick ? "K = 4\n" : "K = 8\n";
    run = quick ? "horizon = 0.2\namplitudes = 0.01, 1, 100\n" : "amplitudes = 0.01, 0.1, 1, 10, 100, 1000\n";
  } else if (scenario == "k0-instability") {
    grid = quick ? "N = 96\nr_max = 300\n" : "N = 384\nr_max = 300\n";
    run = quick ? "cadence = 80\n" : "";
  } else {
    throw ConfigError("scenario: unknown scenario '" + scenario + "'");
  }
  text += flow;
  text += "[grid]\n" + grid + "[run]\n" + run;
  return parse_config_text(text);
}

int SuiteSummary::total_failures() const {
  int n = 0;
  for (int f : failures) n += f;
  return n;
}

SuiteSummary run_suite(const std::string& profile, std::uint64_t seed, const std::string& root) {
  SuiteSummary sum;
  sum.root = root;
  nlohmann::ordered_json manifest;
  manifest["profile"] = profile;
  manifest["seed"] = seed;
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const auto& name : scenario_names()) {
    ScenarioConfig cfg = suite_config(name, profile, seed);
    cfg.output = root + "/" + name;
    const ScenarioResult res = run_scenario(cfg);
    write_result(res, cfg.output);
    sum.scenarios.push_back(name);
    sum.checks.push_back(static_cast<int>(res.checks.size()));
    sum.failures.push_back(res.failures());
    nlohmann::ordered_json failed = nlohmann::ordered_json::array();
    for (const auto& c : res.checks)
      if (!c.pass) failed.push_back(c.name);
    items.push_back({{"scenario", name}, {"checks", res.checks.size()}, {"failures", res.failures()}, {"failed", failed}});
  }
  manifest["scenarios"] = items;
  manifest["failures"] = sum.total_failures();
  std::filesystem::create_directories(root);
  std::ofstream(root + "/manifest.json", std::ios::binary) << manifest.dump(2) << "\n";
  return sum;
}

namespace {

nlohmann::ordered_json summarize_csv(const CsvData& d) {
  nlohmann::ordered_json j;
  j["rows"] = d.rows.size();
  j["columns"] = d.columns;
  auto is_number = [](const std::string& s) {
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end && *end == '\0';
  };
  nlohmann::ordered_json cols = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < d.columns.size(); ++c) {
    bool numeric = !d.rows.empty();
    for (const auto& row : d.rows) numeric = numeric && is_number(row[c]);
    if (!numeric) continue;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& row : d.rows) {
      const double v = std::strtod(row[c].c_str(), nullptr);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    cols[d.columns[c]] = {{"min", lo}, {"max", hi}, {"last", std::strtod(d.rows.back()[c].c_str(), nullptr)}};
  }
  j["numeric"] = cols;

  // Grouped maxima for sweep tables, fitted slopes for growth tables.
  const int ineq = d.column("inequality"), ratio = d.column("ratio");
  if (ineq >= 0 && ratio >= 0) {
    std::map<std::string, double> worst;
    for (const auto& row : d.rows) {
      const std::string key = row[d.column("sweep")] + "/" + row[ineq] + "/N=" + row[d.column("N")];
      const double v = std::strtod(row[ratio].c_str(), nullptr);
      worst[key] = std::max(worst.count(key) ? worst[key] : 0.0, v);
    }
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [k, v] : worst) m[k] = v;
    j["max_ratio"] = m;
  }
  const int beta = d.column("beta"), nut = d.column("nu_t");
  if (beta >= 0 && nut >= 0 && ratio >= 0) {
    std::map<double, std::pair<std::vector<double>, std::vector<double>>> series;
    for (const auto& row : d.rows) {
      auto& s = series[std::strtod(row[beta].c_str(), nullptr)];
      s.first.push_back(std::log(std::strtod(row[nut].c_str(), nullptr)));
      s.second.push_back(std::log(std::strtod(row[ratio].c_str(), nullptr)));
    }
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [b, s] : series)
      if (s.first.size() >= 2) m[format_number(b)] = least_squares_slope(s.first, s.second);
    j["slope"] = m;
  }
  return j;
}

}  // namespace

std::string report_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ConfigError("report: not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  nlohmann::ordered_json report = nlohmann::ordered_json::object();
  std::string text;
  for (const auto& f : files) {
    const std::string rel = fs::relative(f, dir).generic_string();
    const CsvData d = read_csv(f.string());
    const auto j = summarize_csv(d);
    report[rel] = j;
    text += rel + ": " + std::to_string(d.rows.size()) + " rows\n";
    if (j.contains("max_ratio"))
      for (const auto& [k, v] : j["max_ratio"].items()) text += "  max ratio " + k + " = " + format_number(v.get<double>()) + "\n";
    if (j.contains("slope"))
      for (const auto& [k, v] : j["slope"].items()) text += "  slope beta=" + k + " = " + format_number(v.get<double>()) + "\n";
  }
  std::ofstream(dir + "/report.json", std::ios::binary) << report.dump(2) << "\n";
  return text;
}

}  // namespace tcstab
