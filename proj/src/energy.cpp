#include "tcstab/energy.hpp"

#include <cmath>
#include <numbers>

#include "tcstab/biot_savart.hpp"
#include "tcstab/errors.hpp"

namespace tcstab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

InitialSize initial_size(const RadialGrid& g, const FlowParams& p, const SpectralState& s) {
  InitialSize m;
  const double eps = p.epsilon;
  const Eigen::ArrayXd r = g.r().array();
  m.zero_vorticity = weighted_l2_norm(g, s.at(0), 1.0);
  m.zero_velocity = l2_norm(g, zero_mode_velocity(g, s.at(0)));
  m.total = m.zero_vorticity + m.zero_velocity;
  for (int k = 1; k <= s.K; ++k) {
    const Eigen::ArrayXd lam = log_weight(p, k, 0.0, r);
    const Field dw = g.d1() * s.at(k);
    const double mk = weighted_l2_norm(g, s.at(k), r.pow(eps + 2.0) * lam) +
                      weighted_l2_norm(g, dw, r.pow(eps + 3.0) * lam);
    m.modes.push_back(mk);
    m.total += 2.0 * mk;
  }
  return m;
}

void TimeSeriesNorm::add(double t, double sq) {
  if (have_) integral_ += 0.5 * (t - t_) * (sq + last_);
  have_ = true;
  t_ = t;
  last_ = sq;
}

EnergyAccumulator::EnergyAccumulator(const RadialGrid& g, const FlowParams& p, int K)
    : g_(&g), p_(p), K_(K), sup_(K + 1, 0.0), log_decay_raw_(K + 1, 0.0), diss_(K + 1), dphi_(K + 1),
      phi_(K + 1), embed_(K + 1) {}

void EnergyAccumulator::add(double t, const SpectralState& s, const StreamData& sd) {
  const RadialGrid& g = *g_;
  const Eigen::ArrayXd r = g.r().array();
  const double eps = p_.epsilon;
  t_last_ = t;
  zero_sup_vort_ = std::max(zero_sup_vort_, weighted_l2_norm(g, s.at(0), 1.0));
  zero_sup_vel_ = std::max(zero_sup_vel_, l2_norm(g, sd.u0));
  const double w0n = l2_norm(g, s.at(0));
  zero_l2_.add(t, w0n * w0n);
  w0_trace_.emplace_back(t, w0n);
  for (int k = 1; k <= K_; ++k) {
    const Eigen::ArrayXd lam = log_weight(p_, k, t, r);
    const Field& w = s.at(k);
    const Field& phi = sd.phi[k + K_];
    sup_[k] = std::max(sup_[k], weighted_l2_norm(g, w, r.pow(eps + 1.0) * lam));
    const double kap = dissipation_scales(p_, k).kappa;
    log_decay_raw_[k] =
        std::max(log_decay_raw_[k], weighted_l2_norm(g, w, 1.0 + eps) * std::log(p_.c_hat + kap * t));
    diss_[k].add(t, std::pow(weighted_l2_norm(g, w, r.pow(eps) * lam), 2));
    const Field dphi = g.d1() * phi;
    dphi_[k].add(t, std::pow(weighted_l2_norm(g, dphi, r.pow(eps - 1.0) * lam), 2));
    phi_[k].add(t, std::pow(weighted_l2_norm(g, phi, r.pow(eps - 2.0) * lam), 2));
    embed_[k].add(t, std::pow((r.pow(eps - 1.5) * lam * phi.array().abs()).maxCoeff(), 2));
  }
}

EnergyReport EnergyAccumulator::report(double m0) const {
  EnergyReport rep;
  rep.t_final = t_last_;
  rep.initial = m0;
  rep.zero_mode = zero_sup_vort_ + zero_sup_vel_ + std::sqrt(p_.nu) * zero_l2_.l2();
  double sum = 0.0;
  for (int k = 1; k <= K_; ++k) {
    const auto sc = dissipation_scales(p_, k);
    const double kb = std::abs(k * p_.B);
    ModeEnergy e;
    e.k = k;
    e.sup_term = sup_[k];
    e.dissipation_term = std::sqrt(sc.mu) * diss_[k].l2();
    e.damping_term = std::sqrt(kb) * std::sqrt(static_cast<double>(k)) * (dphi_[k].l2() + k * phi_[k].l2());
    e.total = e.sup_term + e.dissipation_term + e.damping_term;
    e.log_decay = m0 > 0.0 ? log_decay_raw_[k] / m0 : 0.0;
    e.embedding_ratio = e.total > 0.0 ? std::sqrt(kb) * k * embed_[k].l2() / e.total : 0.0;
    rep.log_decay_sup = std::max(rep.log_decay_sup, e.log_decay);
    rep.embedding_sup = std::max(rep.embedding_sup, e.embedding_ratio);
    sum += 2.0 * e.total;
    rep.modes.push_back(e);
  }
  rep.total = rep.zero_mode + 100.0 * sum;
  rep.ratio = m0 > 0.0 ? rep.total / m0 : 0.0;

  // t^{1/2} ||w0|| at the start and end of the last decade of the run.
  if (!w0_trace_.empty()) {
    const double t_end = w0_trace_.back().first;
    const double t_start = t_end / 10.0;
    for (const auto& [t, v] : w0_trace_) {
      if (t >= t_start) {
        rep.sqrt_t_w0_start = std::sqrt(t) * v;
        break;
      }
    }
    rep.sqrt_t_w0_end = std::sqrt(t_end) * w0_trace_.back().second;
  }
  const double denom = m0 + std::pow(std::abs(p_.nu * p_.B), -0.5) * rep.total * rep.total;
  rep.lemma_zero_mode_constant = denom > 0.0 ? std::max(0.0, rep.zero_mode - 0.5 * rep.total) / denom : 0.0;
  return rep;
}

BalanceTracker::BalanceTracker(const RadialGrid& g, const FlowParams& p, int K)
    : g_(&g), p_(p), K_(K), last_phi_r2_(K + 1, 0.0), last_dphi_r_(K + 1, 0.0), phi_r2_int_(K + 1, 0.0),
      dphi_r_int_(K + 1, 0.0) {}

double BalanceTracker::vorticity_energy(const SpectralState& s) const {
  double e = std::pow(l2_norm(*g_, s.at(0)), 2);
  for (int k = 1; k <= K_; ++k) e += 2.0 * std::pow(l2_norm(*g_, s.at(k)), 2);
  return kTwoPi * e;
}

double BalanceTracker::velocity_energy(const SpectralState&, const StreamData& sd) const {
  double e = std::pow(l2_norm(*g_, sd.u0), 2);
  for (int k = 1; k <= K_; ++k) {
    const Velocity v = velocity(*g_, k, sd.phi[k + K_]);
    e += 2.0 * (std::pow(l2_norm(*g_, v.radial), 2) + std::pow(l2_norm(*g_, v.azimuthal), 2));
  }
  return kTwoPi * e;
}

void BalanceTracker::start(const SpectralState& s, const StreamData& sd) {
  t_ = s.t;
  w0_ = vorticity_energy(s);
  u0_ = velocity_energy(s, sd);
  last_vort_ = w0_;
  const Eigen::ArrayXd r = g_->r().array();
  for (int k = 1; k <= K_; ++k) {
    last_phi_r2_[k] = std::pow(weighted_l2_norm(*g_, sd.phi[k + K_], -2.0), 2);
    last_dphi_r_[k] = std::pow(weighted_l2_norm(*g_, Field(g_->d1() * sd.phi[k + K_]), -1.0), 2);
  }
}

void BalanceTracker::after_step(const ImexStepper& st, const SpectralState& s, const StreamData& sd) {
  const RadialGrid& g = *g_;
  const double dt = s.t - t_;
  t_ = s.t;
  const auto& mid = st.midpoint();
  const auto& forcing = st.last_forcing();
  double form = 0.0, exch = 0.0;
  for (int k = 0; k <= K_; ++k) {
    const double mult = k == 0 ? 1.0 : 2.0;
    form += mult * inner(g, st.op(k).apply(mid[k]), mid[k]).real();
    if (!forcing.empty() && forcing[k].size() == mid[k].size())
      exch += mult * inner(g, with_dirichlet(g, forcing[k]), mid[k]).real();
  }
  diss_ += 2.0 * dt * kTwoPi * form;
  exchange_ += 2.0 * dt * kTwoPi * exch;

  const double vort = vorticity_energy(s);
  vort_l2t_ += 0.5 * dt * (vort + last_vort_);
  last_vort_ = vort;
  identity_residual_ = std::abs(vort + diss_ - w0_);
  identity_rate_max_ = std::max(identity_rate_max_, identity_residual_ / (w0_ * std::max(s.t, 1.0)));

  double bterm = 0.0;
  for (int k = 1; k <= K_; ++k) {
    const double a = std::pow(weighted_l2_norm(g, sd.phi[k + K_], -2.0), 2);
    const double b = std::pow(weighted_l2_norm(g, Field(g.d1() * sd.phi[k + K_]), -1.0), 2);
    phi_r2_int_[k] += 0.5 * dt * (a + last_phi_r2_[k]);
    dphi_r_int_[k] += 0.5 * dt * (b + last_dphi_r_[k]);
    last_phi_r2_[k] = a;
    last_dphi_r_[k] = b;
    bterm += 2.0 * k * std::sqrt(phi_r2_int_[k] * dphi_r_int_[k]);
  }
  const double lhs = velocity_energy(s, sd) + 2.0 * p_.nu * vort_l2t_;
  const double rhs = u0_ + 4.0 * kTwoPi * std::abs(p_.B) * bterm;
  velocity_excess_max_ = std::max(velocity_excess_max_, (lhs - rhs) / u0_);
}

}  // namespace tcstab
