#include "tcstab/nonlinear.hpp"

#include <cmath>
#include <numbers>

#include "tcstab/biot_savart.hpp"
#include "tcstab/errors.hpp"
#include "tcstab/random.hpp"

namespace tcstab {

namespace {
using cd = std::complex<double>;
constexpr cd I(0.0, 1.0);
}  // namespace

void SpectralState::enforce_reality() {
  at(0) = at(0).real().cast<cd>();
  for (int k = 1; k <= K; ++k) at(-k) = at(k).conjugate();
}

double SpectralState::reality_defect() const {
  double d = (at(0) - at(0).conjugate()).cwiseAbs().maxCoeff();
  for (int k = 1; k <= K; ++k) d = std::max(d, (at(-k) - at(k).conjugate()).cwiseAbs().maxCoeff());
  return d;
}

StreamData reconstruct(const RadialGrid& g, const SpectralState& s) {
  StreamData sd;
  sd.phi.assign(2 * s.K + 1, Field::Zero(g.size()));
  for (int k = -s.K; k <= s.K; ++k)
    if (k != 0) sd.phi[k + s.K] = solve_stream(g, k, s.at(k));
  sd.u0 = zero_mode_velocity(g, s.at(0));
  return sd;
}

std::vector<Field> nonlinear_rhs(const RadialGrid& g, const SpectralState& s, bool nonnegative_only) {
  return nonlinear_rhs(g, s, reconstruct(g, s), nonnegative_only, nullptr);
}

std::vector<Field> nonlinear_rhs(const RadialGrid& g, const SpectralState& s, const StreamData& sd,
                                 bool nonnegative_only, std::vector<ForcingParts>* parts) {
  const int K = s.K;
  const int n = g.size();
  if (static_cast<int>(s.w.size()) != 2 * K + 1) throw ShapeError("state does not hold 2K + 1 modes");
  for (const auto& f : s.w)
    if (f.size() != n) throw ShapeError("mode size does not match grid");

  const Eigen::ArrayXd r = g.r().array();
  const Eigen::ArrayXcd inv_r = r.inverse().cast<cd>();
  const Eigen::ArrayXcd inv_sqrt_r = r.rsqrt().cast<cd>();

  std::vector<Field> a(2 * K + 1), b(2 * K + 1);
  for (int l = -K; l <= K; ++l) {
    if (l == 0) continue;
    a[l + K] = (sd.phi[l + K].array() * inv_r).matrix();
    b[l + K] = g.d1() * (sd.phi[l + K].array() * inv_sqrt_r).matrix();
  }

  const int kmin = nonnegative_only ? 0 : -K;
  std::vector<Field> out(2 * K + 1, Field::Zero(n));
  if (parts) parts->assign(2 * K + 1, ForcingParts{});
  const Field& w0 = s.at(0);
  for (int k = kmin; k <= K; ++k) {
    Field flux = Field::Zero(n);   // sum l a_l w_{k-l}
    Field shear = Field::Zero(n);  // sum b_l w_{k-l}
    for (int l = std::max(-K, k - K); l <= std::min(K, k + K); ++l) {
      if (l == 0 || l == k) continue;
      const Field& wkl = s.at(k - l);
      flux.array() += static_cast<double>(l) * a[l + K].array() * wkl.array();
      shear.array() += b[l + K].array() * wkl.array();
    }
    ForcingParts fp;
    fp.f2_shear = (I * inv_sqrt_r * (g.d1() * flux).array()).matrix();
    if (k == 0) {
      fp.f1_shear = fp.f1_zero = fp.f1_mean = fp.f2_mean = Field::Zero(n);
    } else {
      const cd ik = I * static_cast<double>(k);
      fp.f1_shear = (-ik * inv_r * shear.array()).matrix();
      fp.f1_zero = (-ik * inv_r * inv_sqrt_r * sd.u0.array() * s.at(k).array()).matrix();
      fp.f1_mean = (-ik * inv_r * b[k + K].array() * w0.array()).matrix();
      const Field mean_flux = (static_cast<double>(k) * a[k + K].array() * w0.array()).matrix();
      fp.f2_mean = (I * inv_sqrt_r * (g.d1() * mean_flux).array()).matrix();
    }
    out[k + K] = fp.total();
    if (parts) (*parts)[k + K] = std::move(fp);
  }
  return out;
}

ImexStepper::ImexStepper(const RadialGrid& g, const FlowParams& p, int K, double dt, bool nonlinear, bool dealias)
    : g_(&g), p_(p), K_(K), dt_(dt), nonlinear_(nonlinear), dealias_(dealias) {
  for (int k = 0; k <= K; ++k) {
    ops_.push_back(assemble_operator(g, p, k));
    cn_.emplace_back(ops_.back(), dt);
  }
}

std::vector<Field> ImexStepper::forcing(const SpectralState& s) const {
  if (!dealias_) return nonlinear_rhs(*g_, s, true);
  const int keep = (2 * K_) / 3;
  SpectralState low = s;
  for (int k = keep + 1; k <= K_; ++k) {
    low.at(k).setZero();
    low.at(-k).setZero();
  }
  std::vector<Field> rhs = nonlinear_rhs(*g_, low, true);
  for (int k = keep + 1; k <= K_; ++k) rhs[k + K_].setZero();
  return rhs;
}

void ImexStepper::step(SpectralState& s) {
  if (s.K != K_) throw ShapeError("state cutoff does not match stepper");
  const int n = g_->size();
  mid_.assign(K_ + 1, Field::Zero(n));
  forcing_mid_.assign(K_ + 1, Field::Zero(n));
  std::vector<Field> next(K_ + 1);
  if (!nonlinear_) {
    for (int k = 0; k <= K_; ++k) next[k] = cn_[k].step(s.at(k));
  } else {
    const std::vector<Field> rhs = forcing(s);
    if (!started_) {
      SpectralState pred = s;
      for (int k = 0; k <= K_; ++k) pred.at(k) = cn_[k].step(s.at(k), rhs[k + K_]);
      pred.enforce_reality();
      const std::vector<Field> rhs_pred = forcing(pred);
      for (int k = 0; k <= K_; ++k) forcing_mid_[k] = 0.5 * (rhs[k + K_] + rhs_pred[k + K_]);
      started_ = true;
    } else {
      for (int k = 0; k <= K_; ++k) forcing_mid_[k] = 1.5 * rhs[k + K_] - 0.5 * prev_rhs_[k];
    }
    for (int k = 0; k <= K_; ++k) next[k] = cn_[k].step(s.at(k), forcing_mid_[k]);
    prev_rhs_.resize(K_ + 1);
    for (int k = 0; k <= K_; ++k) prev_rhs_[k] = rhs[k + K_];
  }
  for (int k = 0; k <= K_; ++k) {
    mid_[k] = 0.5 * (s.at(k) + next[k]);
    s.at(k) = next[k];
  }
  s.enforce_reality();
  s.t += dt_;
}

SpectralState seeded_initial_state(const RadialGrid& g, int K, std::uint64_t seed) {
  SpectralState s(K, g.size());
  CounterRng rng(seed, 0x5eed);
  const Eigen::ArrayXd r = g.r().array();
  const Eigen::ArrayXd prof = (r - 1.0) * (-(r - 2.0).square()).exp();
  s.at(0) = (rng.uniform(0.5, 1.0) * prof).cast<cd>().matrix();
  for (int k = 1; k <= K / 2; ++k) {
    const double a = rng.uniform(0.5, 1.0);
    const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
    s.at(k) = (std::polar(a, th) * prof.cast<cd>()).matrix();
  }
  for (auto& f : s.w) f = with_dirichlet(g, f);
  s.enforce_reality();
  return s;
}

}  // namespace tcstab
