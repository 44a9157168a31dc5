#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcstab/grid.hpp"
#include "tcstab/linear.hpp"
#include "tcstab/params.hpp"

namespace tcstab {

// Fourier modes k = -K..K of the perturbation vorticity in the w_k gauge
// (w_k = r^{1/2} e^{i k A t} W_k). Real vorticity means w_{-k} = conj(w_k).
struct SpectralState {
  int K = 0;
  double t = 0.0;
  std::vector<Field> w;  // w[k + K]

  SpectralState() = default;
  SpectralState(int cutoff, int n) : K(cutoff), w(2 * cutoff + 1, Field::Zero(n)) {}

  Field& at(int k) { return w[k + K]; }
  const Field& at(int k) const { return w[k + K]; }
  void enforce_reality();
  double reality_defect() const;  // max_k ||w_{-k} - conj(w_k)||_max
};

// Derived quantities shared by the nonlinear terms and the diagnostics.
struct StreamData {
  std::vector<Field> phi;  // phi[k + K], zero for k = 0
  Field u0;                // zero-mode azimuthal velocity
};

StreamData reconstruct(const RadialGrid& g, const SpectralState& s);

// Labelled pieces of the k-th nonlinear forcing:
//   f1_shear  = -i k r^{-1} sum_{l != 0, k} (r^{-1/2} phi_l)' w_{k-l}
//   f1_zero   = -i k r^{-3/2} u0 w_k
//   f1_mean   = -i k r^{-1} (r^{-1/2} phi_k)' w_0
//   f2_shear  = i r^{-1/2} sum_{l != 0, k} l (r^{-1} phi_l w_{k-l})'
//   f2_mean   = i r^{-1/2} (k r^{-1} phi_k w_0)'
struct ForcingParts {
  Field f1_shear, f1_zero, f1_mean, f2_shear, f2_mean;
  Field total() const { return f1_shear + f1_zero + f1_mean + f2_shear + f2_mean; }
};

// Nonlinear right-hand side for every mode (or only k >= 0).
std::vector<Field> nonlinear_rhs(const RadialGrid& g, const SpectralState& s, bool nonnegative_only = false);
std::vector<Field> nonlinear_rhs(const RadialGrid& g, const SpectralState& s, const StreamData& sd,
                                 bool nonnegative_only, std::vector<ForcingParts>* parts = nullptr);

// Crank-Nicolson on T_k, second-order extrapolation of the nonlinear term
// (a Heun-type start on the first step). Only k >= 0 is advanced; negative
// modes follow from the reality constraint. With dealias set, the forcing is
// built from modes |k| <= 2K/3 and projected back onto them.
class ImexStepper {
 public:
  ImexStepper(const RadialGrid& g, const FlowParams& p, int K, double dt, bool nonlinear = true,
              bool dealias = false);

  void step(SpectralState& s);
  double dt() const { return dt_; }
  const LinearOperator& op(int k) const { return ops_[k]; }
  // Half-step states of the last step, used for discrete balance laws.
  const std::vector<Field>& midpoint() const { return mid_; }
  const std::vector<Field>& last_forcing() const { return forcing_mid_; }

 private:
  std::vector<Field> forcing(const SpectralState& s) const;

  const RadialGrid* g_;
  FlowParams p_;
  int K_;
  double dt_;
  bool nonlinear_;
  bool dealias_;
  std::vector<LinearOperator> ops_;
  std::vector<CrankNicolson> cn_;
  std::vector<Field> prev_rhs_;
  bool started_ = false;
  std::vector<Field> mid_, forcing_mid_;
};

// Initial data a_k (r - 1) exp(-(r - 2)^2) e^{i theta_k} for 1 <= |k| <= K/2
// with seeded amplitudes and phases, plus a real zero mode a_0 (r - 1) exp(-(r - 2)^2).
SpectralState seeded_initial_state(const RadialGrid& g, int K, std::uint64_t seed);

}  // namespace tcstab
