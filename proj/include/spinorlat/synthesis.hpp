#pragma once

#include <span>
#include <vector>

#include "spinorlat/gradient.hpp"
#include "spinorlat/pulse_compiler.hpp"

namespace spinorlat::control {

// The column U_q |q,down> = alpha(q)|q,up> + beta(q)|q,down>, held as the
// real-space amplitudes c_{l,s} of U|0,down>:
// alpha(q) = sum_l c_{l,up} exp(-i 2 pi l q), beta likewise with c_{l,down}.
struct SynthesisTarget {
  tb::SpinorState amplitudes;

  static SynthesisTarget from_wannier(tb::SpinorState amps);
  // Fourier coefficient lists starting at l_min.
  static SynthesisTarget from_fourier(int l_min, std::span<const cplx> alpha, std::span<const cplx> beta);
  // Samples on the uniform grid -1/2 + j/n. The recovered amplitudes must be
  // confined to a window of at most n/2 sites, otherwise the support is not
  // resolvable and std::invalid_argument is thrown.
  static SynthesisTarget from_samples(std::span<const cplx> alpha, std::span<const cplx> beta, double tol = 1e-10);

  cplx alpha(double q) const;
  cplx beta(double q) const;
  // [[conj(beta), alpha], [-conj(alpha), beta]]
  Eigen::Matrix2cd block(double q) const;
  void validate() const;
};

struct SynthesisOptions {
  PulseOptions pulses;
  double reach_tol = 1e-9;
  // Fold a z rotation into the first rotation so the realised column carries
  // no global phase other than a sign.
  bool fix_phase = true;
};

struct SynthesisResult {
  tb::PulseSequence sequence;
  std::vector<SU2Rotation> rotations;  // translation followed by preparation
  int rotation_count = 0;              // preparation rotations only
  int translation = 0;
};

SynthesisResult synthesize(const SynthesisTarget& target, const SynthesisOptions& options = {});
tb::PulseSequence synthesize_unitary(const SynthesisTarget& target, const SynthesisOptions& options = {});

struct VerificationReport {
  std::vector<double> q;
  std::vector<double> fidelity;
  double worst_fidelity = 1;
  double worst_q = 0;
  int rotation_count = 0;
  double shift = 0;
  bool real_space = false;  // real-space route used (gradient with two-bond drive)
};

// Per-q 1/2 |tr(V_q^dagger U_q)|.
VerificationReport verify_map(const tb::PulseSequence& seq, const SynthesisTarget& target, std::span<const double> q);

// The realised blocks at each q, whichever route applies.
std::vector<Eigen::Matrix2cd> realised_blocks(const tb::PulseSequence& seq, std::span<const double> q,
                                              double* shift_out = nullptr, bool* real_space = nullptr);

}  // namespace spinorlat::control
