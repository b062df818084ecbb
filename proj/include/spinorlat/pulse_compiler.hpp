#pragma once

#include <optional>
#include <vector>

#include "spinorlat/protocol.hpp"
#include "spinorlat/pulse.hpp"

namespace spinorlat::control {

// exp(i theta/2 (cos(phi) sigma_x + sin(phi) sigma_y)) in the (up, down) basis.
Eigen::Matrix2cd equatorial_rotation(double phi, double theta);

struct EquatorialStep {
  double phi;
  double theta;  // in [0, pi]
};

// W = exp(i psi) E(phi_k, theta_k) ... E(phi_1, theta_1), at most three
// factors, applied first to last. Identity gives none.
std::vector<EquatorialStep> decompose_su2(const Eigen::Matrix2cd& w);

struct PulseOptions {
  double omega_max = 1.0;
  // Uniform force; durations are rounded up to whole multiples of 2 pi / |F|
  // and the bond's L-mode resonance shift is applied.
  std::optional<double> gradient;
  // Physical mode emits "both" couplings. Bond overlaps are given for an
  // R-mode lattice configuration (driven = right); in L mode the
  // polarization is mirrored and the roles swap.
  bool physical = false;
  double fc_driven = 1.0;
  double fc_suppressed = 0.0;
  // Forces every pulse to this duration instead of running at omega_max.
  std::optional<double> fixed_duration;
};

std::vector<tb::ControlSegment> su2_to_pulses(const SU2Rotation& rot, const PulseOptions& options);

// Unitary of one segment on a bond of the given mode in the ideal model
// (the suppressed bond ignored), up to the gradient frame's global sign.
Eigen::Matrix2cd segment_bond_unitary(const tb::ControlSegment& seg, PairMode mode);

}  // namespace spinorlat::control
